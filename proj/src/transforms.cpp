#include "ncbsar/transforms.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

namespace ncb {

namespace {

constexpr double kPi = std::numbers::pi;

// One kissfft plan cache per thread; plans are reused across calls.
Eigen::FFT<double>& plan() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

// Unnormalized forward DFT of every row, in place.
void fft_rows(CxMat& a) {
  const Index n = a.cols();
  if (n == 1) return;
  std::vector<Complex> out(static_cast<size_t>(n));
  for (Index i = 0; i < a.rows(); ++i) {
    plan().fwd(out.data(), a.data() + i * n, n);
    std::copy(out.begin(), out.end(), a.data() + i * n);
  }
}

// Inverse DFT of every row (includes the 1/n factor), in place.
void ifft_rows(CxMat& a) {
  const Index n = a.cols();
  if (n == 1) return;
  std::vector<Complex> out(static_cast<size_t>(n));
  for (Index i = 0; i < a.rows(); ++i) {
    plan().inv(out.data(), a.data() + i * n, n);
    std::copy(out.begin(), out.end(), a.data() + i * n);
  }
}

bool is_pow2(Index n) { return n >= 1 && std::has_single_bit(static_cast<std::uint64_t>(n)); }

int log2_index(Index n) { return std::countr_zero(static_cast<std::uint64_t>(n)); }

// ---------------------------------------------------------------------------
// Orthonormal DCT-II / DCT-III along rows via one complex FFT per row
// (even/odd permutation plus quarter-sample twiddles).

void dct2_rows(CxMat& a) {
  const Index n = a.cols();
  if (n == 1) return;
  std::vector<Complex> v(static_cast<size_t>(n)), V(static_cast<size_t>(n));
  std::vector<Complex> w(static_cast<size_t>(n));
  for (Index k = 0; k < n; ++k) w[k] = std::polar(1.0, -kPi * double(k) / (2.0 * double(n)));
  const double s0 = std::sqrt(1.0 / double(n));
  const double s = std::sqrt(2.0 / double(n));
  for (Index i = 0; i < a.rows(); ++i) {
    Complex* row = a.data() + i * n;
    for (Index m = 0; m < (n + 1) / 2; ++m) v[m] = row[2 * m];
    for (Index m = 0; m < n / 2; ++m) v[n - 1 - m] = row[2 * m + 1];
    plan().fwd(V.data(), v.data(), n);
    row[0] = s0 * V[0];
    for (Index k = 1; k < n; ++k) {
      row[k] = 0.5 * s * (w[k] * V[k] + std::conj(w[k]) * V[n - k]);
    }
  }
}

void dct3_rows(CxMat& a) {
  const Index n = a.cols();
  if (n == 1) return;
  std::vector<Complex> V(static_cast<size_t>(n)), v(static_cast<size_t>(n));
  std::vector<Complex> c(static_cast<size_t>(n));
  std::vector<Complex> w(static_cast<size_t>(n));
  for (Index k = 0; k < n; ++k) w[k] = std::polar(1.0, -kPi * double(k) / (2.0 * double(n)));
  const double s0 = std::sqrt(double(n));
  const double s = std::sqrt(double(n) / 2.0);
  const Complex j{0.0, 1.0};
  for (Index i = 0; i < a.rows(); ++i) {
    Complex* row = a.data() + i * n;
    c[0] = s0 * row[0];
    for (Index k = 1; k < n; ++k) c[k] = s * row[k];
    V[0] = c[0];
    for (Index k = 1; k < n; ++k) V[k] = std::conj(w[k]) * (c[k] - j * c[n - k]);
    plan().inv(v.data(), V.data(), n);
    for (Index m = 0; m < (n + 1) / 2; ++m) row[2 * m] = v[m];
    for (Index m = 0; m < n / 2; ++m) row[2 * m + 1] = v[n - 1 - m];
  }
}

// ---------------------------------------------------------------------------
// Periodized orthogonal Daubechies-4 filter bank.

// Orthonormal scaling taps (1 +- sqrt3, 3 +- sqrt3)/(4 sqrt2); the highpass
// taps are the alternating flip.
struct Db4Taps {
  double h[4];
  double g[4];
  Db4Taps() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    h[0] = (1.0 + s3) / (4.0 * s2);
    h[1] = (3.0 + s3) / (4.0 * s2);
    h[2] = (3.0 - s3) / (4.0 * s2);
    h[3] = (1.0 - s3) / (4.0 * s2);
    for (int t = 0; t < 4; ++t) g[t] = (t % 2 == 0 ? 1.0 : -1.0) * h[3 - t];
  }
};

const Db4Taps& db4_taps() {
  static const Db4Taps taps;
  return taps;
}

// One analysis step on x[0..n), periodic wrap; writes [approx | detail].
void db4_step_analyze(Complex* x, Index n, std::vector<Complex>& buf) {
  const auto& taps = db4_taps();
  const Index h = n / 2;
  buf.assign(x, x + n);
  for (Index i = 0; i < h; ++i) {
    Complex a{}, d{};
    for (Index t = 0; t < 4; ++t) {
      const Complex s = buf[(2 * i + t) % n];
      a += taps.h[t] * s;
      d += taps.g[t] * s;
    }
    x[i] = a;
    x[h + i] = d;
  }
}

// Adjoint of db4_step_analyze; exact inverse by filter orthonormality.
void db4_step_synthesize(Complex* x, Index n, std::vector<Complex>& buf) {
  const auto& taps = db4_taps();
  const Index h = n / 2;
  buf.assign(static_cast<size_t>(n), Complex{});
  for (Index i = 0; i < h; ++i) {
    const Complex a = x[i];
    const Complex d = x[h + i];
    for (Index t = 0; t < 4; ++t) {
      buf[(2 * i + t) % n] += taps.h[t] * a + taps.g[t] * d;
    }
  }
  std::copy(buf.begin(), buf.end(), x);
}

void db4_rows(CxMat& a, Index active_rows, Index active_cols, bool inverse,
              std::vector<Complex>& buf) {
  for (Index i = 0; i < active_rows; ++i) {
    Complex* row = a.data() + i * a.cols();
    if (inverse) {
      db4_step_synthesize(row, active_cols, buf);
    } else {
      db4_step_analyze(row, active_cols, buf);
    }
  }
}

void db4_cols(CxMat& a, Index active_rows, Index active_cols, bool inverse,
              std::vector<Complex>& buf, std::vector<Complex>& colbuf) {
  colbuf.resize(static_cast<size_t>(active_rows));
  for (Index jcol = 0; jcol < active_cols; ++jcol) {
    for (Index i = 0; i < active_rows; ++i) colbuf[i] = a(i, jcol);
    if (inverse) {
      db4_step_synthesize(colbuf.data(), active_rows, buf);
    } else {
      db4_step_analyze(colbuf.data(), active_rows, buf);
    }
    for (Index i = 0; i < active_rows; ++i) a(i, jcol) = colbuf[i];
  }
}

void check_db4_shape(Index rows, Index cols, int levels) {
  if (!is_pow2(rows) || !is_pow2(cols)) {
    throw SizeError("db4 requires power-of-two raster dimensions, got " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
  const int max_levels = std::min(log2_index(rows), log2_index(cols)) - 2;
  if (levels > max_levels) {
    throw SizeError("db4: " + std::to_string(levels) + " levels exceed the limit " +
                    std::to_string(max_levels) + " for " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
}

}  // namespace

CxMat dft2(const CxMat& a) {
  CxMat out = a;
  fft_rows(out);
  CxMat t = out.transpose();
  fft_rows(t);
  out = t.transpose();
  out *= 1.0 / std::sqrt(double(a.rows()) * double(a.cols()));
  return out;
}

CxMat idft2(const CxMat& a) {
  CxMat out = a;
  ifft_rows(out);
  CxMat t = out.transpose();
  ifft_rows(t);
  out = t.transpose();
  out *= std::sqrt(double(a.rows()) * double(a.cols()));
  return out;
}

int SparseTransform::levels_for(Index rows, Index cols) const {
  if (kind_ != Kind::Db4) return 0;
  check_db4_shape(rows, cols, 1);
  if (levels_ > 0) {
    check_db4_shape(rows, cols, levels_);
    return levels_;
  }
  return std::max(1, std::min(log2_index(rows), log2_index(cols)) - 3);
}

CxMat SparseTransform::analyze(const CxMat& u) const {
  switch (kind_) {
    case Kind::Identity:
      return u;
    case Kind::Dct2d: {
      CxMat out = u;
      dct2_rows(out);
      CxMat t = out.transpose();
      dct2_rows(t);
      return t.transpose();
    }
    case Kind::Db4: {
      const int levels = levels_for(u.rows(), u.cols());
      CxMat out = u;
      std::vector<Complex> buf, colbuf;
      Index r = u.rows(), c = u.cols();
      for (int lev = 0; lev < levels; ++lev) {
        db4_rows(out, r, c, false, buf);
        db4_cols(out, r, c, false, buf, colbuf);
        r /= 2;
        c /= 2;
      }
      return out;
    }
  }
  throw ConfigError("unknown transform kind");
}

CxMat SparseTransform::synthesize(const CxMat& x) const {
  switch (kind_) {
    case Kind::Identity:
      return x;
    case Kind::Dct2d: {
      CxMat out = x;
      dct3_rows(out);
      CxMat t = out.transpose();
      dct3_rows(t);
      return t.transpose();
    }
    case Kind::Db4: {
      const int levels = levels_for(x.rows(), x.cols());
      CxMat out = x;
      std::vector<Complex> buf, colbuf;
      Index r = x.rows() >> (levels - 1), c = x.cols() >> (levels - 1);
      for (int lev = levels - 1; lev >= 0; --lev) {
        db4_cols(out, r, c, true, buf, colbuf);
        db4_rows(out, r, c, true, buf);
        r *= 2;
        c *= 2;
      }
      return out;
    }
  }
  throw ConfigError("unknown transform kind");
}

double mixed_norm(const SparseTransform& t, Index rows, Index cols, int k) {
  const Index total = rows * cols;
  if (k < 1 || k > total) {
    throw SizeError("mixed_norm: k must be in [1, " + std::to_string(total) + "]");
  }
  if (rows > 64 || cols > 64) {
    throw SizeError("mixed_norm: rasters above 64x64 are not materialized");
  }
  if (t.kind() == SparseTransform::Kind::Identity) return 1.0;

  // Row i of the synthesis matrix equals analyze(delta_i) since the basis is
  // real orthonormal.
  std::vector<double> sq(static_cast<size_t>(total));
  double best = 0.0;
  CxMat delta = CxMat::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      delta(i, j) = 1.0;
      const CxMat row = t.analyze(delta);
      delta(i, j) = 0.0;
      const Complex* p = row.data();
      for (Index m = 0; m < total; ++m) sq[m] = std::norm(p[m]);
      std::nth_element(sq.begin(), sq.begin() + (k - 1), sq.end(), std::greater<>());
      double s = 0.0;
      for (int m = 0; m < k; ++m) s += sq[m];
      best = std::max(best, s);
    }
  }
  return std::sqrt(best);
}

}  // namespace ncb
