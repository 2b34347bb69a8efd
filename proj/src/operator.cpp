#include "ncbsar/operator.hpp"

#include <cmath>
#include <random>

namespace ncb {

BandSelector::BandSelector(Index full_rows, Index full_cols, Index kept_rows, Index kept_cols)
    : full_rows_(full_rows), full_cols_(full_cols), kept_rows_(kept_rows), kept_cols_(kept_cols) {
  if (kept_rows < 1 || kept_rows > full_rows || kept_cols < 1 || kept_cols > full_cols) {
    throw DimensionError("BandSelector: kept band must satisfy 1 <= kept <= full");
  }
}

Index BandSelector::row_index(Index p) const {
  const Index pos = (kept_rows_ + 1) / 2;  // ceil(I/2) nonnegative frequencies
  return p < pos ? p : full_rows_ - kept_rows_ + p;
}

Index BandSelector::col_index(Index q) const {
  const Index pos = (kept_cols_ + 1) / 2;
  return q < pos ? q : full_cols_ - kept_cols_ + q;
}

CxMat BandSelector::select(const CxMat& full) const {
  if (full.rows() != full_rows_ || full.cols() != full_cols_) {
    throw DimensionError("BandSelector::select: expected " + std::to_string(full_rows_) + "x" +
                         std::to_string(full_cols_));
  }
  CxMat out(kept_rows_, kept_cols_);
  for (Index p = 0; p < kept_rows_; ++p) {
    const Index r = row_index(p);
    for (Index q = 0; q < kept_cols_; ++q) {
      out(p, q) = full(r, col_index(q));
    }
  }
  return out;
}

CxMat BandSelector::embed(const CxMat& small) const {
  if (small.rows() != kept_rows_ || small.cols() != kept_cols_) {
    throw DimensionError("BandSelector::embed: expected " + std::to_string(kept_rows_) + "x" +
                         std::to_string(kept_cols_));
  }
  CxMat out = CxMat::Zero(full_rows_, full_cols_);
  for (Index p = 0; p < kept_rows_; ++p) {
    const Index r = row_index(p);
    for (Index q = 0; q < kept_cols_; ++q) {
      out(r, col_index(q)) = small(p, q);
    }
  }
  return out;
}

MeasurementOperator::MeasurementOperator(PhaseField theta, ResolutionRatio ratio)
    : theta_(std::move(theta)),
      ratio_(ratio),
      band_(theta_.rows(), theta_.cols(), ratio.kept_rows(theta_.rows()),
            ratio.kept_cols(theta_.cols())),
      gain_(1.0 / std::sqrt(ratio.alpha_beta())) {}

CxMat lowpass_degrade(const CxMat& z, const ResolutionRatio& r) {
  const Index kept_r = r.kept_rows(z.rows());
  const Index kept_c = r.kept_cols(z.cols());
  const BandSelector band(z.rows(), z.cols(), kept_r, kept_c);
  const double gain = 1.0 / std::sqrt(r.alpha_beta());
  return idft2(CxMat(gain * band.select(dft2(z))));
}

CxMat forward(const MeasurementOperator& op, const CxMat& u) {
  if (u.rows() != op.rows() || u.cols() != op.cols()) {
    throw DimensionError("forward: interferogram must be " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()));
  }
  return op.gain() * op.band().select(dft2(hadamard(op.theta().raster(), u)));
}

CxMat adjoint(const MeasurementOperator& op, const CxMat& y) {
  if (y.rows() != op.band().kept_rows() || y.cols() != op.band().kept_cols()) {
    throw DimensionError("adjoint: measurement must be " +
                         std::to_string(op.band().kept_rows()) + "x" +
                         std::to_string(op.band().kept_cols()));
  }
  return op.gain() * hadamard(op.theta().raster().conjugate(), idft2(op.band().embed(y)));
}

CxMat sensing_forward(const MeasurementOperator& op, const SparseTransform& t, const CxMat& x) {
  return forward(op, t.synthesize(x));
}

CxMat forward_from_spectrum(const MeasurementOperator& op, const CxMat& u_hat) {
  if (u_hat.rows() != op.rows() || u_hat.cols() != op.cols()) {
    throw DimensionError("forward_from_spectrum: spectrum must be " +
                         std::to_string(op.rows()) + "x" + std::to_string(op.cols()));
  }
  return op.gain() * op.band().select(dft2(hadamard(op.theta().raster(), idft2(u_hat))));
}

double operator_norm(const MeasurementOperator& op) {
  // adjoint o forward is a scaled orthogonal projection, so the iteration
  // settles immediately; the loop stays general anyway.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  CxMat x(op.rows(), op.cols());
  for (Index i = 0; i < x.size(); ++i) {
    const double re = double(rng() >> 11) * 0x1p-53 - 0.5;
    const double im = double(rng() >> 11) * 0x1p-53 - 0.5;
    x.data()[i] = Complex(re, im);
  }
  x /= frobenius_norm(x);
  double eig = 0.0;
  for (int it = 0; it < 200; ++it) {
    const CxMat y = adjoint(op, forward(op, x));
    const double norm = frobenius_norm(y);
    if (norm == 0.0) return 0.0;
    const double prev = eig;
    eig = norm;  // Rayleigh quotient for unit x
    x = y / norm;
    if (it > 0 && std::abs(eig - prev) <= 1e-10 * eig) break;
  }
  return std::sqrt(eig);
}

}  // namespace ncb
