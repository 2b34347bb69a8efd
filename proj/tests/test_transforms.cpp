#include "ncbsar/transforms.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace ncb;
constexpr double kPi = std::numbers::pi;

TEST_CASE("dft2 of a constant image is a DC spike") {
  const Index n = 6, l = 10;
  const CxMat spec = dft2(CxMat(CxMat::Ones(n, l)));
  CHECK(std::abs(spec(0, 0) - std::sqrt(double(n * l))) < 1e-12);
  double off = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < l; ++j)
      if (i || j) off = std::max(off, std::abs(spec(i, j)));
  CHECK(off < 1e-12);
}

TEST_CASE("dft2 is unitary (Parseval)") {
  const CxMat a = oracle::random_raster(64, 64, 17);
  CHECK(frobenius_norm(dft2(a)) == doctest::Approx(frobenius_norm(a)).epsilon(1e-12));
}

TEST_CASE("dft2 matches the dense DFT-matrix oracle on a delta") {
  CxMat a = CxMat::Zero(4, 4);
  a(1, 2) = Complex(1.0, -2.0);
  CHECK(oracle::max_abs_diff(dft2(a), oracle::dense_dft2(a)) < 1e-13);
}

TEST_CASE("idft2 inverts dft2") {
  const CxMat a = oracle::random_raster(128, 64, 23);
  CHECK(oracle::rel_error(idft2(dft2(a)), a) < 1e-12);
}

TEST_CASE("idft2 of a DC spike is constant") {
  const Index rows = 8, cols = 4;
  CxMat spec = CxMat::Zero(rows, cols);
  const Complex amp(2.5, -1.0);
  spec(0, 0) = amp;
  const CxMat img = idft2(spec);
  const Complex want = amp / std::sqrt(double(rows * cols));
  CHECK(oracle::max_abs_diff(img, CxMat(CxMat::Constant(rows, cols, want))) < 1e-13);
}

TEST_CASE("idft2 matches the dense conjugate-transpose oracle") {
  const CxMat a = oracle::random_raster(8, 8, 29);
  CHECK(oracle::rel_error(idft2(a), oracle::dense_idft2(a)) < 1e-12);
}

TEST_CASE("DCT of a constant raster concentrates at (0,0)") {
  const Index n = 16;
  const double c = 3.25;
  const CxMat x = SparseTransform::dct2d().analyze(CxMat(CxMat::Constant(n, n, Complex(c, 0))));
  CHECK(std::abs(x(0, 0) - Complex(c * double(n), 0)) < 1e-12);
  double off = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i || j) off = std::max(off, std::abs(x(i, j)));
  CHECK(off < 1e-12);
}

TEST_CASE("DCT matches the naive O(n^2) oracle") {
  const CxMat u = oracle::random_raster(12, 20, 31);
  CHECK(oracle::rel_error(SparseTransform::dct2d().analyze(u), oracle::naive_dct2d(u)) < 1e-12);

  // odd lengths take the other even/odd permutation split
  const CxMat v = oracle::random_raster(7, 9, 32);
  CHECK(oracle::rel_error(SparseTransform::dct2d().analyze(v), oracle::naive_dct2d(v)) < 1e-12);
  CHECK(oracle::rel_error(SparseTransform::dct2d().synthesize(
                              SparseTransform::dct2d().analyze(v)),
                          v) < 1e-12);
}

TEST_CASE("single unit DCT coefficient synthesizes a constant raster") {
  const Index n = 8;
  CxMat x = CxMat::Zero(n, n);
  x(0, 0) = 1.0;
  const CxMat u = SparseTransform::dct2d().synthesize(x);
  CHECK(oracle::max_abs_diff(u, CxMat(CxMat::Constant(n, n, Complex(1.0 / double(n), 0)))) <
        1e-13);
}

TEST_CASE("DB4 one level matches the convolve-downsample oracle") {
  const Index n = 16;
  oracle::Rng rng(37);
  std::vector<Complex> row(n);
  for (auto& v : row) v = rng.complex_unit_disc();

  // 1 x 16 raster: column transform is trivial, so one analyze level is the
  // plain 1-D filter bank. A 1-row raster is not a power-of-two pair for the
  // 2-D wavelet, so run the 16x16 separable check instead: first transform
  // rows of a raster whose rows are identical and compare against the oracle.
  CxMat u(16, 16);
  for (Index i = 0; i < 16; ++i)
    for (Index j = 0; j < 16; ++j) u(i, j) = row[size_t(j)];
  const CxMat coef = SparseTransform::db4(1).analyze(u);

  std::vector<Complex> want_row(n);
  oracle::naive_db4_step(row.data(), want_row.data(), n);
  // After the row pass every row equals the filter-bank output; the column
  // pass then distributes each column's constant into approx/detail bands:
  // approx rows carry sum(h)*value, detail rows sum(g)*value = 0.
  const double sum_h = std::sqrt(2.0);  // sum of the DB-4 scaling taps
  for (Index j = 0; j < 16; ++j) {
    for (Index i = 0; i < 8; ++i) {
      CHECK(std::abs(coef(i, j) - sum_h * want_row[size_t(j)]) < 1e-12);
      CHECK(std::abs(coef(8 + i, j)) < 1e-12);
    }
  }
}

TEST_CASE("DB4 single detail coefficient reproduces the periodic atom") {
  const Index n = 16;
  // Build the atom by the adjoint of the oracle filter bank: place a unit
  // detail coefficient and synthesize by hand, then compare.
  CxMat x = CxMat::Zero(n, n);
  x(3, 12) = 1.0;  // a detail-band location for 1 level
  const CxMat atom = SparseTransform::db4(1).synthesize(x);

  // Hand synthesis: column 12 is a detail index (>= n/2) in the column pass,
  // row 3 an approx index in the row pass. Verify via the analysis oracle:
  // analyzing the atom must return the delta.
  CxMat roundtrip(n, n);
  {
    // rows first
    CxMat tmp(n, n);
    std::vector<Complex> in(n), out(n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) in[size_t(j)] = atom(i, j);
      oracle::naive_db4_step(in.data(), out.data(), n);
      for (Index j = 0; j < n; ++j) tmp(i, j) = out[size_t(j)];
    }
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) in[size_t(i)] = tmp(i, j);
      oracle::naive_db4_step(in.data(), out.data(), n);
      for (Index i = 0; i < n; ++i) roundtrip(i, j) = out[size_t(i)];
    }
  }
  CHECK(oracle::max_abs_diff(roundtrip, x) < 1e-12);
  CHECK(frobenius_norm(atom) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("DB4 rejects non-power-of-two rasters") {
  CHECK_THROWS_AS(SparseTransform::db4().analyze(CxMat(CxMat::Ones(12, 16))), SizeError);
  CHECK_THROWS_AS(SparseTransform::db4(5).analyze(CxMat(CxMat::Ones(16, 16))), SizeError);
}

TEST_CASE("perfect reconstruction for both bases") {
  const CxMat u = oracle::random_raster(64, 64, 41);
  for (const auto& t : {SparseTransform::dct2d(), SparseTransform::db4()}) {
    CHECK(oracle::rel_error(t.synthesize(t.analyze(u)), u) < 1e-12);
    CHECK(oracle::rel_error(t.analyze(t.synthesize(u)), u) < 1e-12);
  }
}

TEST_CASE("unitarity and linearity across 200 random rasters") {
  const SparseTransform bases[2] = {SparseTransform::dct2d(), SparseTransform::db4()};
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = (trial % 2) ? 16 : 32;
    const CxMat a = oracle::random_raster(n, n, 100 + std::uint64_t(trial));
    const double na = frobenius_norm(a);
    CHECK(frobenius_norm(dft2(a)) == doctest::Approx(na).epsilon(1e-12));
    for (const auto& t : bases) {
      CHECK(frobenius_norm(t.analyze(a)) == doctest::Approx(na).epsilon(1e-12));
    }
  }
  // linearity spot check
  const CxMat a = oracle::random_raster(32, 32, 900);
  const CxMat b = oracle::random_raster(32, 32, 901);
  const Complex ca(0.7, -1.3), cb(-2.0, 0.4);
  for (const auto& t : bases) {
    const CxMat lhs = t.analyze(CxMat(ca * a + cb * b));
    const CxMat rhs = ca * t.analyze(a) + cb * t.analyze(b);
    CHECK(oracle::rel_error(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("mixed norm of the identity basis is 1") {
  for (int k : {1, 3, 16}) {
    CHECK(mixed_norm(SparseTransform::identity(), 8, 8, k) == 1.0);
  }
}

TEST_CASE("mixed norm k=1 equals the exhaustive basis-vector search") {
  // 1 x 8 raster: the DCT acts along the single row, i.e. the 1-D DCT.
  const Index big_k = 8;
  const double got = mixed_norm(SparseTransform::dct2d(), 1, big_k, 1);
  double want = 0.0;
  for (Index j = 0; j < big_k; ++j) {
    CxMat e = CxMat::Zero(1, big_k);
    e(0, j) = 1.0;
    const CxMat atom = SparseTransform::dct2d().synthesize(e);
    want = std::max(want, atom.cwiseAbs().maxCoeff());
  }
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("1-D DCT mixed norm obeys the 2k/K bound") {
  for (Index big_k : {8, 16, 32}) {
    for (int k : {1, 2, 4}) {
      const double w = mixed_norm(SparseTransform::dct2d(), 1, big_k, k);
      CHECK(w * w <= 2.0 * double(k) / double(big_k) + 1e-12);
    }
  }
}

TEST_CASE("mixed norm size cap") {
  CHECK_THROWS_AS(mixed_norm(SparseTransform::dct2d(), 128, 128, 4), SizeError);
  CHECK_THROWS_AS(mixed_norm(SparseTransform::dct2d(), 8, 8, 0), SizeError);
  CHECK_THROWS_AS(mixed_norm(SparseTransform::dct2d(), 8, 8, 65), SizeError);
}

TEST_CASE("pyramid fringe energy concentrates in the top 5% DCT coefficients") {
  const Index n = 128;
  CxMat fringe(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double phi =
          0.75 * double(std::min(std::min(i, n - 1 - i), std::min(j, n - 1 - j)));
      fringe(i, j) = std::polar(1.0, -phi);
    }
  }
  const CxMat coef = SparseTransform::dct2d().analyze(fringe);
  std::vector<double> energy(size_t(coef.size()));
  for (Index i = 0; i < coef.size(); ++i) energy[size_t(i)] = std::norm(coef.data()[i]);
  std::sort(energy.begin(), energy.end(), std::greater<>());
  const size_t keep = energy.size() / 20;  // 5%
  double top = 0.0, total = 0.0;
  for (size_t i = 0; i < energy.size(); ++i) {
    total += energy[i];
    if (i < keep) top += energy[i];
  }
  CHECK(top / total >= 0.95);
}
