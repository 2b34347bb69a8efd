#include "ncbsar/baseline.hpp"

#include "ncbsar/metrics.hpp"
#include "ncbsar/operator.hpp"
#include "ncbsar/simulator.hpp"
#include "ncbsar/transforms.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace ncb;

TEST_CASE("cb_filter_master is the identity at full band") {
  const CxMat z = oracle::random_raster(8, 8, 101);
  CHECK(oracle::rel_error(cb_filter_master(z, ResolutionRatio::full()), z) < 1e-13);
}

TEST_CASE("cb_filter_master is an idempotent projection") {
  const CxMat z = oracle::random_raster(16, 16, 102);
  const ResolutionRatio r(1, 4, 1, 2);
  const CxMat once = cb_filter_master(z, r);
  const CxMat twice = cb_filter_master(once, r);
  CHECK(oracle::rel_error(twice, once) < 1e-12);
  CHECK(frobenius_norm(once) <= frobenius_norm(z) + 1e-12);
}

TEST_CASE("cb_filter_master matches the dense projector") {
  const Index n = 8;
  const CxMat z = oracle::random_raster(n, n, 103);
  const ResolutionRatio r(1, 2, 1, 4);
  const oracle::DnMat fn = oracle::dft_matrix(n);
  const oracle::DnMat oa = oracle::omega_matrix(n, 4);
  const oracle::DnMat ob = oracle::omega_matrix(n, 2);
  const oracle::DnMat pr = fn.adjoint() * oa.transpose() * oa * fn;   // row-axis projector
  const oracle::DnMat pc = fn.adjoint() * ob.transpose() * ob * fn;   // col-axis projector
  const CxMat want = CxMat(pr * z * pc.transpose());
  CHECK(oracle::rel_error(cb_filter_master(z, r), want) < 1e-12);
}

TEST_CASE("upsample_slave identity and the two-path spectral identity") {
  const CxMat y = oracle::random_raster(8, 8, 104);
  CHECK(oracle::rel_error(upsample_slave(y, 8, 8), y) < 1e-13);
  CHECK_THROWS_AS(upsample_slave(y, 4, 8), DimensionError);

  const CxMat z = oracle::random_raster(16, 16, 105);
  const ResolutionRatio r(1, 2, 1, 4);
  const CxMat via_degrade = upsample_slave(lowpass_degrade(z, r), 16, 16);
  CHECK(oracle::rel_error(via_degrade, cb_filter_master(z, r)) < 1e-12);
}

TEST_CASE("upsample_slave matches dense zero-padding on a delta") {
  CxMat y = CxMat::Zero(4, 4);
  y(1, 3) = Complex(1.0, 0.5);
  const CxMat got = upsample_slave(y, 8, 8);

  const oracle::DnMat f4 = oracle::dft_matrix(4);
  const oracle::DnMat f8 = oracle::dft_matrix(8);
  const oracle::DnMat oa = oracle::omega_matrix(8, 4);
  const double scale = std::sqrt(16.0 / 64.0);
  const CxMat want = CxMat(scale * f8.adjoint() * oa.transpose() * f4 * y * f4.transpose() *
                           oa.conjugate() * f8.conjugate());
  CHECK(oracle::rel_error(got, want) < 1e-12);
}

TEST_CASE("full-band CB interferogram recovers the topographic phase") {
  const SceneConfig cfg{.rows = 32, .cols = 32, .fringe_scale = 0.3, .seed = 106};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio full = ResolutionRatio::full();
  const CbResult cb = cb_interferogram(b.z_m, b.z_s, full);
  CHECK(rmse(b.phi_topo, cb.topo_phase) < 1e-10);

  // equality with the direct conjugate product, wrapped
  const ReMat direct = phase_of(hadamard(b.z_m, b.z_s.conjugate()));
  CHECK(rmse(direct, cb.topo_phase) < 1e-10);
}

TEST_CASE("zero slave gives a zero interferogram") {
  const CxMat z_m = oracle::random_raster(8, 8, 107);
  const CbResult cb = cb_interferogram(z_m, CxMat(CxMat::Zero(4, 8)), ResolutionRatio(1, 2, 1, 1));
  CHECK(frobenius_norm(cb.interferogram) < 1e-14);
  CHECK(frobenius_norm(cb.topo_phase) == 0.0);
}

TEST_CASE("CB phase ignores a global unit-modulus factor") {
  const SceneConfig cfg{.rows = 16, .cols = 16, .fringe_scale = 0.5, .seed = 108};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio r(1, 2, 1, 2);
  const CxMat y = lowpass_degrade(b.z_s, r);
  const CbResult plain = cb_interferogram(b.z_m, y, r);

  const Complex rot = std::polar(1.0, 1.234);
  const CbResult rotated =
      cb_interferogram(CxMat(rot * b.z_m), CxMat(rot * y), r);
  CHECK(rmse(plain.topo_phase, rotated.topo_phase) < 1e-10);
}

TEST_CASE("flat-Earth phase is removed") {
  const SceneConfig cfg{.rows = 16, .cols = 16, .fringe_scale = 0.0, .seed = 109};
  const SceneBundle b = simulate_scene(cfg);
  ReMat flat(16, 16);
  for (Index i = 0; i < flat.size(); ++i) flat.data()[i] = 0.01 * double(i);
  // inject the flat phase into the slave by conjugate symmetry of the product
  CxMat z_s_flat = b.z_s;
  for (Index i = 0; i < z_s_flat.size(); ++i) {
    z_s_flat.data()[i] *= std::polar(1.0, -flat.data()[i]);
  }
  const CbResult cb =
      cb_interferogram(b.z_m, z_s_flat, ResolutionRatio::full(), flat);
  CHECK(rmse(cb.topo_phase, ReMat(ReMat::Zero(16, 16))) < 1e-10);
}
