#include "ncbsar/solver.hpp"

#include "ncbsar/baseline.hpp"
#include "ncbsar/metrics.hpp"
#include "ncbsar/simulator.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace ncb;

TEST_CASE("soft threshold shrinks the modulus and keeps the phase") {
  CxMat v(1, 2);
  v(0, 0) = Complex(3.0, 4.0);
  v(0, 1) = Complex(0.5, 0.0);
  const CxMat s = soft_threshold(v, 2.0);
  CHECK(std::abs(s(0, 0) - Complex(1.8, 2.4)) < 1e-15);
  CHECK(std::abs(soft_threshold(v, 1.0)(0, 1)) == 0.0);
  CHECK(oracle::max_abs_diff(soft_threshold(v, 0.0), v) == 0.0);
}

TEST_CASE("select_lambda matches the direct formula") {
  // mean power 4, gamma 1, K = 65536 -> 2*sqrt(2 ln 65536)
  CxMat y(2, 2);
  y.setConstant(Complex(2.0, 0.0));
  const double got = select_lambda(y, 1.0, 65536);
  const double want = 2.0 * std::sqrt(2.0 * std::log(65536.0));
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
  CHECK(got == doctest::Approx(9.41928).epsilon(1e-5));

  // gamma = 4 halves sigma and therefore lambda
  CHECK(select_lambda(y, 4.0, 65536) == doctest::Approx(want / 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(select_lambda(CxMat(CxMat::Zero(2, 2)), 1.0, 16), ZeroInputError);
}

TEST_CASE("huge lambda drives the solution to zero") {
  const SceneConfig cfg{.rows = 32, .cols = 32, .fringe_scale = 0.5, .seed = 5};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio r(1, 2, 1, 2);
  const CxMat y_s = degrade_slave(b, r);

  // threshold above the largest coefficient magnitude of the first step
  const MeasurementOperator op(b.theta_m, r);
  const SparseTransform dct = SparseTransform::dct2d();
  const double big = 10.0 * (2.0 / r.alpha_beta()) *
                     dct.analyze(adjoint(op, dft2(y_s))).cwiseAbs().maxCoeff();
  SolverConfig cfg_big;
  cfg_big.lambda = big;
  cfg_big.n_iter = 10;
  const RecoveryResult res = recover_interferogram(y_s, b.theta_m, r, cfg_big);
  CHECK(frobenius_norm(res.interferogram) == 0.0);
}

TEST_CASE("identity band with tiny lambda inverts the measurement") {
  const SceneConfig cfg{.rows = 32, .cols = 32, .fringe_scale = 0.5, .seed = 6};
  const SceneBundle b = simulate_scene(cfg);  // noise-free
  const ResolutionRatio r = ResolutionRatio::full();
  const CxMat y_s = degrade_slave(b, r);

  SolverConfig scfg;
  scfg.lambda = 1e-9 * frobenius_norm(y_s);
  scfg.n_iter = 20;
  const RecoveryResult res = recover_interferogram(y_s, b.theta_m, r, scfg);

  const CxMat want = hadamard(b.theta_m.raster().conjugate(), b.z_s);
  const CxMat raw = res.interferogram.conjugate();
  CHECK(oracle::rel_error(raw, want) < 1e-3);
}

TEST_CASE("objective values") {
  const SceneConfig cfg{.rows = 16, .cols = 16, .fringe_scale = 0.4, .seed = 7};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio r(1, 2, 1, 2);
  const MeasurementOperator op(b.theta_m, r);
  const CxMat y_hat = dft2(degrade_slave(b, r));

  SolverConfig scfg;
  scfg.lambda = 0.37;
  const double at_zero = objective(y_hat, CxMat(CxMat::Zero(16, 16)), op, scfg);
  const double n = frobenius_norm(y_hat);
  CHECK(at_zero == doctest::Approx(n * n).epsilon(1e-12));

  // exact solution at full band with lambda = 0
  SolverConfig zero_cfg;
  zero_cfg.lambda = 0.0;
  const MeasurementOperator full(b.theta_m, ResolutionRatio::full());
  const CxMat u_exact = hadamard(b.theta_m.raster().conjugate(), b.z_s);
  CHECK(objective(dft2(b.z_s), u_exact, full, zero_cfg) < 1e-18);

  // dense evaluation oracle on a random point
  const CxMat u = oracle::random_raster(16, 16, 8);
  const CxMat residual = y_hat - forward(op, u);
  double l1 = 0.0;
  const CxMat coef = scfg.transform.analyze(u);
  for (Index i = 0; i < coef.size(); ++i) l1 += std::abs(coef.data()[i]);
  const double want = std::pow(frobenius_norm(residual), 2) + 0.37 * l1;
  CHECK(objective(y_hat, u, op, scfg) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("step size matches the operator norm") {
  const SceneConfig cfg{.rows = 32, .cols = 32, .seed = 9};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio r(1, 4, 1, 2);
  const MeasurementOperator op(b.theta_m, r);
  const double lf = 2.0 * std::pow(operator_norm(op), 2);
  CHECK(lf == doctest::Approx(2.0 / r.alpha_beta()).epsilon(1e-6));
}

TEST_CASE("objective never ends above the zero start") {
  const SceneConfig cfg{.rows = 32,
                        .cols = 32,
                        .fringe_scale = 0.6,
                        .noise_half_width = oracle::kPi / 4.0,
                        .seed = 10};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio r(1, 4, 1, 1);
  const CxMat y_s = degrade_slave(b, r);
  SolverConfig scfg;
  scfg.n_iter = 30;
  scfg.record_history = true;
  const RecoveryResult res = recover_interferogram(y_s, b.theta_m, r, scfg);
  const MeasurementOperator op(b.theta_m, r);
  SolverConfig resolved = scfg;
  resolved.lambda = res.lambda_used;
  const double at_zero = objective(dft2(y_s), CxMat(CxMat::Zero(32, 32)), op, resolved);
  CHECK(res.final_objective <= at_zero);
}

TEST_CASE("recovers exactly sparse supports on most seeds") {
  const Index n = 64;
  const int k = 10;
  const ResolutionRatio r(1, 2, 1, 2);
  const SparseTransform dct = SparseTransform::dct2d();
  int hits = 0;
  for (int trial = 0; trial < 20; ++trial) {
    oracle::Rng rng(500 + std::uint64_t(trial));
    CxMat x0 = CxMat::Zero(n, n);
    std::set<Index> support;
    while (Index(support.size()) < k) {
      support.insert(Index(rng.raw() % std::uint64_t(n * n)));
    }
    for (const Index pos : support) {
      // well-separated magnitudes keep the support identifiable
      x0.data()[pos] = std::polar(1.0 + rng.uniform(), oracle::kPi * rng.symmetric());
    }
    const CxMat u0 = dct.synthesize(x0);
    const PhaseField theta =
        PhaseField::from_phase(oracle::random_phase(n, n, 700 + std::uint64_t(trial)));
    const MeasurementOperator op(theta, r);
    const CxMat y_s = idft2(forward(op, u0));  // noise-free measurement

    SolverConfig scfg;
    scfg.n_iter = 150;
    const RecoveryResult res = recover_interferogram(y_s, theta, r, scfg);
    const CxMat coef = dct.analyze(res.interferogram.conjugate());

    std::vector<std::pair<double, Index>> mags;
    for (Index i = 0; i < coef.size(); ++i) mags.push_back({std::abs(coef.data()[i]), i});
    std::partial_sort(mags.begin(), mags.begin() + k, mags.end(), std::greater<>());
    std::set<Index> rec;
    for (int i = 0; i < k; ++i) rec.insert(mags[size_t(i)].second);
    if (rec == support) ++hits;
  }
  CHECK(hits >= 18);  // >= 90% of 20 trials
}

TEST_CASE("slave size must match the ratio") {
  const SceneConfig cfg{.rows = 16, .cols = 16, .seed = 13};
  const SceneBundle b = simulate_scene(cfg);
  SolverConfig scfg;
  scfg.lambda = 1.0;
  scfg.n_iter = 1;
  // full-size slave against a 1/2 ratio operator
  CHECK_THROWS_AS(recover_interferogram(b.z_s, b.theta_m, ResolutionRatio(1, 2, 1, 2), scfg),
                  DimensionError);
}

TEST_CASE("identical inputs give bit-identical results") {
  const SceneConfig cfg{.rows = 32, .cols = 32, .fringe_scale = 0.7, .seed = 11};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio r(1, 4, 1, 1);
  const CxMat y_s = degrade_slave(b, r);
  SolverConfig scfg;
  scfg.n_iter = 25;
  const RecoveryResult a = recover_interferogram(y_s, b.theta_m, r, scfg);
  const RecoveryResult b2 = recover_interferogram(y_s, b.theta_m, r, scfg);
  CHECK(a.lambda_used == b2.lambda_used);
  CHECK(std::memcmp(a.interferogram.data(), b2.interferogram.data(),
                    sizeof(Complex) * size_t(a.interferogram.size())) == 0);
  CHECK(a.final_objective == b2.final_objective);

  // the history reporter never alters the iterates
  SolverConfig with_history = scfg;
  with_history.record_history = true;
  const RecoveryResult c = recover_interferogram(y_s, b.theta_m, r, with_history);
  CHECK(std::memcmp(a.interferogram.data(), c.interferogram.data(),
                    sizeof(Complex) * size_t(a.interferogram.size())) == 0);
  CHECK(c.objective_history.size() == 25);
  CHECK(c.relative_change.size() == 25);
  CHECK(c.objective_history.back() == doctest::Approx(c.final_objective));
}

TEST_CASE("NCB beats CB on the 64x64 noise-free pyramid scene") {
  const SceneConfig cfg{.rows = 64, .cols = 64, .fringe_scale = 0.75, .seed = 12};
  const SceneBundle b = simulate_scene(cfg);
  const ResolutionRatio r(1, 4, 1, 1);
  const CxMat y_s = degrade_slave(b, r);

  const CbResult cb = cb_interferogram(b.z_m, y_s, r);
  const double cb_rmse = rmse(b.phi_topo, cb.topo_phase);

  SolverConfig scfg;
  scfg.n_iter = 200;
  const RecoveryResult ncb = recover_interferogram(y_s, b.theta_m, r, scfg);
  const double ncb_rmse = rmse(b.phi_topo, ncb.topo_phase);

  CHECK(ncb_rmse < cb_rmse);
}
