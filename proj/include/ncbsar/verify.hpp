#pragma once

#include "ncbsar/operator.hpp"
#include "ncbsar/raster.hpp"
#include "ncbsar/transforms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ncb {

struct VerifyConfig {
  Index rows = 32;
  Index cols = 32;
  ResolutionRatio ratio = ResolutionRatio(1, 4, 1, 4);
  int trials = 1000;
  int k = 4;            // sparsity level of the test vectors
  double delta = 0.5;   // target RIC level
  double eta = 0.1;     // failure probability budget
  std::uint64_t seed = 1;
  SparseTransform transform = SparseTransform::dct2d();
};

struct ConcentrationResult {
  double median = 0.0;
  std::vector<double> delta_grid;
  std::vector<double> tail_freq;    // P{ | ||Ax|| - 1 | >= delta }
  std::vector<double> tail_bound;   // 4 exp(-ab d^2 / (16 ||W||_{k,inf}^2))
};

/// Monte Carlo concentration of ||H_m u||_2 for one fixed unit-norm k-sparse
/// test vector (u = synthesize(x)) under fresh speckle phase per trial.
/// Trial t draws its phase from seed + 1 + t, so runs parallelize and
/// reproduce identically.
ConcentrationResult median_concentration(const VerifyConfig& cfg);

/// Empirical restricted isometry constant of the dense sensing matrix:
/// exhaustive support enumeration for K <= 64 and k <= 3, otherwise 1e4
/// sampled supports (a lower bound). Rasters above 64x64 raise SizeError.
double empirical_ric(const VerifyConfig& cfg);

/// 2 * (largest eigenvalue of adjoint o forward); expected 2/(alpha*beta).
double lipschitz_check(const VerifyConfig& cfg);

/// Right-hand side of the RIP sufficiency bound with C = 576 and the
/// measured mixed norm: the alpha*beta the bound demands at (k, delta, eta).
/// Reported next to the configured alpha*beta, never gated on.
double rip_sufficiency_ratio(const VerifyConfig& cfg);

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// The bundle the verify CLI emits: concentration medians and tails, the
/// Lipschitz constant, random-convolution equivalence, RIC sanity and the
/// RIP sufficiency frontier.
std::vector<VerifyCheck> run_standard_checks(const VerifyConfig& cfg);

}  // namespace ncb
