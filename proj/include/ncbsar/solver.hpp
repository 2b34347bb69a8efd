#pragma once

#include "ncbsar/operator.hpp"
#include "ncbsar/raster.hpp"
#include "ncbsar/transforms.hpp"

#include <optional>
#include <vector>

namespace ncb {

struct SolverConfig {
  /// Explicit regularization weight. When unset, lambda is derived from
  /// gamma via the sigma_gamma * sqrt(2 ln K) rule on the slave image.
  std::optional<double> lambda;
  double gamma = 1.0;
  int n_iter = 200;
  SparseTransform transform = SparseTransform::dct2d();
  /// Records the objective once per iteration (costs one extra forward).
  bool record_history = false;
};

struct RecoveryResult {
  /// Recovered interferogram in the conjugate-product phase convention, i.e.
  /// conj of the raw solver iterate, so that phase_of(interferogram) is the
  /// topographic phase directly comparable with the CB pipeline and truth.
  CxMat interferogram;
  ReMat topo_phase;
  int iterations_run = 0;
  double final_objective = 0.0;
  double lambda_used = 0.0;
  std::vector<double> objective_history;
  /// ||U_i - U_{i-1}||_F / max(||U_i||_F, eps), reporting only; the iteration
  /// count never depends on it.
  std::vector<double> relative_change;
};

/// Phase-preserving complex shrinkage: v * max(|v|-kappa, 0)/|v|.
CxMat soft_threshold(const CxMat& v, double kappa);

/// lambda = sqrt(mean power of y_s / gamma) * sqrt(2 ln K), K the total
/// coefficient count. Natural logarithm.
double select_lambda(const CxMat& y_s, double gamma, std::int64_t coefficient_count);

/// ||y_hat - forward(U)||_F^2 + lambda * ||analyze(U)||_1 with lambda and the
/// basis taken from cfg (cfg.lambda must be resolved).
double objective(const CxMat& y_hat, const CxMat& U, const MeasurementOperator& op,
                 const SolverConfig& cfg);

/// FISTA-based l1 interferogram formation. y_s is the I x J low-resolution
/// slave image (image domain), theta the N x L master phase field. Runs
/// exactly cfg.n_iter iterations from U0 = 0 with step 1/L_f, L_f =
/// 2/(alpha*beta).
RecoveryResult recover_interferogram(const CxMat& y_s, const PhaseField& theta,
                                     const ResolutionRatio& r, const SolverConfig& cfg);

}  // namespace ncb
