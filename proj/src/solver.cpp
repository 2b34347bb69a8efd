#include "ncbsar/solver.hpp"

#include <cmath>

namespace ncb {

CxMat soft_threshold(const CxMat& v, double kappa) {
  if (kappa < 0.0) throw ConfigError("soft_threshold: kappa must be nonnegative");
  if (kappa == 0.0) return v;
  CxMat out(v.rows(), v.cols());
  const Complex* src = v.data();
  Complex* dst = out.data();
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(src[i]);
    dst[i] = mag <= kappa ? Complex{} : src[i] * ((mag - kappa) / mag);
  }
  return out;
}

double select_lambda(const CxMat& y_s, double gamma, std::int64_t coefficient_count) {
  if (gamma <= 0.0) throw ConfigError("select_lambda: gamma must be positive");
  if (coefficient_count < 2) throw ConfigError("select_lambda: need at least 2 coefficients");
  const double norm = frobenius_norm(y_s);
  if (norm == 0.0) throw ZeroInputError("select_lambda: slave image is identically zero");
  const double mean_power = norm * norm / double(y_s.size());
  const double sigma_gamma = std::sqrt(mean_power / gamma);
  return sigma_gamma * std::sqrt(2.0 * std::log(double(coefficient_count)));
}

double objective(const CxMat& y_hat, const CxMat& U, const MeasurementOperator& op,
                 const SolverConfig& cfg) {
  if (!cfg.lambda.has_value()) {
    throw ConfigError("objective: cfg.lambda must be resolved");
  }
  const CxMat residual = y_hat - forward(op, U);
  const double data = frobenius_norm(residual);
  const CxMat coef = cfg.transform.analyze(U);
  const Complex* p = coef.data();
  double l1 = 0.0;
  for (Index i = 0; i < coef.size(); ++i) l1 += std::abs(p[i]);
  return data * data + *cfg.lambda * l1;
}

RecoveryResult recover_interferogram(const CxMat& y_s, const PhaseField& theta,
                                     const ResolutionRatio& r, const SolverConfig& cfg) {
  if (cfg.n_iter < 1) throw ConfigError("recover_interferogram: n_iter must be >= 1");
  const MeasurementOperator op(theta, r);
  const Index expect_rows = op.band().kept_rows();
  const Index expect_cols = op.band().kept_cols();
  if (y_s.rows() != expect_rows || y_s.cols() != expect_cols) {
    throw DimensionError("recover_interferogram: slave image must be " +
                         std::to_string(expect_rows) + "x" + std::to_string(expect_cols) +
                         " for this ratio");
  }

  const double l_f = 2.0 / r.alpha_beta();
  SolverConfig resolved = cfg;
  if (!resolved.lambda.has_value()) {
    resolved.lambda = select_lambda(y_s, cfg.gamma, theta.rows() * theta.cols());
  }
  const double lambda = *resolved.lambda;
  const double kappa = lambda / l_f;

  // Spectral measurement; DFTs of the residual path happen once per
  // iteration in the pre-processed domain.
  const CxMat y_hat = dft2(y_s);

  CxMat u_prev = CxMat::Zero(theta.rows(), theta.cols());
  CxMat u = u_prev;
  CxMat v = u_prev;
  double t_prev = 1.0;

  RecoveryResult result;
  result.lambda_used = lambda;
  if (resolved.record_history) result.objective_history.reserve(resolved.n_iter);

  for (int i = 1; i <= resolved.n_iter; ++i) {
    const CxMat residual = y_hat - forward(op, v);
    const CxMat descent = (-2.0 / l_f) * adjoint(op, residual);
    u = resolved.transform.synthesize(
        soft_threshold(resolved.transform.analyze(v - descent), kappa));
    const double t = 0.5 + 0.5 * std::sqrt(1.0 + 4.0 * t_prev * t_prev);
    v = u + ((t_prev - 1.0) / t) * (u - u_prev);
    if (resolved.record_history) {
      result.objective_history.push_back(objective(y_hat, u, op, resolved));
      const double norm_u = frobenius_norm(u);
      result.relative_change.push_back(frobenius_norm(CxMat(u - u_prev)) /
                                       std::max(norm_u, 1e-300));
    }
    u_prev = u;
    t_prev = t;
  }

  result.iterations_run = resolved.n_iter;
  result.final_objective = resolved.record_history ? result.objective_history.back()
                                                   : objective(y_hat, u, op, resolved);
  result.interferogram = u.conjugate();
  result.topo_phase = phase_of(result.interferogram);
  return result;
}

}  // namespace ncb
