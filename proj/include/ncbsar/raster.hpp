#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncb {

using Complex = std::complex<double>;

// All images, interferograms and spectra are dense complex rasters in
// row-major layout. Real-valued rasters (phase maps, amplitudes) use ReMat.
using CxMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ReMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RatioError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonSquareError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ZeroInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
void require_same_shape(const CxMat& a, const CxMat& b, const char* where);
void require_same_shape(const ReMat& a, const ReMat& b, const char* where);
}  // namespace detail

/// Elementwise product of two equally sized rasters.
CxMat hadamard(const CxMat& a, const CxMat& b);

/// Principal argument per sample, in (-pi, pi]. Zero samples map to phase 0.
ReMat phase_of(const CxMat& a);

/// Frobenius norm with a fixed row-major pairwise reduction, so the result
/// is bit-identical across runs and thread counts.
double frobenius_norm(const CxMat& a);
double frobenius_norm(const ReMat& a);

/// <a, b> = sum conj(a_i) * b_i over row-major order (same fixed reduction).
Complex inner(const CxMat& a, const CxMat& b);

/// Unit-modulus raster, e.g. the speckle phase exp(j*phi_m). Construction
/// checks |sample| = 1 within 1e-12.
class PhaseField {
 public:
  explicit PhaseField(CxMat samples);

  /// Builds exp(j*phase) elementwise; exactly unit modulus by construction.
  static PhaseField from_phase(const ReMat& phase);

  const CxMat& raster() const { return raster_; }
  Index rows() const { return raster_.rows(); }
  Index cols() const { return raster_.cols(); }

 private:
  CxMat raster_;
};

/// Exact rational resolution ratios (alpha, beta) in (0, 1]. Band sizes
/// alpha*N and beta*L must come out integral; fractions are never rounded.
class ResolutionRatio {
 public:
  ResolutionRatio(std::int64_t alpha_num, std::int64_t alpha_den,
                  std::int64_t beta_num, std::int64_t beta_den);

  static ResolutionRatio full() { return {1, 1, 1, 1}; }

  /// Parses "p/q" or "1" style strings.
  static ResolutionRatio parse(const std::string& alpha, const std::string& beta);

  double alpha() const;
  double beta() const;
  double alpha_beta() const { return alpha() * beta(); }

  std::int64_t alpha_num() const { return alpha_num_; }
  std::int64_t alpha_den() const { return alpha_den_; }
  std::int64_t beta_num() const { return beta_num_; }
  std::int64_t beta_den() const { return beta_den_; }

  /// alpha*full_rows; throws RatioError when not an integer >= 1.
  Index kept_rows(Index full_rows) const;
  /// beta*full_cols; throws RatioError when not an integer >= 1.
  Index kept_cols(Index full_cols) const;

  std::string to_string() const;

 private:
  std::int64_t alpha_num_, alpha_den_, beta_num_, beta_den_;
};

}  // namespace ncb
