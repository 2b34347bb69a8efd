#include "ncbsar/raster.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace ncb {

namespace detail {

void require_same_shape(const CxMat& a, const CxMat& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(where) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

void require_same_shape(const ReMat& a, const ReMat& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(where) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

namespace {

// Pairwise reduction over a row-major span. The split points depend only on
// the length, so the summation tree is fixed for a given raster shape.
template <typename T, typename F>
T pairwise_reduce(const F& term, std::ptrdiff_t begin, std::ptrdiff_t end) {
  const std::ptrdiff_t n = end - begin;
  if (n <= 16) {
    T acc{};
    for (std::ptrdiff_t i = begin; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::ptrdiff_t mid = begin + n / 2;
  return pairwise_reduce<T>(term, begin, mid) + pairwise_reduce<T>(term, mid, end);
}

}  // namespace
}  // namespace detail

CxMat hadamard(const CxMat& a, const CxMat& b) {
  detail::require_same_shape(a, b, "hadamard");
  return a.cwiseProduct(b);
}

ReMat phase_of(const CxMat& a) {
  constexpr double pi = std::numbers::pi;
  ReMat out(a.rows(), a.cols());
  const Complex* src = a.data();
  double* dst = out.data();
  const std::ptrdiff_t n = a.size();
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Complex v = src[i];
    if (v.real() == 0.0 && v.imag() == 0.0) {
      dst[i] = 0.0;
      continue;
    }
    double ph = std::arg(v);
    if (ph == -pi) ph = pi;  // keep the principal value in (-pi, pi]
    dst[i] = ph;
  }
  return out;
}

double frobenius_norm(const CxMat& a) {
  const Complex* p = a.data();
  const double s = detail::pairwise_reduce<double>(
      [p](std::ptrdiff_t i) { return std::norm(p[i]); }, 0, a.size());
  return std::sqrt(s);
}

double frobenius_norm(const ReMat& a) {
  const double* p = a.data();
  const double s = detail::pairwise_reduce<double>(
      [p](std::ptrdiff_t i) { return p[i] * p[i]; }, 0, a.size());
  return std::sqrt(s);
}

Complex inner(const CxMat& a, const CxMat& b) {
  detail::require_same_shape(a, b, "inner");
  const Complex* pa = a.data();
  const Complex* pb = b.data();
  return detail::pairwise_reduce<Complex>(
      [pa, pb](std::ptrdiff_t i) { return std::conj(pa[i]) * pb[i]; }, 0, a.size());
}

PhaseField::PhaseField(CxMat samples) : raster_(std::move(samples)) {
  if (raster_.rows() < 1 || raster_.cols() < 1) {
    throw DimensionError("PhaseField: empty raster");
  }
  const Complex* p = raster_.data();
  for (std::ptrdiff_t i = 0; i < raster_.size(); ++i) {
    if (std::abs(std::abs(p[i]) - 1.0) > 1e-12) {
      throw ConfigError("PhaseField: sample " + std::to_string(i) +
                        " is not on the unit circle");
    }
  }
}

PhaseField PhaseField::from_phase(const ReMat& phase) {
  CxMat r(phase.rows(), phase.cols());
  const double* src = phase.data();
  Complex* dst = r.data();
  for (std::ptrdiff_t i = 0; i < phase.size(); ++i) {
    dst[i] = std::polar(1.0, src[i]);
  }
  return PhaseField(std::move(r));
}

namespace {

void normalize_ratio(std::int64_t& num, std::int64_t& den, const char* name) {
  if (den <= 0 || num <= 0 || num > den) {
    throw RatioError(std::string(name) + ": ratio must be a rational in (0, 1]");
  }
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
}

}  // namespace

ResolutionRatio::ResolutionRatio(std::int64_t alpha_num, std::int64_t alpha_den,
                                 std::int64_t beta_num, std::int64_t beta_den)
    : alpha_num_(alpha_num), alpha_den_(alpha_den), beta_num_(beta_num), beta_den_(beta_den) {
  normalize_ratio(alpha_num_, alpha_den_, "alpha");
  normalize_ratio(beta_num_, beta_den_, "beta");
}

ResolutionRatio ResolutionRatio::parse(const std::string& alpha, const std::string& beta) {
  auto parse_one = [](const std::string& s) -> std::pair<std::int64_t, std::int64_t> {
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return {std::stoll(s), 1};
      return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    } catch (const std::exception&) {
      throw RatioError("cannot parse ratio '" + s + "' (expected p/q)");
    }
  };
  const auto [an, ad] = parse_one(alpha);
  const auto [bn, bd] = parse_one(beta);
  return {an, ad, bn, bd};
}

double ResolutionRatio::alpha() const {
  return static_cast<double>(alpha_num_) / static_cast<double>(alpha_den_);
}

double ResolutionRatio::beta() const {
  return static_cast<double>(beta_num_) / static_cast<double>(beta_den_);
}

Index ResolutionRatio::kept_rows(Index full_rows) const {
  const std::int64_t prod = alpha_num_ * static_cast<std::int64_t>(full_rows);
  if (prod % alpha_den_ != 0) {
    throw RatioError("alpha*" + std::to_string(full_rows) + " is not an integer for alpha=" +
                     std::to_string(alpha_num_) + "/" + std::to_string(alpha_den_));
  }
  return static_cast<Index>(prod / alpha_den_);
}

Index ResolutionRatio::kept_cols(Index full_cols) const {
  const std::int64_t prod = beta_num_ * static_cast<std::int64_t>(full_cols);
  if (prod % beta_den_ != 0) {
    throw RatioError("beta*" + std::to_string(full_cols) + " is not an integer for beta=" +
                     std::to_string(beta_num_) + "/" + std::to_string(beta_den_));
  }
  return static_cast<Index>(prod / beta_den_);
}

std::string ResolutionRatio::to_string() const {
  return std::to_string(alpha_num_) + "/" + std::to_string(alpha_den_) + " x " +
         std::to_string(beta_num_) + "/" + std::to_string(beta_den_);
}

}  // namespace ncb
