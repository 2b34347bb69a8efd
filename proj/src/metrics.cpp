#include "ncbsar/metrics.hpp"

#include <cmath>
#include <numbers>

namespace ncb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFloorDb = -300.0;

double wrap_to_principal(double x) {
  // angle of exp(jx), kept in (-pi, pi]
  double w = std::remainder(x, 2.0 * kPi);
  if (w <= -kPi) w = kPi;
  return w;
}

}  // namespace

double rmse(const ReMat& phi_true, const ReMat& phi_est) {
  detail::require_same_shape(phi_true, phi_est, "rmse");
  double acc = 0.0;
  for (Index i = 0; i < phi_true.size(); ++i) {
    const double d = wrap_to_principal(phi_true.data()[i] - phi_est.data()[i]);
    acc += d * d;
  }
  return std::sqrt(acc / double(phi_true.size()));
}

CxMat coef_error_map(const ReMat& phi_true, const ReMat& phi_est, const SparseTransform& t) {
  detail::require_same_shape(phi_true, phi_est, "coef_error_map");
  CxMat diff(phi_true.rows(), phi_true.cols());
  for (Index i = 0; i < diff.size(); ++i) {
    diff.data()[i] =
        std::polar(1.0, phi_true.data()[i]) - std::polar(1.0, phi_est.data()[i]);
  }
  return t.analyze(diff);
}

ErrorCurves error_curves(const CxMat& map, const std::vector<double>& percentages) {
  if (map.rows() != map.cols()) {
    throw NonSquareError("error_curves: the binned curves assume a square map");
  }
  const Index n = map.rows();
  ErrorCurves out;
  out.percentages = percentages;
  for (const double xi : percentages) {
    if (xi <= 0.0 || xi > 1.0) throw ConfigError("error_curves: xi must lie in (0, 1]");
    const Index corner = std::min<Index>(n, std::llround(std::sqrt(xi) * double(n)));
    double low = 0.0, high = 0.0;
    for (Index p = 0; p < n; ++p) {
      for (Index q = 0; q < n; ++q) {
        const double e = std::norm(map(p, q));
        if (p < corner && q < corner) {
          low += e;
        } else {
          high += e;
        }
      }
    }
    const Index low_count = corner * corner;
    const Index high_count = n * n - low_count;
    auto to_db = [](double sum, Index count) {
      if (count == 0 || sum <= 0.0) return kFloorDb;
      return std::max(kFloorDb, 10.0 * std::log10(sum / double(count)));
    };
    out.e_low_db.push_back(to_db(low, low_count));
    out.e_high_db.push_back(to_db(high, high_count));
  }
  return out;
}

ReMat interferogram_spectrum(const CxMat& z_m, const CxMat& ifg) {
  detail::require_same_shape(z_m, ifg, "interferogram_spectrum");
  CxMat weighted(ifg.rows(), ifg.cols());
  for (Index i = 0; i < ifg.size(); ++i) {
    weighted.data()[i] = std::abs(z_m.data()[i]) * ifg.data()[i];
  }
  const CxMat spec = dft2(weighted);
  const Index rows = spec.rows(), cols = spec.cols();
  ReMat out(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Index si = (i + rows / 2) % rows;  // DC lands at (rows/2, cols/2)
    for (Index j = 0; j < cols; ++j) {
      out(si, (j + cols / 2) % cols) = std::abs(spec(i, j));
    }
  }
  return out;
}

Index spectral_support_area(const ReMat& spectrum, double db_down) {
  return spectral_support_area(spectrum, db_down, spectrum.maxCoeff());
}

Index spectral_support_area(const ReMat& spectrum, double db_down, double reference_peak) {
  if (reference_peak <= 0.0) return 0;
  const double thresh = reference_peak * std::pow(10.0, -db_down / 20.0);
  Index count = 0;
  for (Index i = 0; i < spectrum.size(); ++i) {
    if (spectrum.data()[i] >= thresh) ++count;
  }
  return count;
}

}  // namespace ncb
