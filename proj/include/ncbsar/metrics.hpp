#pragma once

#include "ncbsar/raster.hpp"
#include "ncbsar/transforms.hpp"

#include <vector>

namespace ncb {

/// Wrapped-difference root-mean-square of two phase rasters, in radians;
/// the result lies in [0, pi].
double rmse(const ReMat& phi_true, const ReMat& phi_est);

/// Coefficients of the exponential phase error:
/// analyze(exp(j*phi_true) - exp(j*phi_est)).
CxMat coef_error_map(const ReMat& phi_true, const ReMat& phi_est, const SparseTransform& t);

struct ErrorCurves {
  std::vector<double> percentages;  // ascending xi values in (0, 1]
  std::vector<double> e_low_db;
  std::vector<double> e_high_db;
};

/// Mean coefficient error, split at the P x P corner with P = round(sqrt(xi)*N).
/// Empty or all-zero sums floor at -300 dB. Square maps only.
ErrorCurves error_curves(const CxMat& map, const std::vector<double>& percentages);

/// Modulus of the centered (fftshifted) 2-D DFT of |z_m| o ifg.
ReMat interferogram_spectrum(const CxMat& z_m, const CxMat& ifg);

/// Pixels whose spectrum value stays within `db_down` dB of the peak.
Index spectral_support_area(const ReMat& spectrum, double db_down);

/// Same contour against an explicit reference level, so two spectra can be
/// compared on one shared scale (the way paired spectra share a colormap).
Index spectral_support_area(const ReMat& spectrum, double db_down, double reference_peak);

}  // namespace ncb
