#pragma once

#include "ncbsar/raster.hpp"

namespace ncb {

struct CbResult {
  CxMat interferogram;  // N x L conjugate product on the common band
  ReMat topo_phase;
};

/// Projects the master onto the common band: dft2 -> zero the non-kept
/// frequencies -> idft2. Same grid, no 1/sqrt(alpha*beta) gain.
CxMat cb_filter_master(const CxMat& z_m, const ResolutionRatio& r);

/// Sinc-interpolates the I x J slave to N x L by spectral zero padding,
/// scaled by sqrt(alpha*beta) so upsample_slave o lowpass_degrade equals
/// cb_filter_master exactly.
CxMat upsample_slave(const CxMat& y_s, Index target_rows, Index target_cols);

/// Conventional common-band interferogram:
/// cb_filter_master(z_m) o conj(upsample_slave(y_s)) o exp(-j*flat_phase).
CbResult cb_interferogram(const CxMat& z_m, const CxMat& y_s, const ResolutionRatio& r,
                          const ReMat& flat_phase);

/// Same with flat_phase = 0 (the simulator works after flat-Earth removal).
CbResult cb_interferogram(const CxMat& z_m, const CxMat& y_s, const ResolutionRatio& r);

}  // namespace ncb
