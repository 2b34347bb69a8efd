#include "ncbsar/baseline.hpp"

#include "ncbsar/operator.hpp"
#include "ncbsar/transforms.hpp"

#include <cmath>

namespace ncb {

CxMat cb_filter_master(const CxMat& z_m, const ResolutionRatio& r) {
  const BandSelector band(z_m.rows(), z_m.cols(), r.kept_rows(z_m.rows()),
                          r.kept_cols(z_m.cols()));
  return idft2(band.embed(band.select(dft2(z_m))));
}

CxMat upsample_slave(const CxMat& y_s, Index target_rows, Index target_cols) {
  if (y_s.rows() > target_rows || y_s.cols() > target_cols) {
    throw DimensionError("upsample_slave: target must be at least the slave size");
  }
  const BandSelector band(target_rows, target_cols, y_s.rows(), y_s.cols());
  const double scale = std::sqrt(double(y_s.rows()) * double(y_s.cols()) /
                                 (double(target_rows) * double(target_cols)));
  return idft2(CxMat(scale * band.embed(dft2(y_s))));
}

CbResult cb_interferogram(const CxMat& z_m, const CxMat& y_s, const ResolutionRatio& r,
                          const ReMat& flat_phase) {
  if (flat_phase.rows() != z_m.rows() || flat_phase.cols() != z_m.cols()) {
    throw DimensionError("cb_interferogram: flat_phase must match the master grid");
  }
  const CxMat master = cb_filter_master(z_m, r);
  const CxMat slave = upsample_slave(y_s, z_m.rows(), z_m.cols());
  CxMat ifg = hadamard(master, slave.conjugate());
  Complex* p = ifg.data();
  const double* f = flat_phase.data();
  for (Index i = 0; i < ifg.size(); ++i) p[i] *= std::polar(1.0, -f[i]);
  CbResult out;
  out.topo_phase = phase_of(ifg);
  out.interferogram = std::move(ifg);
  return out;
}

CbResult cb_interferogram(const CxMat& z_m, const CxMat& y_s, const ResolutionRatio& r) {
  return cb_interferogram(z_m, y_s, r, ReMat::Zero(z_m.rows(), z_m.cols()));
}

}  // namespace ncb
