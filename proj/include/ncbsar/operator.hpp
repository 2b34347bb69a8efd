#pragma once

#include "ncbsar/raster.hpp"
#include "ncbsar/transforms.hpp"

namespace ncb {

/// DC-centered lowpass band of a DFT spectrum. Along an axis of size N
/// keeping m samples, the kept frequency indices are
/// {0..ceil(m/2)-1} u {N-floor(m/2)..N-1}; in the small spectrum the kept
/// negative frequencies occupy the top indices, so DC stays at (0,0).
class BandSelector {
 public:
  BandSelector(Index full_rows, Index full_cols, Index kept_rows, Index kept_cols);

  Index full_rows() const { return full_rows_; }
  Index full_cols() const { return full_cols_; }
  Index kept_rows() const { return kept_rows_; }
  Index kept_cols() const { return kept_cols_; }

  /// Full-spectrum index of kept row p (and likewise for columns).
  Index row_index(Index p) const;
  Index col_index(Index q) const;

  /// Extracts the kept block: full (N x L) -> small (I x J).
  CxMat select(const CxMat& full) const;

  /// Adjoint of select: small (I x J) -> full (N x L), zeros elsewhere.
  CxMat embed(const CxMat& small) const;

 private:
  Index full_rows_, full_cols_, kept_rows_, kept_cols_;
};

/// The band-limited, speckle-phase-modulated forward map in the spectral
/// measurement domain:
///   forward(U) = 1/sqrt(alpha*beta) * select(dft2(theta o U)),
/// with adjoint
///   adjoint(Y) = 1/sqrt(alpha*beta) * conj(theta) o idft2(embed(Y)).
class MeasurementOperator {
 public:
  MeasurementOperator(PhaseField theta, ResolutionRatio ratio);

  const PhaseField& theta() const { return theta_; }
  const BandSelector& band() const { return band_; }
  const ResolutionRatio& ratio() const { return ratio_; }

  Index rows() const { return theta_.rows(); }
  Index cols() const { return theta_.cols(); }
  double alpha_beta() const { return ratio_.alpha_beta(); }
  double gain() const { return gain_; }  // 1/sqrt(alpha*beta)

 private:
  PhaseField theta_;
  ResolutionRatio ratio_;
  BandSelector band_;
  double gain_;
};

/// N x L -> I x J image-domain degradation (common-band filtering):
/// 1/sqrt(alpha*beta) * idft2_small(select(dft2(z))).
CxMat lowpass_degrade(const CxMat& z, const ResolutionRatio& r);

/// Spectral-domain measurement of an N x L interferogram (I x J output).
CxMat forward(const MeasurementOperator& op, const CxMat& u);

/// Adjoint of forward (I x J -> N x L).
CxMat adjoint(const MeasurementOperator& op, const CxMat& y);

/// Full sensing map applied to coefficients: forward(synthesize(x)).
CxMat sensing_forward(const MeasurementOperator& op, const SparseTransform& t, const CxMat& x);

/// Random-convolution form acting on the spectral-domain interferogram
/// u_hat = dft2(u); equals forward(idft2(u_hat)).
CxMat forward_from_spectrum(const MeasurementOperator& op, const CxMat& u_hat);

/// Largest singular value of forward, by power iteration on adjoint o forward
/// (200 iterations or relative change < 1e-10). Expected: 1/sqrt(alpha*beta).
double operator_norm(const MeasurementOperator& op);

}  // namespace ncb
