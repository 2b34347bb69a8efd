#pragma once

#include "ncbsar/raster.hpp"

namespace ncb {

/// Unitary 2-D DFT (1/sqrt(rows*cols) scaling), DC at index (0,0).
CxMat dft2(const CxMat& a);

/// Exact inverse of dft2 (same unitary scaling).
CxMat idft2(const CxMat& a);

/// Orthonormal sparse basis: coefficients x = analyze(u), u = synthesize(x).
/// The DCT pair is the orthonormal type-II/III transform applied separably;
/// DB4 is the periodized orthogonal Daubechies-4 wavelet and requires
/// power-of-two rasters. Both act on real and imaginary parts independently.
class SparseTransform {
 public:
  enum class Kind { Identity, Dct2d, Db4 };

  static SparseTransform identity() { return SparseTransform(Kind::Identity, 0); }
  static SparseTransform dct2d() { return SparseTransform(Kind::Dct2d, 0); }

  /// levels <= 0 selects the default depth min(log2 rows, log2 cols) - 3,
  /// floored at 1.
  static SparseTransform db4(int levels = 0) { return SparseTransform(Kind::Db4, levels); }

  CxMat analyze(const CxMat& u) const;
  CxMat synthesize(const CxMat& x) const;

  Kind kind() const { return kind_; }
  int levels() const { return levels_; }

  /// Decomposition depth actually used for a raster of this shape.
  int levels_for(Index rows, Index cols) const;

 private:
  SparseTransform(Kind kind, int levels) : kind_(kind), levels_(levels) {}

  Kind kind_;
  int levels_;
};

/// ||W||_{k,inf}: sup over unit-norm k-sparse x of ||synthesize(x)||_inf,
/// computed exactly as the max over synthesis rows of the root of the sum of
/// the k largest squared entries. Rasters are capped at 64x64 (SizeError).
double mixed_norm(const SparseTransform& t, Index rows, Index cols, int k);

}  // namespace ncb
