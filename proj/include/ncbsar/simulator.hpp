#pragma once

#include "ncbsar/raster.hpp"

#include <cstdint>
#include <vector>

namespace ncb {

enum class Pattern { Pyramid, ConcentricRings };

struct OutlierPatch {
  Index row = 0;  // top-left corner
  Index col = 0;
  Index size = 16;
  double phase_offset = 0.0;  // radians added to phi_topo on the footprint
};

struct SceneConfig {
  Index rows = 256;
  Index cols = 256;
  Pattern pattern = Pattern::Pyramid;
  double fringe_scale = 0.75;  // radians per pixel of pattern gradient
  std::vector<OutlierPatch> outlier_patches;
  double noise_half_width = 0.0;  // phi_noise ~ Uniform[-a, a], a in [0, pi]
  std::uint64_t seed = 0;
};

/// Simulated master/slave pair. The slave is built from the decomposition
/// z_s = theta_m o u + e with u = amplitude o exp(-j*phi_topo) and
/// e = theta_m o u o (exp(-j*phi_noise) - 1), which collapses to the closed
/// form z_s = amplitude o exp(j*(phi_m - phi_topo - phi_noise)).
struct SceneBundle {
  CxMat z_m;            // HR master
  CxMat z_s;            // HR slave, pre-degradation
  PhaseField theta_m;   // exp(j*phi_m) (flat-Earth phase is identically 0)
  ReMat phi_topo;       // ground truth
  ReMat phi_noise;      // realization
  ReMat amplitude;      // shared Rayleigh amplitude
};

struct NoiseStats {
  double snr_db = 0.0;     // +inf sentinel when noise-free
  double coherence = 0.0;  // topography-compensated sample coherence
};

/// Draw order per seed: amplitude, then phi_m, then phi_noise, each
/// row-major. Identical seeds give bit-identical bundles; the noise stream
/// is drawn even when noise_half_width = 0 so the speckle realization does
/// not depend on the noise setting.
SceneBundle simulate_scene(const SceneConfig& cfg);

/// The LR slave y_s: lowpass_degrade(z_s, r).
CxMat degrade_slave(const SceneBundle& bundle, const ResolutionRatio& r);

NoiseStats empirical_noise_stats(const SceneBundle& bundle);

/// Ground-truth pattern only (no patches, no noise): the complex fringe
/// exp(-j*phi_topo) used by sparsity diagnostics.
ReMat pattern_phase(Index rows, Index cols, Pattern pattern, double fringe_scale);

/// Patch layout used by the Table-I style runs: three 16x16 half-pi offsets
/// spread over the fringe field. Grids below 64 pixels get none.
std::vector<OutlierPatch> default_outlier_patches(Index size);

}  // namespace ncb
