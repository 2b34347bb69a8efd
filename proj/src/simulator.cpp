#include "ncbsar/simulator.hpp"

#include "ncbsar/operator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace ncb {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform double in [0, 1) from the top 53 bits; keeps the stream identical
// across standard libraries, unlike std::uniform_real_distribution.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : rng_(seed) {}
  double next() { return double(rng_() >> 11) * 0x1p-53; }

 private:
  std::mt19937_64 rng_;
};

void validate(const SceneConfig& cfg) {
  if (cfg.rows < 1 || cfg.cols < 1) throw ConfigError("scene: rows and cols must be >= 1");
  if (cfg.noise_half_width < 0.0 || cfg.noise_half_width > kPi) {
    throw ConfigError("scene: noise_half_width must lie in [0, pi]");
  }
  for (const auto& p : cfg.outlier_patches) {
    if (p.size < 1 || p.row < 0 || p.col < 0 || p.row + p.size > cfg.rows ||
        p.col + p.size > cfg.cols) {
      throw ConfigError("scene: outlier patch does not fit inside the grid");
    }
  }
}

}  // namespace

ReMat pattern_phase(Index rows, Index cols, Pattern pattern, double fringe_scale) {
  ReMat phi(rows, cols);
  for (Index n = 0; n < rows; ++n) {
    for (Index l = 0; l < cols; ++l) {
      double v = 0.0;
      switch (pattern) {
        case Pattern::Pyramid:
          v = double(std::min(std::min(n, rows - 1 - n), std::min(l, cols - 1 - l)));
          break;
        case Pattern::ConcentricRings: {
          const double dr = double(n) - double(rows) / 2.0;
          const double dc = double(l) - double(cols) / 2.0;
          v = std::sqrt(dr * dr + dc * dc);
          break;
        }
      }
      phi(n, l) = fringe_scale * v;
    }
  }
  return phi;
}

SceneBundle simulate_scene(const SceneConfig& cfg) {
  validate(cfg);
  const Index rows = cfg.rows, cols = cfg.cols;
  UniformStream u(cfg.seed);

  ReMat amplitude(rows, cols);
  for (Index i = 0; i < amplitude.size(); ++i) {
    amplitude.data()[i] = std::sqrt(-2.0 * std::log(1.0 - u.next()));  // Rayleigh(1)
  }
  ReMat phi_m(rows, cols);
  for (Index i = 0; i < phi_m.size(); ++i) {
    phi_m.data()[i] = -kPi + 2.0 * kPi * u.next();
  }
  ReMat phi_noise(rows, cols);
  for (Index i = 0; i < phi_noise.size(); ++i) {
    phi_noise.data()[i] = cfg.noise_half_width * (2.0 * u.next() - 1.0);
  }

  ReMat phi_topo = pattern_phase(rows, cols, cfg.pattern, cfg.fringe_scale);
  for (const auto& p : cfg.outlier_patches) {
    phi_topo.block(p.row, p.col, p.size, p.size).array() += p.phase_offset;
  }

  SceneBundle b{CxMat(rows, cols), CxMat(rows, cols), PhaseField::from_phase(phi_m),
                std::move(phi_topo), std::move(phi_noise), std::move(amplitude)};
  for (Index i = 0; i < b.z_m.size(); ++i) {
    const double a = b.amplitude.data()[i];
    const double pm = phi_m.data()[i];
    b.z_m.data()[i] = a * std::polar(1.0, pm);
    b.z_s.data()[i] = a * std::polar(1.0, pm - b.phi_topo.data()[i] - b.phi_noise.data()[i]);
  }
  return b;
}

CxMat degrade_slave(const SceneBundle& bundle, const ResolutionRatio& r) {
  return lowpass_degrade(bundle.z_s, r);
}

std::vector<OutlierPatch> default_outlier_patches(Index size) {
  if (size < 64) return {};
  const double off = kPi / 2.0;
  return {{size / 4, size / 4, 16, off},
          {size / 2, 5 * size / 8, 16, off},
          {3 * size / 4, 3 * size / 8, 16, off}};
}

NoiseStats empirical_noise_stats(const SceneBundle& bundle) {
  // Signal term theta o u = amplitude o exp(j(phi_m - phi_topo)); the noise
  // term is e = theta o u o (exp(-j phi_noise) - 1).
  double signal_power = 0.0, noise_power = 0.0;
  Complex cross{};
  double power_m = 0.0, power_s = 0.0;
  for (Index i = 0; i < bundle.z_m.size(); ++i) {
    const double a = bundle.amplitude.data()[i];
    const double pn = bundle.phi_noise.data()[i];
    signal_power += a * a;
    noise_power += a * a * std::norm(std::polar(1.0, -pn) - 1.0);
    const Complex zm = bundle.z_m.data()[i];
    const Complex zs = bundle.z_s.data()[i];
    cross += zm * std::conj(zs) * std::polar(1.0, -bundle.phi_topo.data()[i]);
    power_m += std::norm(zm);
    power_s += std::norm(zs);
  }
  NoiseStats out;
  out.snr_db = noise_power == 0.0 ? std::numeric_limits<double>::infinity()
                                  : 10.0 * std::log10(signal_power / noise_power);
  const double denom = std::sqrt(power_m * power_s);
  out.coherence = denom == 0.0 ? 0.0 : std::abs(cross) / denom;
  return out;
}

}  // namespace ncb
