#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lsat::propagation {

inline constexpr double kSpeedOfLight = 2.99792458e8;

struct PathSample {
  double position;  // m
  double strain;    // dimensionless h
};

/// Light path of length L sampled at strictly increasing positions 0 = x_0 < ... < x_n = L.
struct PhasePath {
  double length = 0.0;
  double omega0 = 0.0;  // rad/s
  std::vector<PathSample> samples;

  /// Throws BadPath when any invariant fails.
  void validate() const;
};

struct ProfileSample {
  double position;      // m
  double refractivity;  // N-units, (n - 1) * 1e6
};

struct AtmosphericProfile {
  std::vector<ProfileSample> samples;

  void validate() const;
};

struct PhaseShift {
  double space = 0.0;
  double atmospheric = 0.0;
  double earth = 0.0;
  double total = 0.0;
};

/// (omega0 / c) * integral of (1 + h(x)) dx, composite trapezoid over the samples.
double phase_space(const PhasePath& path, double c = kSpeedOfLight);

/// Smith-Weintraub refractivity: 77.6 P/T - 5.6 e/T + 3.75e5 e/T^2.
double refractivity(double temperature_k, double pressure_hpa, double vapor_pressure_hpa);

/// (omega0 / c) * 1e-6 * integral of N(x) dx.
double phase_atmospheric(double omega0, const AtmosphericProfile& profile,
                         double c = kSpeedOfLight);

/// n zero-mean Gaussian draws with standard deviation sigma; deterministic in seed.
std::vector<double> phase_earth_noise(std::uint64_t seed, double sigma, std::size_t n);

PhaseShift total_phase(double space, double atmospheric, double earth);

}  // namespace lsat::propagation
