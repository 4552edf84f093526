#include "lsat/propagation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lsat/error.hpp"

namespace lsat::propagation {

namespace {

// Composite trapezoid over (x_i, f_i) pairs in ascending order.
template <typename Sample, typename Value>
double trapezoid(const std::vector<Sample>& samples, Value value) {
  double sum = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double dx = samples[i].position - samples[i - 1].position;
    sum += 0.5 * dx * (value(samples[i - 1]) + value(samples[i]));
  }
  return sum;
}

void bad_path(const std::string& why) { throw Error(ErrorCode::BadPath, why); }

}  // namespace

void PhasePath::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) bad_path("length must be positive");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) bad_path("omega0 must be positive");
  if (samples.size() < 2) bad_path("at least two samples are required");
  if (samples.front().position != 0.0) bad_path("first sample must sit at position 0");
  if (samples.back().position != length) bad_path("last sample must sit at position L");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].strain)) bad_path("strain sample " + std::to_string(i) + " is not finite");
    if (i > 0 && !(samples[i].position > samples[i - 1].position)) {
      bad_path("positions must be strictly increasing at sample " + std::to_string(i));
    }
  }
}

void AtmosphericProfile::validate() const {
  if (samples.size() < 2) throw Error(ErrorCode::BadProfile, "at least two samples are required");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.position) || !std::isfinite(s.refractivity) || s.refractivity < 0.0) {
      throw Error(ErrorCode::BadProfile, "invalid refractivity at sample " + std::to_string(i));
    }
    if (i > 0 && !(s.position > samples[i - 1].position)) {
      throw Error(ErrorCode::BadProfile, "positions must be strictly increasing");
    }
  }
}

double phase_space(const PhasePath& path, double c) {
  path.validate();
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "c must be positive");
  const double optical_length = trapezoid(path.samples, [](const PathSample& s) { return 1.0 + s.strain; });
  return (path.omega0 / c) * optical_length;
}

double refractivity(double temperature_k, double pressure_hpa, double vapor_pressure_hpa) {
  if (!(temperature_k > 0.0) || !(pressure_hpa >= 0.0) || !(vapor_pressure_hpa >= 0.0)) {
    throw Error(ErrorCode::NonPhysical, "need T > 0, P >= 0, e >= 0");
  }
  const double t = temperature_k;
  const double e = vapor_pressure_hpa;
  return 77.6 * pressure_hpa / t - 5.6 * e / t + 3.75e5 * e / (t * t);
}

double phase_atmospheric(double omega0, const AtmosphericProfile& profile, double c) {
  profile.validate();
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "c must be positive");
  const double integral = trapezoid(profile.samples, [](const ProfileSample& s) { return s.refractivity; });
  return (omega0 / c) * 1e-6 * integral;
}

std::vector<double> phase_earth_noise(std::uint64_t seed, double sigma, std::size_t n) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be non-negative");
  std::vector<double> out(n, 0.0);
  if (sigma == 0.0) return out;

  // Box-Muller over mt19937_64 so the sequence is identical on every standard library.
  std::mt19937_64 engine(seed);
  auto uniform = [&engine] {
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
  };
  for (std::size_t i = 0; i < n; i += 2) {
    const double radius = sigma * std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    out[i] = radius * std::cos(angle);
    if (i + 1 < n) out[i + 1] = radius * std::sin(angle);
  }
  return out;
}

PhaseShift total_phase(double space, double atmospheric, double earth) {
  if (!std::isfinite(space) || !std::isfinite(atmospheric) || !std::isfinite(earth)) {
    throw Error(ErrorCode::NonFinite, "phase terms must be finite");
  }
  PhaseShift shift{space, atmospheric, earth, 0.0};
  shift.total = space + atmospheric + earth;
  return shift;
}

}  // namespace lsat::propagation
