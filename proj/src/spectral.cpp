#include "lsat/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "lsat/error.hpp"

namespace lsat::spectral {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> series) {
  if (series.empty()) throw Error(ErrorCode::InvalidArgument, "dft needs at least one sample");
  const int n = static_cast<int>(series.size());
  std::vector<std::complex<double>> in(series.begin(), series.end());
  std::vector<std::complex<double>> out(series.size());

  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE));
  }
  if (!plan) throw Error(ErrorCode::InvalidArgument, "fftw could not plan a transform of length " + std::to_string(n));
  fftw_execute(plan.get());
  return out;
}

std::size_t frame_count(std::size_t n, std::size_t window_length, std::size_t hop) {
  if (window_length == 0 || hop == 0 || window_length > n) return 0;
  return (n - window_length) / hop + 1;
}

std::vector<double> window_coefficients(Window window, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (window == Window::Hann) {
    for (std::size_t i = 0; i < length; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(length)));
    }
  }
  return w;
}

std::vector<std::vector<std::complex<double>>> frame_spectra(std::span<const double> samples,
                                                             std::size_t window_length, std::size_t hop,
                                                             Window window) {
  if (hop == 0) throw Error(ErrorCode::InvalidArgument, "hop must be at least 1");
  if (window_length == 0 || window_length > samples.size()) {
    throw Error(ErrorCode::TooShort, std::to_string(samples.size()) + " samples cannot fill a window of " +
                                         std::to_string(window_length));
  }
  const auto coeffs = window_coefficients(window, window_length);
  const std::size_t frames = frame_count(samples.size(), window_length, hop);

  std::vector<std::vector<std::complex<double>>> out;
  out.reserve(frames);
  std::vector<std::complex<double>> buffer(window_length);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t offset = f * hop;
    for (std::size_t i = 0; i < window_length; ++i) buffer[i] = samples[offset + i] * coeffs[i];
    out.push_back(dft(buffer));
  }
  return out;
}

Spectrogram spectrogram(const TimeSeries& series, std::size_t window_length, std::size_t hop, Window window) {
  const auto& pts = series.points;
  if (pts.size() < 2) throw Error(ErrorCode::TooShort, "series '" + series.id + "' has fewer than two samples");
  series.validate();
  const double dt = pts[1].timestamp - pts[0].timestamp;
  for (std::size_t i = 2; i < pts.size(); ++i) {
    if (std::abs((pts[i].timestamp - pts[i - 1].timestamp) - dt) > 1e-9 * dt) {
      throw Error(ErrorCode::NonUniformSampling, "series '" + series.id + "' spacing changes at sample " +
                                                     std::to_string(i));
    }
  }

  std::vector<double> samples(pts.size());
  std::transform(pts.begin(), pts.end(), samples.begin(), [](const SeriesPoint& p) { return p.intensity; });
  const auto spectra = frame_spectra(samples, window_length, hop, window);

  const std::size_t bins = window_length / 2 + 1;
  Spectrogram spec;
  spec.start_time = pts.front().timestamp;
  spec.frame_hop = static_cast<double>(hop) * dt;
  spec.bin_width = 1.0 / (static_cast<double>(window_length) * dt);
  spec.window_length = window_length;
  spec.frames.assign(spectra.size(), std::vector<double>(bins, 0.0));

  double peak = 0.0;
  for (std::size_t f = 0; f < spectra.size(); ++f) {
    for (std::size_t k = 0; k < bins; ++k) {
      spec.frames[f][k] = std::norm(spectra[f][k]);
      peak = std::max(peak, spec.frames[f][k]);
    }
  }
  for (auto& frame : spec.frames) {
    for (double& p : frame) {
      p = (peak > 0.0 && p > 0.0) ? std::max(kFloorDb, 10.0 * std::log10(p / peak)) : kFloorDb;
    }
  }
  return spec;
}

void write_csv(const Spectrogram& spec, std::ostream& out) {
  for (std::size_t k = 0; k < spec.bin_count(); ++k) out << ',' << shortest(static_cast<double>(k) * spec.bin_width);
  out << '\n';
  char cell[32];
  for (std::size_t f = 0; f < spec.frame_count(); ++f) {
    out << shortest(spec.start_time + static_cast<double>(f) * spec.frame_hop);
    for (double db : spec.frames[f]) {
      std::snprintf(cell, sizeof cell, "%.6g", db);
      out << ',' << cell;
    }
    out << '\n';
  }
}

}  // namespace lsat::spectral
