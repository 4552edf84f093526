#pragma once

#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "lsat/series.hpp"

namespace lsat::spectral {

inline constexpr double kFloorDb = -300.0;

enum class Window { Rectangular, Hann };

/// Short-time power spectrum in dB relative to the global maximum (0 dB ceiling,
/// clamped at kFloorDb). frames[f][k] for f in [0, F), k in [0, window_length/2].
struct Spectrogram {
  std::vector<std::vector<double>> frames;
  double start_time = 0.0;  // s, time of the first sample
  double frame_hop = 0.0;   // s
  double bin_width = 0.0;   // Hz
  std::size_t window_length = 0;

  std::size_t frame_count() const noexcept { return frames.size(); }
  std::size_t bin_count() const noexcept { return frames.empty() ? 0 : frames.front().size(); }
};

/// X[k] = sum_n x[n] exp(-2 pi i k n / N).
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> series);

/// floor((n - window_length) / hop) + 1, or 0 when the window does not fit.
std::size_t frame_count(std::size_t n, std::size_t window_length, std::size_t hop);

std::vector<double> window_coefficients(Window window, std::size_t length);

/// Full complex spectrum of every windowed frame of a uniformly sampled signal.
std::vector<std::vector<std::complex<double>>> frame_spectra(std::span<const double> samples,
                                                             std::size_t window_length, std::size_t hop,
                                                             Window window);

Spectrogram spectrogram(const TimeSeries& series, std::size_t window_length, std::size_t hop,
                        Window window = Window::Hann);

/// First row: bin frequencies (Hz); first column: frame start times (s); body: dB
/// values with 6 significant digits. The top-left cell is empty.
void write_csv(const Spectrogram& spec, std::ostream& out);

}  // namespace lsat::spectral
