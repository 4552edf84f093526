#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lsat/series.hpp"

namespace lsat::segments {

inline constexpr std::size_t kDefaultProfileLength = 64;
inline constexpr std::size_t kDefaultSubWindow = 8;

/// Equal-duration window of a series, resampled to a fixed-length profile.
struct IsochronousSegment {
  std::string series_id;
  std::size_t index = 0;
  double start = 0.0;     // s
  double duration = 0.0;  // s
  std::vector<double> profile;

  friend bool operator==(const IsochronousSegment&, const IsochronousSegment&) = default;
};

/// Similarity link between segments[a] and segments[b], a < b.
struct GraphChord {
  std::size_t a = 0;
  std::size_t b = 0;
  double similarity = 0.0;  // Pearson correlation of the two profiles
  std::vector<double> amplitude;

  friend bool operator==(const GraphChord&, const GraphChord&) = default;
};

struct AlternativeWeight {
  std::size_t partner;  // segment index
  double weight;        // normalized, sums to 1 over partners
};

/// Consecutive non-overlapping windows from the first timestamp; a trailing partial
/// window is dropped.
std::vector<IsochronousSegment> segment_series(const TimeSeries& series, double window,
                                               std::size_t profile_length = kDefaultProfileLength);

double pearson(std::span<const double> x, std::span<const double> y);

/// One chord per unordered pair whose correlation is >= threshold, ordered
/// lexicographically by (a, b). Amplitude is filled with chord_amplitude(.., sub_window).
std::vector<GraphChord> link_chords(std::span<const IsochronousSegment> segments, double threshold,
                                    std::size_t sub_window = kDefaultSubWindow);

/// Windowed RMS of z(a) - z(b); one entry per sub-window of `sub_window` samples.
std::vector<double> chord_amplitude(const GraphChord& chord, std::span<const IsochronousSegment> segments,
                                    std::size_t sub_window);

/// Normalized weights 1 / (epsilon + mean amplitude) over chord partners of `target`.
std::vector<AlternativeWeight> alternative_weights(std::size_t target, std::span<const GraphChord> chords,
                                                   double epsilon);

/// Weighted mean of the partner profiles of segments[target].
std::vector<double> predict_alternative(std::size_t target, std::span<const GraphChord> chords,
                                        std::span<const IsochronousSegment> segments, double epsilon);

}  // namespace lsat::segments
