#pragma once

#include <string>
#include <vector>

namespace lsat {

struct SeriesPoint {
  double timestamp;  // s since the Unix epoch (or any fixed origin)
  double intensity;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// Intensity series for one city. Timestamps strictly increasing.
struct TimeSeries {
  std::string id;
  std::vector<SeriesPoint> points;

  /// Throws ParseError when timestamps are not strictly increasing or values not finite.
  void validate() const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

}  // namespace lsat
