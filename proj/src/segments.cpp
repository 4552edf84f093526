#include "lsat/segments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lsat/error.hpp"

namespace lsat::segments {

namespace {

double interpolate(const std::vector<SeriesPoint>& points, double when) {
  auto hi = std::lower_bound(points.begin(), points.end(), when,
                             [](const SeriesPoint& p, double t) { return p.timestamp < t; });
  if (hi == points.end()) return points.back().intensity;
  if (hi->timestamp == when || hi == points.begin()) return hi->intensity;
  const auto lo = std::prev(hi);
  const double f = (when - lo->timestamp) / (hi->timestamp - lo->timestamp);
  return lo->intensity + f * (hi->intensity - lo->intensity);
}

bool degenerate(std::span<const double> p) {
  if (p.empty()) return true;
  const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  return *lo == *hi;
}

void require_profile(std::span<const double> p, std::size_t which) {
  if (degenerate(p)) {
    throw Error(ErrorCode::DegenerateProfile, "segment " + std::to_string(which) + " has zero variance");
  }
}

std::vector<double> z_normalize(std::span<const double> p) {
  const double n = static_cast<double>(p.size());
  double mean = 0.0;
  for (double v : p) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : p) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  std::vector<double> z(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) z[i] = (p[i] - mean) / sd;
  return z;
}

}  // namespace

std::vector<IsochronousSegment> segment_series(const TimeSeries& series, double window,
                                               std::size_t profile_length) {
  if (series.points.empty()) throw Error(ErrorCode::EmptySeries, "series '" + series.id + "' is empty");
  if (!(window > 0.0) || !std::isfinite(window)) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  if (profile_length < 2) throw Error(ErrorCode::InvalidArgument, "profile length must be at least 2");
  series.validate();

  const double first = series.points.front().timestamp;
  const double last = series.points.back().timestamp;
  auto count = static_cast<std::size_t>(std::floor((last - first) / window));
  while (first + static_cast<double>(count + 1) * window <= last) ++count;
  while (count > 0 && first + static_cast<double>(count) * window > last) --count;
  if (count == 0) {
    throw Error(ErrorCode::WindowTooLarge, "no full window of " + std::to_string(window) + " s fits in '" +
                                               series.id + "'");
  }

  std::vector<IsochronousSegment> out;
  out.reserve(count);
  const double spacing = window / static_cast<double>(profile_length - 1);
  for (std::size_t k = 0; k < count; ++k) {
    IsochronousSegment seg;
    seg.series_id = series.id;
    seg.index = k;
    seg.start = first + static_cast<double>(k) * window;
    seg.duration = window;
    seg.profile.resize(profile_length);
    for (std::size_t p = 0; p < profile_length; ++p) {
      seg.profile[p] = interpolate(series.points, seg.start + static_cast<double>(p) * spacing);
    }
    out.push_back(std::move(seg));
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw Error(ErrorCode::DimensionMismatch, "profiles differ in length");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  // sqrt(s * s) == s exactly, so identical profiles correlate at exactly 1.
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<GraphChord> link_chords(std::span<const IsochronousSegment> segments, double threshold,
                                    std::size_t sub_window) {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in [-1, 1]");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    require_profile(segments[i].profile, i);
    if (segments[i].profile.size() != segments.front().profile.size()) {
      throw Error(ErrorCode::DimensionMismatch, "segment profiles differ in length");
    }
  }

  std::vector<GraphChord> chords;
  for (std::size_t a = 0; a < segments.size(); ++a) {
    for (std::size_t b = a + 1; b < segments.size(); ++b) {
      const double r = pearson(segments[a].profile, segments[b].profile);
      if (r >= threshold) chords.push_back({a, b, r, {}});
    }
  }
  for (auto& chord : chords) chord.amplitude = chord_amplitude(chord, segments, sub_window);
  return chords;
}

std::vector<double> chord_amplitude(const GraphChord& chord, std::span<const IsochronousSegment> segments,
                                    std::size_t sub_window) {
  if (chord.a >= segments.size() || chord.b >= segments.size() || chord.a == chord.b) {
    throw Error(ErrorCode::InvalidArgument, "chord endpoints do not reference two distinct segments");
  }
  const auto& pa = segments[chord.a].profile;
  const auto& pb = segments[chord.b].profile;
  if (pa.size() != pb.size()) throw Error(ErrorCode::DimensionMismatch, "profiles differ in length");
  if (sub_window == 0 || pa.size() % sub_window != 0) {
    throw Error(ErrorCode::InvalidArgument, "sub-window must divide the profile length");
  }
  require_profile(pa, chord.a);
  require_profile(pb, chord.b);

  const auto za = z_normalize(pa);
  const auto zb = z_normalize(pb);
  std::vector<double> amplitude(pa.size() / sub_window);
  for (std::size_t w = 0; w < amplitude.size(); ++w) {
    double sq = 0.0;
    for (std::size_t i = w * sub_window; i < (w + 1) * sub_window; ++i) {
      const double d = za[i] - zb[i];
      sq += d * d;
    }
    amplitude[w] = std::sqrt(sq / static_cast<double>(sub_window));
  }
  return amplitude;
}

std::vector<AlternativeWeight> alternative_weights(std::size_t target, std::span<const GraphChord> chords,
                                                   double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");

  std::map<std::size_t, double> raw;  // ordered by partner index
  for (const auto& c : chords) {
    if (c.a != target && c.b != target) continue;
    double mean_amp = 0.0;
    for (double v : c.amplitude) mean_amp += v;
    if (!c.amplitude.empty()) mean_amp /= static_cast<double>(c.amplitude.size());
    raw[c.a == target ? c.b : c.a] += 1.0 / (epsilon + mean_amp);
  }
  if (raw.empty()) throw Error(ErrorCode::NoChords, "segment " + std::to_string(target) + " has no chords");

  double total = 0.0;
  for (const auto& [_, w] : raw) total += w;
  std::vector<AlternativeWeight> out;
  out.reserve(raw.size());
  for (const auto& [partner, w] : raw) out.push_back({partner, w / total});
  return out;
}

std::vector<double> predict_alternative(std::size_t target, std::span<const GraphChord> chords,
                                        std::span<const IsochronousSegment> segments, double epsilon) {
  if (target >= segments.size()) throw Error(ErrorCode::InvalidArgument, "target segment out of range");
  const auto weights = alternative_weights(target, chords, epsilon);

  const std::size_t length = segments[target].profile.size();
  std::vector<double> out(length, 0.0);
  std::vector<double> lo(length, INFINITY);
  std::vector<double> hi(length, -INFINITY);
  for (const auto& [partner, w] : weights) {
    if (partner >= segments.size()) throw Error(ErrorCode::InvalidArgument, "chord partner out of range");
    const auto& p = segments[partner].profile;
    if (p.size() != length) throw Error(ErrorCode::DimensionMismatch, "profiles differ in length");
    for (std::size_t i = 0; i < length; ++i) {
      out[i] += w * p[i];
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  for (std::size_t i = 0; i < length; ++i) out[i] = std::clamp(out[i], lo[i], hi[i]);
  return out;
}

}  // namespace lsat::segments
