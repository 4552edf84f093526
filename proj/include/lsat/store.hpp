#pragma once

// Versioned line-delimited stores for signatures (Theta), segments/aggregates (Phi) and
// ingested series, plus CSV ingestion of meteorological samples.
//
// Every store file starts with `lsat-store v<version> <kind>`; each following line is one
// JSON record. Doubles are written in shortest round-trip form so load(save(s)) == s.

#include <filesystem>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsat/segments.hpp"
#include "lsat/series.hpp"
#include "lsat/signature.hpp"

namespace lsat::store {

inline constexpr int kFormatVersion = 1;
inline constexpr std::string_view kFormatName = "lsat-store";
inline constexpr std::string_view kCsvHeader =
    "city_id,timestamp,temperature_c,pressure_hpa,humidity_pct,irradiance_wm2";

struct SignatureRecord {
  std::string city;
  double time_begin = 0.0;  // s since epoch
  double time_end = 0.0;
  signature::SignatureTensor tensor;

  friend bool operator==(const SignatureRecord&, const SignatureRecord&) = default;
};

/// Theta: trajectory signatures keyed by id.
struct SignatureStore {
  int format_version = kFormatVersion;
  std::map<std::string, SignatureRecord> records;

  friend bool operator==(const SignatureStore&, const SignatureStore&) = default;
};

/// Phi: isochronous segments, their chords and the optional aggregate signature.
struct SegmentStore {
  int format_version = kFormatVersion;
  std::vector<segments::IsochronousSegment> segments;
  std::vector<segments::GraphChord> chords;
  std::optional<signature::AggregateSignature> aggregate;

  friend bool operator==(const SegmentStore&, const SegmentStore&) = default;
};

/// Ingested intensity series, one per city, sorted by id.
struct SeriesStore {
  int format_version = kFormatVersion;
  std::vector<TimeSeries> series;

  friend bool operator==(const SeriesStore&, const SeriesStore&) = default;
};

struct WeatherSample {
  std::string city_id;
  double timestamp = 0.0;  // s since epoch, UTC
  double temperature_c = 0.0;
  double pressure_hpa = 0.0;
  double humidity_pct = 0.0;
  double irradiance_wm2 = 0.0;

  friend bool operator==(const WeatherSample&, const WeatherSample&) = default;
};

/// Half-open [begin, end) in seconds since epoch.
struct TimeRange {
  double begin = -std::numeric_limits<double>::infinity();
  double end = std::numeric_limits<double>::infinity();
};

/// Parses `YYYY-MM-DDTHH:MM:SSZ`. Returns nullopt on malformed input.
std::optional<double> parse_iso8601(std::string_view text);
std::string format_iso8601(double epoch_seconds);

/// Reads one weather CSV. Errors: IoError, SchemaError (naming the column),
/// ParseError (with line number).
std::vector<WeatherSample> read_weather_csv(const std::filesystem::path& path);
void write_weather_csv(const std::filesystem::path& path, const std::vector<WeatherSample>& samples);

/// Groups samples by city (intensity = irradiance), sorted by city and timestamp.
/// `path` may be a CSV file or a directory whose *.csv files are read in name order.
/// Throws DuplicateTimestamp when a city repeats a timestamp.
std::vector<TimeSeries> ingest_csv(const std::filesystem::path& path);

void save_store(const SignatureStore& store, const std::filesystem::path& path);
void save_store(const SegmentStore& store, const std::filesystem::path& path);
void save_store(const SeriesStore& store, const std::filesystem::path& path);

SignatureStore load_signature_store(const std::filesystem::path& path);
SegmentStore load_segment_store(const std::filesystem::path& path);
SeriesStore load_series_store(const std::filesystem::path& path);

/// Writes `content` to a sibling temp file under an exclusive advisory lock, then renames
/// it over `path`. Readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// $LSAT_DATA_DIR, or ./data when unset.
std::filesystem::path default_data_dir();

struct ProviderConfig {
  std::filesystem::path directory;  // one <city_id>.csv per city
  std::size_t max_requests = 1;
};

/// Source of weather samples. The built-in implementation is file-backed; network
/// providers plug in behind the same interface.
class WeatherProvider {
 public:
  virtual ~WeatherProvider() = default;
  virtual std::vector<WeatherSample> fetch(const std::string& city_id, const TimeRange& range) = 0;
};

class FileProvider final : public WeatherProvider {
 public:
  explicit FileProvider(ProviderConfig config);

  /// Samples of city_id within range, sorted by timestamp. Throws CityNotFound or RangeEmpty.
  std::vector<WeatherSample> fetch(const std::string& city_id, const TimeRange& range) override;

  std::size_t reads() const noexcept { return reads_; }

 private:
  ProviderConfig config_;
  std::size_t reads_ = 0;
};

std::vector<WeatherSample> provider_fetch(const ProviderConfig& provider, const std::string& city_id,
                                          const TimeRange& range);

}  // namespace lsat::store
