#include "lsat/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lsat/error.hpp"

namespace lsat::store {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kColumns[] = {"city_id",      "timestamp",    "temperature_c",
                                         "pressure_hpa", "humidity_pct", "irradiance_wm2"};

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    out.push_back(line.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

template <typename T>
std::optional<T> parse_int(std::string_view text) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void parse_error(const fs::path& path, std::size_t line, const std::string& why) {
  throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line) + ": " + why);
}

void check_header(const fs::path& path, std::string_view header) {
  if (header == kCsvHeader) return;
  const auto got = split(header, ',');
  for (auto column : kColumns) {
    if (std::find(got.begin(), got.end(), column) == got.end()) {
      throw Error(ErrorCode::SchemaError, path.string() + ": missing column '" + std::string(column) + "'");
    }
  }
  throw Error(ErrorCode::SchemaError, path.string() + ": header must be exactly '" + std::string(kCsvHeader) + "'");
}

// ---- store file plumbing -------------------------------------------------

std::string header_line(std::string_view kind) {
  return std::string(kFormatName) + " v" + std::to_string(kFormatVersion) + " " + std::string(kind) + "\n";
}

struct StoreFile {
  int version = 0;
  std::vector<std::string> records;
};

StoreFile open_store(const fs::path& path, std::string_view kind) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::CorruptRecord, path.string() + ": empty store file");
  const auto tokens = split(line, ' ');
  if (tokens.size() != 3 || tokens[0] != kFormatName || tokens[1].size() < 2 || tokens[1][0] != 'v') {
    throw Error(ErrorCode::CorruptRecord, path.string() + ": not an lsat store");
  }
  const auto version = parse_int<int>(tokens[1].substr(1));
  if (!version) throw Error(ErrorCode::CorruptRecord, path.string() + ": unreadable version");
  if (*version != kFormatVersion) {
    throw Error(ErrorCode::VersionMismatch, path.string() + ": version " + std::to_string(*version) +
                                                " is not supported (expected " + std::to_string(kFormatVersion) + ")");
  }
  if (tokens[2] != kind) {
    throw Error(ErrorCode::SchemaError, path.string() + ": store kind '" + std::string(tokens[2]) + "', expected '" +
                                            std::string(kind) + "'");
  }
  StoreFile file;
  file.version = *version;
  while (std::getline(in, line)) {
    if (!line.empty()) file.records.push_back(line);
  }
  return file;
}

[[noreturn]] void corrupt(const fs::path& path, std::size_t index, const std::string& why) {
  throw Error(ErrorCode::CorruptRecord, path.string() + ": record " + std::to_string(index) + ": " + why);
}

json dims_json(const signature::Dims& d) { return json::array({d.intensity, d.trajectory, d.channels}); }

signature::Dims dims_from(const json& j) {
  return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>(), j.at(2).get<std::size_t>()};
}

std::string mask_string(std::span<const std::uint8_t> mask) {
  std::string s(mask.size(), '0');
  for (std::size_t k = 0; k < mask.size(); ++k) s[k] = mask[k] ? '1' : '0';
  return s;
}

std::vector<std::uint8_t> mask_from(const std::string& s) {
  std::vector<std::uint8_t> mask(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] != '0' && s[k] != '1') throw Error(ErrorCode::ParseError, "mask must be a 0/1 string");
    mask[k] = s[k] == '1' ? 1 : 0;
  }
  return mask;
}

// Runs `parse` and converts any failure into CorruptRecord for `index`.
template <typename F>
void parse_record(const fs::path& path, std::size_t index, F&& parse) {
  try {
    parse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptRecord) throw;
    corrupt(path, index, e.what());
  } catch (const std::exception& e) {
    corrupt(path, index, e.what());
  }
}

}  // namespace

std::optional<double> parse_iso8601(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  const auto year = parse_int<int>(text.substr(0, 4));
  const auto month = parse_int<unsigned>(text.substr(5, 2));
  const auto day = parse_int<unsigned>(text.substr(8, 2));
  const auto hour = parse_int<int>(text.substr(11, 2));
  const auto minute = parse_int<int>(text.substr(14, 2));
  const auto second = parse_int<int>(text.substr(17, 2));
  if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*year}, std::chrono::month{*month}, std::chrono::day{*day}};
  if (!ymd.ok() || *hour > 23 || *minute > 59 || *second > 60) return std::nullopt;
  const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
  return static_cast<double>(days) * 86400.0 + *hour * 3600.0 + *minute * 60.0 + *second;
}

std::string format_iso8601(double epoch_seconds) {
  const auto total = static_cast<long long>(std::floor(epoch_seconds));
  auto days = total / 86400;
  auto rem = total % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), rem / 3600, (rem / 60) % 60,
                rem % 60);
  return buf;
}

std::vector<WeatherSample> read_weather_csv(const fs::path& path) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::SchemaError, path.string() + ": missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  check_header(path, line);

  std::vector<WeatherSample> out;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != std::size(kColumns)) {
      parse_error(path, number, "expected " + std::to_string(std::size(kColumns)) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    WeatherSample s;
    s.city_id = std::string(fields[0]);
    if (s.city_id.empty()) parse_error(path, number, "empty city_id");
    const auto ts = parse_iso8601(fields[1]);
    if (!ts) parse_error(path, number, "timestamp '" + std::string(fields[1]) + "' is not YYYY-MM-DDTHH:MM:SSZ");
    s.timestamp = *ts;
    double* targets[] = {&s.temperature_c, &s.pressure_hpa, &s.humidity_pct, &s.irradiance_wm2};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto v = parse_double(fields[k + 2]);
      if (!v) parse_error(path, number, std::string(kColumns[k + 2]) + " '" + std::string(fields[k + 2]) + "' is not a number");
      *targets[k] = *v;
    }
    if (!(s.pressure_hpa > 0.0)) parse_error(path, number, "pressure_hpa must be > 0");
    if (s.humidity_pct < 0.0 || s.humidity_pct > 100.0) parse_error(path, number, "humidity_pct outside [0, 100]");
    if (s.irradiance_wm2 < 0.0) parse_error(path, number, "irradiance_wm2 must be >= 0");
    out.push_back(std::move(s));
  }
  return out;
}

void write_weather_csv(const fs::path& path, const std::vector<WeatherSample>& samples) {
  std::string text(kCsvHeader);
  text += '\n';
  for (const auto& s : samples) {
    text += s.city_id + ',' + format_iso8601(s.timestamp) + ',' + shortest(s.temperature_c) + ',' +
            shortest(s.pressure_hpa) + ',' + shortest(s.humidity_pct) + ',' + shortest(s.irradiance_wm2) + '\n';
  }
  write_file_atomic(path, text);
}

std::vector<TimeSeries> ingest_csv(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (fs::exists(path)) {
    files.push_back(path);
  } else {
    throw Error(ErrorCode::IoError, path.string() + " does not exist");
  }

  std::map<std::string, std::vector<SeriesPoint>> by_city;
  for (const auto& file : files) {
    for (const auto& s : read_weather_csv(file)) by_city[s.city_id].push_back({s.timestamp, s.irradiance_wm2});
  }

  std::vector<TimeSeries> out;
  out.reserve(by_city.size());
  for (auto& [city, points] : by_city) {
    std::stable_sort(points.begin(), points.end(),
                     [](const SeriesPoint& a, const SeriesPoint& b) { return a.timestamp < b.timestamp; });
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].timestamp == points[i - 1].timestamp) {
        throw Error(ErrorCode::DuplicateTimestamp,
                    "city '" + city + "' repeats timestamp " + format_iso8601(points[i].timestamp));
      }
    }
    out.push_back({city, std::move(points)});
  }
  return out;
}

// ---- save ------------------------------------------------------------------

void save_store(const SignatureStore& store, const fs::path& path) {
  std::string text = header_line("signature");
  for (const auto& [id, rec] : store.records) {
    const auto values = rec.tensor.values();
    json j = {{"id", id},
              {"city", rec.city},
              {"time_begin", rec.time_begin},
              {"time_end", rec.time_end},
              {"dims", dims_json(rec.tensor.dims())},
              {"values", std::vector<double>(values.begin(), values.end())},
              {"mask", mask_string(rec.tensor.mask())}};
    text += j.dump() + '\n';
  }
  write_file_atomic(path, text);
}

void save_store(const SegmentStore& store, const fs::path& path) {
  std::string text = header_line("segment");
  for (const auto& s : store.segments) {
    json j = {{"kind", "segment"}, {"series_id", s.series_id}, {"index", s.index},
              {"start", s.start},  {"duration", s.duration},   {"profile", s.profile}};
    text += j.dump() + '\n';
  }
  for (const auto& c : store.chords) {
    json j = {{"kind", "chord"}, {"a", c.a}, {"b", c.b}, {"similarity", c.similarity}, {"amplitude", c.amplitude}};
    text += j.dump() + '\n';
  }
  if (store.aggregate) {
    const auto& agg = *store.aggregate;
    json j = {{"kind", "aggregate"}, {"dims", dims_json(agg.dims)}, {"count", agg.count}, {"values", agg.values}};
    text += j.dump() + '\n';
  }
  write_file_atomic(path, text);
}

void save_store(const SeriesStore& store, const fs::path& path) {
  std::string text = header_line("series");
  for (const auto& s : store.series) {
    std::vector<double> ts(s.points.size());
    std::vector<double> iv(s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      ts[i] = s.points[i].timestamp;
      iv[i] = s.points[i].intensity;
    }
    json j = {{"id", s.id}, {"timestamps", ts}, {"intensity", iv}};
    text += j.dump() + '\n';
  }
  write_file_atomic(path, text);
}

// ---- load ------------------------------------------------------------------

SignatureStore load_signature_store(const fs::path& path) {
  const StoreFile file = open_store(path, "signature");
  SignatureStore store;
  store.format_version = file.version;
  for (std::size_t i = 0; i < file.records.size(); ++i) {
    parse_record(path, i, [&] {
      const json j = json::parse(file.records[i]);
      SignatureRecord rec;
      rec.city = j.at("city").get<std::string>();
      rec.time_begin = j.at("time_begin").get<double>();
      rec.time_end = j.at("time_end").get<double>();
      rec.tensor = signature::SignatureTensor(dims_from(j.at("dims")), j.at("values").get<std::vector<double>>(),
                                              mask_from(j.at("mask").get<std::string>()));
      const auto id = j.at("id").get<std::string>();
      if (!store.records.emplace(id, std::move(rec)).second) corrupt(path, i, "duplicate id '" + id + "'");
    });
  }
  return store;
}

SegmentStore load_segment_store(const fs::path& path) {
  const StoreFile file = open_store(path, "segment");
  SegmentStore store;
  store.format_version = file.version;
  for (std::size_t i = 0; i < file.records.size(); ++i) {
    parse_record(path, i, [&] {
      const json j = json::parse(file.records[i]);
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "segment") {
        segments::IsochronousSegment s;
        s.series_id = j.at("series_id").get<std::string>();
        s.index = j.at("index").get<std::size_t>();
        s.start = j.at("start").get<double>();
        s.duration = j.at("duration").get<double>();
        s.profile = j.at("profile").get<std::vector<double>>();
        store.segments.push_back(std::move(s));
      } else if (kind == "chord") {
        segments::GraphChord c;
        c.a = j.at("a").get<std::size_t>();
        c.b = j.at("b").get<std::size_t>();
        c.similarity = j.at("similarity").get<double>();
        c.amplitude = j.at("amplitude").get<std::vector<double>>();
        if (c.a >= c.b || c.b >= store.segments.size()) corrupt(path, i, "chord endpoints do not reference segments");
        store.chords.push_back(std::move(c));
      } else if (kind == "aggregate") {
        if (store.aggregate) corrupt(path, i, "more than one aggregate");
        signature::AggregateSignature agg;
        agg.dims = dims_from(j.at("dims"));
        agg.count = j.at("count").get<std::size_t>();
        agg.values = j.at("values").get<std::vector<double>>();
        if (agg.values.size() != agg.dims.size()) corrupt(path, i, "aggregate values do not match dims");
        store.aggregate = std::move(agg);
      } else {
        corrupt(path, i, "unknown record kind '" + kind + "'");
      }
    });
  }
  return store;
}

SeriesStore load_series_store(const fs::path& path) {
  const StoreFile file = open_store(path, "series");
  SeriesStore store;
  store.format_version = file.version;
  for (std::size_t i = 0; i < file.records.size(); ++i) {
    parse_record(path, i, [&] {
      const json j = json::parse(file.records[i]);
      TimeSeries s;
      s.id = j.at("id").get<std::string>();
      const auto ts = j.at("timestamps").get<std::vector<double>>();
      const auto iv = j.at("intensity").get<std::vector<double>>();
      if (ts.size() != iv.size()) corrupt(path, i, "timestamps and intensity differ in length");
      s.points.reserve(ts.size());
      for (std::size_t k = 0; k < ts.size(); ++k) s.points.push_back({ts[k], iv[k]});
      s.validate();
      store.series.push_back(std::move(s));
    });
  }
  return store;
}

// ---- files -----------------------------------------------------------------

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path lock_path = path.string() + ".lock";
  const int lock_fd = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
  if (lock_fd < 0) throw Error(ErrorCode::IoError, "cannot create lock " + lock_path.string());
  struct LockGuard {
    int fd;
    ~LockGuard() {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  } guard{lock_fd};
  if (::flock(lock_fd, LOCK_EX) != 0) throw Error(ErrorCode::IoError, "cannot lock " + lock_path.string());

  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string());
  }
}

fs::path default_data_dir() {
  const char* env = std::getenv("LSAT_DATA_DIR");
  return (env != nullptr && *env != '\0') ? fs::path(env) : fs::path("data");
}

// ---- provider --------------------------------------------------------------

FileProvider::FileProvider(ProviderConfig config) : config_(std::move(config)) {
  if (config_.max_requests == 0) throw Error(ErrorCode::InvalidArgument, "provider needs max_requests >= 1");
}

std::vector<WeatherSample> FileProvider::fetch(const std::string& city_id, const TimeRange& range) {
  const fs::path file = config_.directory / (city_id + ".csv");
  if (city_id.empty() || city_id.find('/') != std::string::npos || !fs::is_regular_file(file)) {
    throw Error(ErrorCode::CityNotFound, "no fixture for city '" + city_id + "'");
  }
  ++reads_;  // one read per fetch, within any max_requests >= 1
  std::vector<WeatherSample> out;
  for (auto& s : read_weather_csv(file)) {
    if (s.city_id == city_id && s.timestamp >= range.begin && s.timestamp < range.end) out.push_back(std::move(s));
  }
  if (out.empty()) throw Error(ErrorCode::RangeEmpty, "city '" + city_id + "' has no samples in range");
  std::stable_sort(out.begin(), out.end(),
                   [](const WeatherSample& a, const WeatherSample& b) { return a.timestamp < b.timestamp; });
  return out;
}

std::vector<WeatherSample> provider_fetch(const ProviderConfig& provider, const std::string& city_id,
                                          const TimeRange& range) {
  FileProvider client(provider);
  return client.fetch(city_id, range);
}

}  // namespace lsat::store
