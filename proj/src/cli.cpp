#include "lsat/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsat/error.hpp"
#include "lsat/inference.hpp"
#include "lsat/propagation.hpp"
#include "lsat/segments.hpp"
#include "lsat/signature.hpp"
#include "lsat/spectral.hpp"
#include "lsat/store.hpp"
#include "lsat/tensors.hpp"

namespace lsat::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kSeriesFile = "series.lsat";
constexpr const char* kSegmentsFile = "segments.lsat";
constexpr const char* kChordsFile = "chords.lsat";
constexpr const char* kSignaturesFile = "signatures.lsat";
constexpr const char* kAggregateFile = "aggregate.lsat";
constexpr const char* kPosteriorFile = "posterior.csv";

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

fs::path or_default(const std::string& flag, const fs::path& data_dir, const char* name) {
  return flag.empty() ? data_dir / name : fs::path(flag);
}

const TimeSeries& find_series(const store::SeriesStore& db, const std::string& id) {
  for (const auto& s : db.series) {
    if (s.id == id) return s;
  }
  throw Error(ErrorCode::CityNotFound, "series '" + id + "' is not in the store");
}

// ---- option bundles ---------------------------------------------------------

struct Common {
  std::string data_dir;
  std::uint64_t seed = 42;

  fs::path dir() const { return data_dir.empty() ? store::default_data_dir() : fs::path(data_dir); }
};

struct IngestOpts {
  std::string in;
  std::string out;
};

struct SegmentOpts {
  std::string in;
  std::string out;
  double window = 86400.0;
  std::size_t profile_length = segments::kDefaultProfileLength;
};

struct ChordOpts {
  std::string in;
  std::string out;
  double threshold = 0.8;
  std::size_t sub_window = segments::kDefaultSubWindow;
  std::string scope = "city";
};

struct SpectrogramOpts {
  std::string in;
  std::string out;
  std::string series;
  std::size_t window = 128;
  std::size_t hop = 64;
  std::string taper = "hann";
};

struct SignatureOpts {
  std::string in;
  std::string out;
  std::size_t bins_i = 8;
  std::size_t bins_d = 8;
  std::size_t channels = 4;
  std::vector<double> zeta;
  double cell_measure = 1.0;
};

struct AggregateOpts {
  std::string signatures;
  std::string chords;
  std::string out;
};

struct PhaseOpts {
  std::string out;
  double length = 1000.0;
  double omega0 = 1.2e15;
  std::size_t samples = 1001;
  double h_plus = 1e-6;
  double strain_wavelength = 1000.0;
  double temperature = 288.15;
  double pressure = 1013.25;
  double vapor = 0.0;
  double sigma = 0.0;
};

struct PosteriorOpts {
  std::string signatures;
  std::string out;
  std::vector<double> obs;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::size_t points = 4001;
  std::optional<double> prior_mean;
  std::optional<double> prior_sigma;
  std::optional<double> noise_sigma;
};

struct PredictOpts {
  std::string in;
  std::string out;
  std::optional<std::size_t> segment;
  double epsilon = 1e-6;
  std::string series;
  std::size_t lags = 3;
  double lambda = 0.1;
};

// ---- subcommands --------------------------------------------------------------

void cmd_ingest(const Common& common, const IngestOpts& o, std::ostream& out) {
  store::SeriesStore db;
  db.series = store::ingest_csv(o.in);
  const fs::path target = (o.out.empty() ? common.dir() : fs::path(o.out)) / kSeriesFile;
  store::save_store(db, target);
  std::size_t samples = 0;
  for (const auto& s : db.series) samples += s.points.size();
  out << "ingested " << db.series.size() << " series, " << samples << " samples -> " << target.string() << '\n';
}

void cmd_segment(const Common& common, const SegmentOpts& o, std::ostream& out) {
  const auto db = store::load_series_store(or_default(o.in, common.dir(), kSeriesFile));
  store::SegmentStore phi;
  for (const auto& s : db.series) {
    auto segs = segments::segment_series(s, o.window, o.profile_length);
    std::move(segs.begin(), segs.end(), std::back_inserter(phi.segments));
  }
  const fs::path target = or_default(o.out, common.dir(), kSegmentsFile);
  store::save_store(phi, target);
  out << "segmented " << db.series.size() << " series into " << phi.segments.size() << " segments -> "
      << target.string() << '\n';
}

void cmd_chords(const Common& common, const ChordOpts& o, std::ostream& out) {
  auto phi = store::load_segment_store(or_default(o.in, common.dir(), kSegmentsFile));
  phi.chords.clear();
  if (o.scope == "all") {
    phi.chords = segments::link_chords(phi.segments, o.threshold, o.sub_window);
  } else {
    // Segments of one city are contiguous; link within each run and offset indices.
    std::size_t begin = 0;
    while (begin < phi.segments.size()) {
      std::size_t end = begin;
      while (end < phi.segments.size() && phi.segments[end].series_id == phi.segments[begin].series_id) ++end;
      const std::span<const segments::IsochronousSegment> group(phi.segments.data() + begin, end - begin);
      for (auto chord : segments::link_chords(group, o.threshold, o.sub_window)) {
        chord.a += begin;
        chord.b += begin;
        phi.chords.push_back(std::move(chord));
      }
      begin = end;
    }
  }
  const fs::path target = or_default(o.out, common.dir(), kChordsFile);
  store::save_store(phi, target);
  out << "linked " << phi.chords.size() << " chords over " << phi.segments.size() << " segments -> "
      << target.string() << '\n';
}

void cmd_spectrogram(const Common& common, const SpectrogramOpts& o, std::ostream& out) {
  const auto db = store::load_series_store(or_default(o.in, common.dir(), kSeriesFile));
  const auto& series = find_series(db, o.series);
  const auto taper = o.taper == "rectangular" ? spectral::Window::Rectangular : spectral::Window::Hann;
  const auto spec = spectral::spectrogram(series, o.window, o.hop, taper);
  std::ostringstream csv;
  spectral::write_csv(spec, csv);
  const fs::path target = o.out.empty() ? common.dir() / ("spectrogram-" + o.series + ".csv") : fs::path(o.out);
  store::write_file_atomic(target, csv.str());
  out << "spectrogram " << spec.frame_count() << " frames x " << spec.bin_count() << " bins -> " << target.string()
      << '\n';
}

// Trajectory coordinate: fraction of the solar day. Channel: day index mod T.
std::vector<signature::Sample> signature_samples(const TimeSeries& s, std::size_t channels) {
  std::vector<signature::Sample> out;
  out.reserve(s.points.size());
  const double origin = s.points.front().timestamp;
  for (const auto& p : s.points) {
    const double day_fraction = std::fmod(p.timestamp, 86400.0) / 86400.0;
    const auto day = static_cast<std::size_t>(std::floor((p.timestamp - origin) / 86400.0));
    out.push_back({p.intensity, day_fraction < 0.0 ? day_fraction + 1.0 : day_fraction, day % channels});
  }
  return out;
}

void cmd_signature(const Common& common, const SignatureOpts& o, std::ostream& out) {
  const auto db = store::load_series_store(or_default(o.in, common.dir(), kSeriesFile));
  const signature::Dims dims{o.bins_i, o.bins_d, o.channels};
  signature::AdjustmentWeights zeta{o.zeta.empty() ? std::vector<double>(o.channels, 1.0) : o.zeta};

  store::SignatureStore theta;
  for (const auto& s : db.series) {
    if (s.points.empty()) continue;
    const auto samples = signature_samples(s, o.channels);
    store::SignatureRecord rec;
    rec.city = s.id;
    rec.time_begin = s.points.front().timestamp;
    rec.time_end = s.points.back().timestamp;
    rec.tensor = signature::assemble_gamma(samples, dims);
    out << s.id << ' ' << num(signature::signature_value(rec.tensor, zeta, o.cell_measure)) << '\n';
    theta.records.emplace(s.id, std::move(rec));
  }
  const fs::path target = or_default(o.out, common.dir(), kSignaturesFile);
  store::save_store(theta, target);
  out << "stored " << theta.records.size() << " signatures -> " << target.string() << '\n';
}

void cmd_aggregate(const Common& common, const AggregateOpts& o, std::ostream& out) {
  const auto theta = store::load_signature_store(or_default(o.signatures, common.dir(), kSignaturesFile));
  std::vector<signature::SignatureTensor> tensors;
  tensors.reserve(theta.records.size());
  for (const auto& [_, rec] : theta.records) tensors.push_back(rec.tensor);

  const fs::path chords_path = or_default(o.chords, common.dir(), kChordsFile);
  store::SegmentStore phi;
  if (!o.chords.empty() || fs::exists(chords_path)) phi = store::load_segment_store(chords_path);
  phi.aggregate = signature::aggregate_phi(tensors);

  const fs::path target = or_default(o.out, common.dir(), kAggregateFile);
  store::save_store(phi, target);
  out << "aggregated " << phi.aggregate->count << " signatures -> " << target.string() << '\n';
}

void cmd_phase(const Common& common, const PhaseOpts& o, std::ostream& out) {
  if (o.samples < 2) throw Error(ErrorCode::InvalidArgument, "--samples must be at least 2");
  propagation::PhasePath path;
  path.length = o.length;
  path.omega0 = o.omega0;
  path.samples.reserve(o.samples);
  for (std::size_t i = 0; i < o.samples; ++i) {
    const double x = (i + 1 == o.samples) ? o.length : o.length * static_cast<double>(i) / static_cast<double>(o.samples - 1);
    path.samples.push_back({x, o.h_plus * std::sin(2.0 * std::numbers::pi * x / o.strain_wavelength)});
  }
  const double n = propagation::refractivity(o.temperature, o.pressure, o.vapor);
  const propagation::AtmosphericProfile profile{{{0.0, n}, {o.length, n}}};

  const double space = propagation::phase_space(path);
  const double atm = propagation::phase_atmospheric(o.omega0, profile);
  const double earth = propagation::phase_earth_noise(common.seed, o.sigma, 1).front();
  const auto shift = propagation::total_phase(space, atm, earth);

  const nlohmann::json j = {{"refractivity", n},
                            {"space", shift.space},
                            {"atmospheric", shift.atmospheric},
                            {"earth", shift.earth},
                            {"total", shift.total},
                            {"seed", common.seed}};
  if (o.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    store::write_file_atomic(o.out, j.dump(2) + "\n");
    out << "phase -> " << o.out << '\n';
  }
}

struct Check {
  std::string name;
  double value;
  double limit;
  bool pass;
};

double max_abs(const tensors::Matrix4& m) {
  double v = 0.0;
  for (const auto& row : m) {
    for (double x : row) v = std::max(v, std::abs(x));
  }
  return v;
}

std::vector<Check> curvature_checks() {
  using namespace tensors;
  std::vector<Check> checks;
  auto add = [&](std::string name, double value, double limit) {
    checks.push_back({std::move(name), value, limit, value <= limit});
  };

  const SpacetimePoint origin{0.3, 0.1, -0.2, 0.4};
  const auto flat = curvature(flat_field(), origin);
  double gamma_flat = 0.0;
  for (const auto& m : christoffel(flat_field(), origin)) gamma_flat = std::max(gamma_flat, max_abs(m));
  add("flat christoffel max", gamma_flat, 1e-8);
  add("flat ricci max", max_abs(flat.ricci), 1e-8);
  add("flat einstein max", max_abs(flat.einstein), 1e-8);

  const double t = 2.0;
  const auto flrw = curvature(flrw_linear_field(), {t, 0, 0, 0}, 1e-3);
  add("flrw scalar rel err", std::abs(flrw.scalar - 6.0 / (t * t)) / (6.0 / (t * t)), 1e-4);
  add("flrw G_tt rel err", std::abs(flrw.einstein[0][0] - 3.0 / (t * t)) / (3.0 / (t * t)), 1e-4);

  const double e1 = std::abs(curvature(flrw_linear_field(), {t, 0, 0, 0}, 1e-2).scalar - 1.5);
  const double e2 = std::abs(curvature(flrw_linear_field(), {t, 0, 0, 0}, 5e-3).scalar - 1.5);
  add("flrw convergence |order-2|", std::abs(std::log2(e1 / e2) - 2.0), 0.3);

  const auto wave = curvature(plane_wave_field(1e-5, 1.0), {0.7, 0.0, 0.0, 0.2}, 1e-3);
  add("tt wave einstein max", max_abs(wave.einstein), 1e-8);

  const auto plane = [](double tt, double z) { return 1e-3 * std::cos(3.0 * (tt - z / 2.0)); };
  double worst_ratio = INFINITY;
  double step = 0.05;
  double prev = std::abs(wave_residual(plane, 0.4, 0.1, step, 2.0));
  for (int k = 0; k < 3; ++k) {
    step /= 2.0;
    const double cur = std::abs(wave_residual(plane, 0.4, 0.1, step, 2.0));
    worst_ratio = std::min(worst_ratio, prev / cur);
    prev = cur;
  }
  add("wave residual 1/min halving ratio", 1.0 / worst_ratio, 1.0 / 3.4);
  return checks;
}

int cmd_curvature_check(std::ostream& out) {
  bool all = true;
  char line[160];
  std::snprintf(line, sizeof line, "%-36s %14s %12s  %s\n", "check", "value", "limit", "result");
  out << line;
  for (const auto& c : curvature_checks()) {
    std::snprintf(line, sizeof line, "%-36s %14.6e %12.3e  %s\n", c.name.c_str(), c.value, c.limit,
                  c.pass ? "PASS" : "FAIL");
    out << line;
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

double gaussian_log(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return -0.5 * z * z;
}

void cmd_posterior(const Common& common, const PosteriorOpts& o, std::ostream& out) {
  std::vector<double> obs = o.obs;
  if (obs.empty()) {
    const auto theta = store::load_signature_store(or_default(o.signatures, common.dir(), kSignaturesFile));
    for (const auto& [_, rec] : theta.records) {
      const std::size_t filled = rec.tensor.populated_count();
      const signature::AdjustmentWeights ones{std::vector<double>(rec.tensor.dims().channels, 1.0)};
      if (filled > 0) obs.push_back(signature::signature_value(rec.tensor, ones) / static_cast<double>(filled));
    }
  }
  if (obs.empty()) throw Error(ErrorCode::EmptyInput, "no observations");
  if (o.points < 2) throw Error(ErrorCode::InvalidArgument, "--points must be at least 2");

  const auto [lo_it, hi_it] = std::minmax_element(obs.begin(), obs.end());
  double mean = 0.0;
  for (double d : obs) mean += d;
  mean /= static_cast<double>(obs.size());
  double sd = 0.0;
  for (double d : obs) sd += (d - mean) * (d - mean);
  sd = obs.size() > 1 ? std::sqrt(sd / static_cast<double>(obs.size() - 1)) : 0.0;

  const double noise = o.noise_sigma.value_or(sd > 0.0 ? sd : 1.0);
  const double gmin = o.grid_min.value_or(*lo_it - 4.0 * noise);
  const double gmax = o.grid_max.value_or(*hi_it + 4.0 * noise);
  if (!(gmax > gmin) || !(noise > 0.0)) throw Error(ErrorCode::InvalidArgument, "need grid max > min and noise > 0");
  const double pmean = o.prior_mean.value_or(0.5 * (gmin + gmax));
  const double psigma = o.prior_sigma.value_or(gmax - gmin);

  std::vector<double> params(o.points);
  std::vector<double> prior(o.points);
  std::vector<double> loglik(o.points, 0.0);
  for (std::size_t i = 0; i < o.points; ++i) {
    params[i] = gmin + (gmax - gmin) * static_cast<double>(i) / static_cast<double>(o.points - 1);
    prior[i] = std::exp(gaussian_log(params[i], pmean, psigma));
    for (double d : obs) loglik[i] += gaussian_log(d, params[i], noise);
  }
  const double peak = *std::max_element(loglik.begin(), loglik.end());
  std::vector<double> lik(o.points);
  for (std::size_t i = 0; i < o.points; ++i) lik[i] = std::exp(loglik[i] - peak);

  const auto grid = inference::grid_posterior(inference::PosteriorGrid::with_prior(params, prior), lik);

  std::string csv = "parameter,prior,likelihood,posterior\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv += num(grid.parameters()[i]) + ',' + num(grid.prior()[i]) + ',' + num(grid.likelihood()[i]) + ',' +
           num(grid.posterior()[i]) + '\n';
  }
  const fs::path target = or_default(o.out, common.dir(), kPosteriorFile);
  store::write_file_atomic(target, csv);
  out << "observations " << obs.size() << "\nposterior mean " << num(grid.posterior_mean()) << "\nposterior variance "
      << num(grid.posterior_variance()) << "\nmap " << num(grid.parameters()[grid.posterior_argmax()]) << "\n-> "
      << target.string() << '\n';
}

void cmd_predict(const Common& common, const PredictOpts& o, std::ostream& out) {
  nlohmann::json j;
  if (o.segment) {
    const auto phi = store::load_segment_store(or_default(o.in, common.dir(), kChordsFile));
    const auto weights = segments::alternative_weights(*o.segment, phi.chords, o.epsilon);
    const auto profile = segments::predict_alternative(*o.segment, phi.chords, phi.segments, o.epsilon);

    // Segment probability p_k: similarity mapped onto [0, 1]; rho_k: the chord weight.
    std::map<std::size_t, double> similarity;
    for (const auto& c : phi.chords) {
      if (c.a == *o.segment) similarity[c.b] = c.similarity;
      if (c.b == *o.segment) similarity[c.a] = c.similarity;
    }
    std::vector<inference::SegmentWeight> entries;
    nlohmann::json partners = nlohmann::json::array();
    for (const auto& w : weights) {
      entries.push_back({w.weight, 0.5 * (1.0 + similarity[w.partner])});
      partners.push_back({{"segment", w.partner}, {"weight", w.weight}, {"similarity", similarity[w.partner]}});
    }
    j = {{"segment", *o.segment},
         {"partners", partners},
         {"probability", inference::weighted_prediction(entries)},
         {"profile", profile}};
  } else {
    const auto db = store::load_series_store(or_default(o.in, common.dir(), kSeriesFile));
    const auto& s = find_series(db, o.series);
    if (o.lags == 0 || s.points.size() <= o.lags) {
      throw Error(ErrorCode::TooShort, "series '" + s.id + "' is too short for " + std::to_string(o.lags) + " lags");
    }
    inference::FeatureMatrix x;
    x.rows = s.points.size() - o.lags;
    x.cols = o.lags;
    std::vector<double> y;
    for (std::size_t r = 0; r < x.rows; ++r) {
      for (std::size_t c = 0; c < o.lags; ++c) x.data.push_back(s.points[r + c].intensity);
      y.push_back(s.points[r + o.lags].intensity);
    }
    const auto model = inference::fit_baseline(x, y, o.lambda);
    std::vector<double> tail;
    for (std::size_t c = 0; c < o.lags; ++c) tail.push_back(s.points[s.points.size() - o.lags + c].intensity);
    j = {{"series", s.id}, {"lags", o.lags}, {"lambda", o.lambda}, {"weights", model.weights},
         {"objective", inference::ridge_objective(model, x, y)}, {"forecast", inference::predict_baseline(model, tail)}};
  }
  if (o.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    store::write_file_atomic(o.out, j.dump(2) + "\n");
    out << "prediction -> " << o.out << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lsat: lightmorphic signature analysis toolkit", "lsat"};
  app.require_subcommand(1, 1);

  Common common;
  app.add_option("--data-dir", common.data_dir, "Data directory (default: $LSAT_DATA_DIR or ./data)");
  app.add_option("--seed", common.seed, "Seed for every random draw")->capture_default_str();

  IngestOpts ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Read weather CSV files into the series store");
  c_ingest->add_option("--in", ingest.in, "CSV file or directory of CSV files")->required();
  c_ingest->add_option("--out", ingest.out, "Output directory");

  SegmentOpts seg;
  auto* c_segment = app.add_subcommand("segment", "Cut series into isochronous segments");
  c_segment->add_option("--in", seg.in, "Series store");
  c_segment->add_option("--out", seg.out, "Segment store to write");
  c_segment->add_option("--window", seg.window, "Window length in seconds")->capture_default_str()->check(CLI::PositiveNumber);
  c_segment->add_option("--profile-length", seg.profile_length, "Resampled profile length")->capture_default_str();

  ChordOpts chord;
  auto* c_chords = app.add_subcommand("chords", "Link similar segments with graph chords");
  c_chords->add_option("--in", chord.in, "Segment store");
  c_chords->add_option("--out", chord.out, "Segment store with chords to write");
  c_chords->add_option("--threshold", chord.threshold, "Minimum Pearson correlation")->capture_default_str()->check(CLI::Range(-1.0, 1.0));
  c_chords->add_option("--sub-window", chord.sub_window, "Samples per amplitude window")->capture_default_str();
  c_chords->add_option("--scope", chord.scope, "Link within each city or across all")
      ->capture_default_str()
      ->check(CLI::IsMember({"city", "all"}));

  SpectrogramOpts spec;
  auto* c_spec = app.add_subcommand("spectrogram", "Write a spectrogram CSV for one series");
  c_spec->add_option("--in", spec.in, "Series store");
  c_spec->add_option("--out", spec.out, "CSV file to write");
  c_spec->add_option("--series", spec.series, "Series (city) id")->required();
  c_spec->add_option("--window", spec.window, "Frame length in samples")->capture_default_str()->check(CLI::PositiveNumber);
  c_spec->add_option("--hop", spec.hop, "Hop in samples")->capture_default_str()->check(CLI::PositiveNumber);
  c_spec->add_option("--taper", spec.taper, "Window function")->capture_default_str()->check(CLI::IsMember({"hann", "rectangular"}));

  SignatureOpts sig;
  auto* c_sig = app.add_subcommand("signature", "Assemble one signature tensor per series");
  c_sig->add_option("--in", sig.in, "Series store");
  c_sig->add_option("--out", sig.out, "Signature store to write");
  c_sig->add_option("--bins-i", sig.bins_i, "Intensity bins")->capture_default_str()->check(CLI::PositiveNumber);
  c_sig->add_option("--bins-d", sig.bins_d, "Trajectory bins")->capture_default_str()->check(CLI::PositiveNumber);
  c_sig->add_option("--channels", sig.channels, "Adjustment channels")->capture_default_str()->check(CLI::PositiveNumber);
  c_sig->add_option("--zeta", sig.zeta, "Per-channel adjustment weights (default all 1)")->delimiter(',');
  c_sig->add_option("--cell-measure", sig.cell_measure, "Measure of one tensor cell")->capture_default_str();

  AggregateOpts agg;
  auto* c_agg = app.add_subcommand("aggregate", "Sum stored signatures into the segment database");
  c_agg->add_option("--signatures", agg.signatures, "Signature store");
  c_agg->add_option("--chords", agg.chords, "Segment store with chords");
  c_agg->add_option("--out", agg.out, "Segment store to write");

  PhaseOpts phase;
  auto* c_phase = app.add_subcommand("phase", "Accumulate space, atmospheric and Earth phase along a path");
  c_phase->add_option("--out", phase.out, "JSON file to write (default stdout)");
  c_phase->add_option("--length", phase.length, "Path length (m)")->capture_default_str();
  c_phase->add_option("--omega0", phase.omega0, "Angular frequency (rad/s)")->capture_default_str();
  c_phase->add_option("--samples", phase.samples, "Path samples")->capture_default_str();
  c_phase->add_option("--h-plus", phase.h_plus, "Strain amplitude")->capture_default_str();
  c_phase->add_option("--strain-wavelength", phase.strain_wavelength, "Strain wavelength along the path (m)")->capture_default_str();
  c_phase->add_option("--temperature", phase.temperature, "Air temperature (K)")->capture_default_str();
  c_phase->add_option("--pressure", phase.pressure, "Air pressure (hPa)")->capture_default_str();
  c_phase->add_option("--vapor", phase.vapor, "Water vapour pressure (hPa)")->capture_default_str();
  c_phase->add_option("--sigma", phase.sigma, "Earth-noise standard deviation (rad)")->capture_default_str();

  auto* c_curv = app.add_subcommand("curvature-check", "Run the flat/FLRW/wave curvature checks");

  PosteriorOpts post;
  auto* c_post = app.add_subcommand("posterior", "Grid posterior over the mean signature level");
  c_post->add_option("--signatures", post.signatures, "Signature store supplying observations");
  c_post->add_option("--obs", post.obs, "Explicit observations")->delimiter(',');
  c_post->add_option("--out", post.out, "Posterior CSV to write");
  c_post->add_option("--grid-min", post.grid_min, "Lowest grid point");
  c_post->add_option("--grid-max", post.grid_max, "Highest grid point");
  c_post->add_option("--points", post.points, "Grid points")->capture_default_str();
  c_post->add_option("--prior-mean", post.prior_mean, "Gaussian prior mean");
  c_post->add_option("--prior-sigma", post.prior_sigma, "Gaussian prior standard deviation");
  c_post->add_option("--noise-sigma", post.noise_sigma, "Observation noise standard deviation");

  PredictOpts pred;
  auto* c_pred = app.add_subcommand("predict", "Alternative-signature or baseline-regression prediction");
  c_pred->add_option("--in", pred.in, "Store to read (chords for --segment, series for --series)");
  c_pred->add_option("--out", pred.out, "JSON file to write (default stdout)");
  auto* seg_opt = c_pred->add_option("--segment", pred.segment, "Segment index to predict from its chords");
  c_pred->add_option("--epsilon", pred.epsilon, "Amplitude regularizer")->capture_default_str();
  auto* series_opt = c_pred->add_option("--series", pred.series, "Series id for the baseline regressor");
  c_pred->add_option("--lags", pred.lags, "Autoregressive lags")->capture_default_str();
  c_pred->add_option("--lambda", pred.lambda, "Ridge penalty")->capture_default_str();
  seg_opt->excludes(series_opt);

  std::vector<std::string> argv_store{"lsat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (c_pred->parsed() && !pred.segment && pred.series.empty()) {
    err << "predict: one of --segment or --series is required\n";
    return 2;
  }

  try {
    if (c_ingest->parsed()) cmd_ingest(common, ingest, out);
    else if (c_segment->parsed()) cmd_segment(common, seg, out);
    else if (c_chords->parsed()) cmd_chords(common, chord, out);
    else if (c_spec->parsed()) cmd_spectrogram(common, spec, out);
    else if (c_sig->parsed()) cmd_signature(common, sig, out);
    else if (c_agg->parsed()) cmd_aggregate(common, agg, out);
    else if (c_phase->parsed()) cmd_phase(common, phase, out);
    else if (c_curv->parsed()) return cmd_curvature_check(out);
    else if (c_post->parsed()) cmd_posterior(common, post, out);
    else if (c_pred->parsed()) cmd_predict(common, pred, out);
  } catch (const std::exception& e) {
    err << "lsat: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace lsat::cli
