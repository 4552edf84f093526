#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "lsat/cli.hpp"
#include "lsat/store.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = lsat::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workspace {
 public:
  explicit Workspace(const std::string& tag) {
    root_ = fs::temp_directory_path() / ("lsat-cli-" + tag + "-" + std::to_string(std::random_device{}()));
    fs::create_directories(root_ / "csv");
    std::mt19937_64 rng(17);
    std::normal_distribution<double> noise(0.0, 0.05);
    for (const std::string city : {"lyon", "quito", "turku"}) {
      std::vector<lsat::store::WeatherSample> samples;
      for (int h = 0; h < 24 * 6; ++h) {
        const double day = std::sin(2.0 * std::numbers::pi * (h % 24) / 24.0);
        samples.push_back({city, 1.7e9 + 3600.0 * h, 12.0 + 5.0 * day, 1010.0, 55.0,
                           std::max(0.0, 800.0 * day * (1.0 + noise(rng))) + 5.0 * (h % 3)});
      }
      lsat::store::write_weather_csv(root_ / "csv" / (city + ".csv"), samples);
    }
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }
  fs::path csv() const { return root_ / "csv"; }
  fs::path data() const { return root_ / "data"; }

  std::vector<Result> pipeline() const {
    const std::string d = data().string();
    std::vector<Result> steps;
    steps.push_back(run({"--data-dir", d, "ingest", "--in", csv().string()}));
    steps.push_back(run({"--data-dir", d, "segment"}));
    steps.push_back(run({"--data-dir", d, "chords", "--threshold", "0.0"}));
    steps.push_back(run({"--data-dir", d, "spectrogram", "--series", "quito", "--window", "32", "--hop", "16"}));
    steps.push_back(run({"--data-dir", d, "signature"}));
    steps.push_back(run({"--data-dir", d, "aggregate"}));
    steps.push_back(run({"--data-dir", d, "posterior"}));
    steps.push_back(run({"--data-dir", d, "predict", "--segment", "0"}));
    steps.push_back(run({"--data-dir", d, "predict", "--series", "lyon"}));
    steps.push_back(run({"--data-dir", d, "phase"}));
    return steps;
  }

 private:
  fs::path root_;
};

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"segment", "--help"}).code, 0);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"segment", "--window", "-5"}).code, 2);
  EXPECT_EQ(run({"predict"}).code, 2);
  EXPECT_EQ(run({"spectrogram", "--series", "x", "--taper", "triangle"}).code, 2);
}

TEST(Cli, RuntimeErrorsExitOne) {
  const auto r = run({"--data-dir", "/nonexistent/lsat", "segment"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, CurvatureCheckPasses) {
  const auto r = run({"curvature-check"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, FullPipeline) {
  Workspace ws("full");
  const auto steps = ws.pipeline();
  for (std::size_t k = 0; k < steps.size(); ++k) EXPECT_EQ(steps[k].code, 0) << "step " << k << ": " << steps[k].err;

  for (const char* name : {"series.lsat", "segments.lsat", "chords.lsat", "signatures.lsat", "aggregate.lsat",
                           "posterior.csv", "spectrogram-quito.csv"}) {
    EXPECT_TRUE(fs::exists(ws.data() / name)) << name;
  }
  const auto series = lsat::store::load_series_store(ws.data() / "series.lsat");
  ASSERT_EQ(series.series.size(), 3u);
  EXPECT_EQ(series.series[0].points.size(), 144u);
  const auto segs = lsat::store::load_segment_store(ws.data() / "segments.lsat");
  EXPECT_EQ(segs.segments.size(), 15u);
  EXPECT_FALSE(lsat::store::load_segment_store(ws.data() / "chords.lsat").chords.empty());
  EXPECT_TRUE(lsat::store::load_segment_store(ws.data() / "aggregate.lsat").aggregate.has_value());

  EXPECT_NE(steps[4].out.find("lyon "), std::string::npos);
  EXPECT_EQ(steps[7].out.front(), '{');
  EXPECT_NE(steps[9].out.find("\"total\""), std::string::npos);

  std::istringstream spec(read_all(ws.data() / "spectrogram-quito.csv"));
  std::string header;
  std::getline(spec, header);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 17);
}

TEST(Cli, DataDirFromEnvironment) {
  Workspace ws("env");
  ::setenv("LSAT_DATA_DIR", ws.data().string().c_str(), 1);
  EXPECT_EQ(run({"ingest", "--in", ws.csv().string()}).code, 0);
  const auto r = run({"spectrogram", "--series", "turku", "--window", "64", "--hop", "32"});
  ::unsetenv("LSAT_DATA_DIR");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(ws.data() / "spectrogram-turku.csv"));
}

TEST(Cli, DeterministicAndLeavesInputsAlone) {
  Workspace a("a"), b("b");
  std::map<std::string, std::string> before;
  for (const auto& e : fs::directory_iterator(a.csv())) before[e.path().filename().string()] = read_all(e.path());

  const auto ra = a.pipeline();
  const auto rb = b.pipeline();
  const auto strip = [](std::string text, const std::string& root) {
    for (auto pos = text.find(root); pos != std::string::npos; pos = text.find(root)) text.erase(pos, root.size());
    return text;
  };
  for (std::size_t k = 0; k < ra.size(); ++k) {
    EXPECT_EQ(strip(ra[k].out, a.data().string()), strip(rb[k].out, b.data().string())) << "step " << k;
  }
  for (const auto& e : fs::directory_iterator(a.data())) {
    if (e.path().extension() == ".lock") continue;
    EXPECT_EQ(read_all(e.path()), read_all(b.data() / e.path().filename())) << e.path().filename();
  }
  for (const auto& [name, bytes] : before) EXPECT_EQ(read_all(a.csv() / name), bytes) << name;

  // Re-running a stage over existing outputs reproduces them byte for byte.
  const std::string segments = read_all(a.data() / "segments.lsat");
  EXPECT_EQ(run({"--data-dir", a.data().string(), "segment"}).code, 0);
  EXPECT_EQ(read_all(a.data() / "segments.lsat"), segments);
}
