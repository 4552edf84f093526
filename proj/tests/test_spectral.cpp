#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "lsat/error.hpp"
#include "lsat/spectral.hpp"
#include "oracles.hpp"

using namespace lsat::spectral;
using lsat::Error;
using lsat::ErrorCode;
using lsat::TimeSeries;
using cd = std::complex<double>;

namespace {

TimeSeries sampled(std::size_t n, double dt, const std::function<double(std::size_t)>& f) {
  TimeSeries s{"s", {}};
  for (std::size_t i = 0; i < n; ++i) s.points.push_back({static_cast<double>(i) * dt, f(i)});
  return s;
}

std::vector<cd> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> x(n);
  for (auto& v : x) v = {u(rng), u(rng)};
  return x;
}

}  // namespace

TEST(Dft, ImpulseIsFlat) {
  std::vector<cd> x(32, 0.0);
  x[0] = 1.0;
  for (const auto& v : dft(x)) EXPECT_NEAR(std::abs(v), 1.0, 1e-15);
}

TEST(Dft, ConstantIsDcOnly) {
  const std::vector<cd> x(40, cd{2.5, 0.0});
  const auto X = dft(x);
  EXPECT_NEAR(X[0].real(), 100.0, 1e-10);
  for (std::size_t k = 1; k < X.size(); ++k) EXPECT_LE(std::abs(X[k]), 1e-10);
}

TEST(Dft, MatchesNaiveOracle) {
  for (std::size_t n : {1u, 7u, 64u, 100u}) {
    const auto x = random_complex(n, n);
    const auto got = dft(x);
    const auto want = lsat::oracle::naive_dft(x);
    for (std::size_t k = 0; k < n; ++k) EXPECT_LE(std::abs(got[k] - want[k]), 1e-9) << "n=" << n << " k=" << k;
  }
}

TEST(Dft, InverseRoundTrip) {
  const auto x = random_complex(48, 3);
  const auto back = lsat::oracle::naive_idft(dft(x));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_LE(std::abs(back[i] - x[i]), 1e-9);
}

TEST(Dft, EmptyRejected) { EXPECT_THROW(dft(std::vector<cd>{}), Error); }

TEST(FrameCount, Formula) {
  EXPECT_EQ(frame_count(1000, 128, 64), 14u);
  EXPECT_EQ(frame_count(128, 128, 1), 1u);
  EXPECT_EQ(frame_count(100, 128, 1), 0u);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 16 + rng() % 2000;
    const std::size_t w = 1 + rng() % n;
    const std::size_t hop = 1 + rng() % 97;
    std::size_t brute = 0;
    for (std::size_t start = 0; start + w <= n; start += hop) ++brute;
    EXPECT_EQ(frame_count(n, w, hop), brute);
    const auto spec = spectrogram(sampled(n, 1.0, [](std::size_t i) { return std::sin(0.1 * i); }), w, hop);
    EXPECT_EQ(spec.frame_count(), brute);
  }
}

TEST(FrameSpectra, RectangularParseval) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x(500);
  for (double& v : x) v = n(rng);
  const std::size_t w = 64, hop = 20;
  const auto frames = frame_spectra(x, w, hop, Window::Rectangular);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    double time_energy = 0.0;
    for (std::size_t i = 0; i < w; ++i) time_energy += x[f * hop + i] * x[f * hop + i];
    double freq_energy = 0.0;
    for (const auto& v : frames[f]) freq_energy += std::norm(v);
    EXPECT_NEAR(freq_energy / static_cast<double>(w) / time_energy, 1.0, 1e-9);
  }
}

TEST(Spectrogram, ConstantSeriesOnlyDc) {
  const auto spec = spectrogram(sampled(512, 1.0, [](std::size_t) { return 5.0; }), 128, 64, Window::Rectangular);
  ASSERT_EQ(spec.frame_count(), 7u);
  for (const auto& frame : spec.frames) {
    EXPECT_EQ(frame[0], 0.0);
    for (std::size_t k = 1; k < frame.size(); ++k) EXPECT_EQ(frame[k], kFloorDb);
  }
}

TEST(Spectrogram, SinusoidPeaksAtItsBin) {
  const std::size_t w = 128, k = 9;
  const auto s = sampled(1000, 0.5, [&](std::size_t i) {
    return std::sin(2.0 * std::numbers::pi * static_cast<double>(k * i) / static_cast<double>(w)) + 0.2;
  });
  const auto spec = spectrogram(s, w, 64, Window::Hann);
  EXPECT_EQ(spec.frame_count(), 14u);
  EXPECT_DOUBLE_EQ(spec.bin_width, 1.0 / (128 * 0.5));
  EXPECT_EQ(spec.frame_hop, 32.0);

  // Per-frame argmax from the naive DFT of the Hann-windowed frame.
  std::vector<double> hann(w);
  for (std::size_t i = 0; i < w; ++i) hann[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / w);
  for (std::size_t f = 0; f < spec.frame_count(); ++f) {
    std::vector<cd> frame(w);
    for (std::size_t i = 0; i < w; ++i) frame[i] = s.points[f * 64 + i].intensity * hann[i];
    const auto X = lsat::oracle::naive_dft(frame);
    std::size_t best = 1;
    for (std::size_t b = 1; b <= w / 2; ++b) {
      if (std::norm(X[b]) > std::norm(X[best])) best = b;
    }
    EXPECT_EQ(best, k);
    const auto& row = spec.frames[f];
    EXPECT_EQ(static_cast<std::size_t>(std::max_element(row.begin() + 1, row.end()) - row.begin()), k);
    for (double db : row) EXPECT_LE(db, 0.0);
  }
}

TEST(Spectrogram, TimeReversalKeepsMagnitudes) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x(64 + 16 * 9);
  for (double& v : x) v = n(rng);
  const auto fwd = frame_spectra(x, 64, 16, Window::Rectangular);
  std::vector<double> rev(x.rbegin(), x.rend());
  const auto bwd = frame_spectra(rev, 64, 16, Window::Rectangular);
  ASSERT_EQ(fwd.size(), bwd.size());
  for (std::size_t f = 0; f < fwd.size(); ++f) {
    const auto& a = fwd[f];
    const auto& b = bwd[fwd.size() - 1 - f];
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(std::abs(a[k]), std::abs(b[k]), 1e-9);
  }
}

TEST(Spectrogram, Errors) {
  auto s = sampled(100, 1.0, [](std::size_t i) { return static_cast<double>(i % 3); });
  try {
    spectrogram(s, 128, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooShort);
  }
  s.points[50].timestamp += 0.25;
  try {
    spectrogram(s, 32, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUniformSampling);
  }
}

TEST(Spectrogram, CsvLayout) {
  const auto spec = spectrogram(sampled(16, 2.0, [](std::size_t i) { return std::cos(0.7 * i); }), 8, 4, Window::Hann);
  std::ostringstream out;
  write_csv(spec, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, ",0,0.0625,0.125,0.1875,0.25");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].substr(0, 2), "0,");
  EXPECT_EQ(rows[1].substr(0, 2), "8,");
  EXPECT_EQ(rows[2].substr(0, 3), "16,");
  for (const auto& row : rows) EXPECT_EQ(std::count(row.begin(), row.end(), ','), 5);
}
