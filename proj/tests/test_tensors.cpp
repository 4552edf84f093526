#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lsat/error.hpp"
#include "lsat/tensors.hpp"

using namespace lsat::tensors;
using lsat::Error;
using lsat::ErrorCode;

namespace {

double max_abs(const Matrix4& m) {
  double v = 0.0;
  for (const auto& row : m) {
    for (double x : row) v = std::max(v, std::abs(x));
  }
  return v;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected lsat::Error";
  return ErrorCode::InvalidArgument;
}

// Closed forms for FLRW with a(t) = t, derived by hand:
//   Gamma^t_xx = a a' = t, Gamma^x_tx = a'/a = 1/t,
//   R = 6 (a''/a + (a'/a)^2) = 6/t^2,  G_tt = 3 (a'/a)^2 = 3/t^2.
double flrw_scalar(double t) { return 6.0 / (t * t); }
double flrw_gtt(double t) { return 3.0 / (t * t); }

}  // namespace

TEST(Minkowski, DiagonalAndSelfInverse) {
  const auto eta = minkowski();
  EXPECT_EQ(eta(0, 0), -1.0);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(eta(i, i), 1.0);
  double trace = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    trace += eta(mu, mu);
    for (int nu = 0; nu < 4; ++nu) {
      if (mu != nu) EXPECT_EQ(eta(mu, nu), 0.0);
      double prod = 0.0;
      for (int k = 0; k < 4; ++k) prod += eta(mu, k) * eta(k, nu);
      EXPECT_EQ(prod, mu == nu ? 1.0 : 0.0);
    }
  }
  EXPECT_EQ(trace, 2.0);
  EXPECT_EQ(eta.determinant(), -1.0);
  EXPECT_EQ(eta.inverse(), eta.components());
}

TEST(MetricTensor, RejectsAsymmetric) {
  Matrix4 m = minkowski().components();
  m[0][1] = 0.5;
  EXPECT_EQ(code_of([&] { MetricTensor{m}; }), ErrorCode::AsymmetricInput);
}

TEST(TtStrain, LayoutForPlusPolarization) {
  const auto h = tt_strain(1e-3, 0.0, 0.0);
  const auto& c = h.components();
  EXPECT_EQ(c[1][1], 1e-3);
  EXPECT_EQ(c[2][2], -1e-3);
  EXPECT_EQ(c[1][2], 0.0);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(c[0][k], 0.0);
    EXPECT_EQ(c[k][0], 0.0);
    EXPECT_EQ(c[3][k], 0.0);
    EXPECT_EQ(c[k][3], 0.0);
  }
}

TEST(TtStrain, ZeroCases) {
  EXPECT_EQ(max_abs(tt_strain(0.0, 0.0, 1.234).components()), 0.0);
  // cos(pi/2) is 6e-17 in double, so the product is below any physical strain.
  EXPECT_LT(max_abs(tt_strain(0.0, 2e-4, std::numbers::pi / 2).components()), 1e-19);
}

TEST(TtStrain, AmplitudeBound) {
  EXPECT_EQ(code_of([] { tt_strain(1.0, 0.0, 0.0); }), ErrorCode::AmplitudeTooLarge);
  EXPECT_EQ(code_of([] { tt_strain(0.0, -1.5, 0.0); }), ErrorCode::AmplitudeTooLarge);
  EXPECT_EQ(code_of([] { tt_strain(1e-3, 0.0, 0.0, 1e-4); }), ErrorCode::AmplitudeTooLarge);
}

TEST(TtStrain, InvariantsHoldForRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(-0.99, 0.99);
  std::uniform_real_distribution<double> phase(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = tt_strain(amp(rng), amp(rng), phase(rng)).components();
    EXPECT_EQ(c[0][0] + c[1][1] + c[2][2] + c[3][3], 0.0);
    EXPECT_EQ(c[1][1], -c[2][2]);
    for (int i = 0; i < 4; ++i) {
      EXPECT_EQ(c[0][i], 0.0);
      EXPECT_EQ(c[3][i], 0.0);
      for (int j = 0; j < 4; ++j) EXPECT_EQ(c[i][j], c[j][i]);
    }
  }
}

TEST(StrainTensor, FromComponentsValidatesLayout) {
  Matrix4 m{};
  m[1][1] = 0.1;
  m[2][2] = -0.1;
  EXPECT_NO_THROW(StrainTensor::from_components(m));
  m[0][3] = m[3][0] = 0.01;
  EXPECT_EQ(code_of([&] { StrainTensor::from_components(m); }), ErrorCode::InvalidArgument);
}

TEST(Perturb, AddsComponentwise) {
  const auto eta = minkowski();
  EXPECT_EQ(perturb(eta, tt_strain(0, 0, 0)).components(), eta.components());
  const auto h = tt_strain(1e-3, 0.0, 0.0);
  const auto g = perturb(eta, h);
  EXPECT_EQ(g(1, 1), 1.001);
  EXPECT_EQ(g(2, 2), 0.999);
  EXPECT_EQ(g(0, 0), -1.0);
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      EXPECT_NEAR(g(mu, nu) - eta(mu, nu), h.components()[mu][nu], 1e-15);
      EXPECT_EQ(g(mu, nu), g(nu, mu));
    }
  }
}

TEST(Christoffel, FlatFieldVanishes) {
  const auto gamma = christoffel(flat_field(), {1.0, 2.0, 3.0, 4.0});
  for (const auto& m : gamma) EXPECT_LE(max_abs(m), 1e-12);
}

TEST(Christoffel, FlrwMatchesClosedForm) {
  const auto gamma = christoffel(flrw_linear_field(), {2.0, 0.0, 0.0, 0.0}, 1e-4);
  EXPECT_NEAR(gamma[0][1][1], 2.0, 1e-6);  // Gamma^t_xx = a a'
  EXPECT_NEAR(gamma[1][0][1], 0.5, 1e-6);  // Gamma^x_tx = a'/a
  EXPECT_NEAR(gamma[2][0][2], 0.5, 1e-6);
  EXPECT_NEAR(gamma[0][0][0], 0.0, 1e-12);
}

TEST(Christoffel, LowerIndicesSymmetricExactly) {
  const auto field = plane_wave_field(1e-3, 2.0);
  const auto gamma = christoffel(field, {0.3, 0.1, 0.2, 0.7}, 1e-3);
  for (int l = 0; l < 4; ++l) {
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) EXPECT_EQ(gamma[l][m][n], gamma[l][n][m]);
    }
  }
}

TEST(Christoffel, SingularMetricRejected) {
  const MetricField tiny{[](const SpacetimePoint&) {
                           Matrix4 g{};
                           g[0][0] = -1e-4;
                           g[1][1] = g[2][2] = g[3][3] = 1e-3;
                           return MetricTensor(g);
                         },
                         "tiny"};
  EXPECT_EQ(code_of([&] { christoffel(tiny, {}); }), ErrorCode::SingularMetric);
  EXPECT_EQ(code_of([&] { christoffel(flat_field(), {}, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(Curvature, FlatFieldVanishes) {
  const auto r = curvature(flat_field(), {0.5, 0.5, 0.5, 0.5});
  EXPECT_LE(max_abs(r.ricci), 1e-8);
  EXPECT_LE(std::abs(r.scalar), 1e-8);
  EXPECT_LE(max_abs(r.einstein), 1e-8);
}

TEST(Curvature, FlrwMatchesClosedForm) {
  const double t = 2.0;
  const auto r = curvature(flrw_linear_field(), {t, 0.0, 0.0, 0.0}, 1e-3);
  EXPECT_NEAR(r.scalar, 1.5, 1.5e-4);
  EXPECT_NEAR(r.scalar / flrw_scalar(t), 1.0, 1e-4);
  EXPECT_NEAR(r.einstein[0][0] / flrw_gtt(t), 1.0, 1e-4);
  // Spatially, G_xx = -(2 a a'' + a'^2) = -1 for a = t.
  EXPECT_NEAR(r.einstein[1][1], -1.0, 1e-4);
}

TEST(Curvature, EinsteinIsTraceReversedRicci) {
  const SpacetimePoint p{2.0, 0.0, 0.0, 0.0};
  const auto r = curvature(flrw_linear_field(), p, 1e-3);
  const auto g = flrw_linear_field().eval(p);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) EXPECT_EQ(r.einstein[m][n], r.ricci[m][n] - 0.5 * g(m, n) * r.scalar);
  }
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(r.ricci[m][n], r.ricci[n][m], 1e-8);
  }
}

TEST(Curvature, FlrwSecondOrderConvergence) {
  const double t = 2.0;
  const double e1 = std::abs(curvature(flrw_linear_field(), {t, 0, 0, 0}, 1e-2).scalar - flrw_scalar(t));
  const double e2 = std::abs(curvature(flrw_linear_field(), {t, 0, 0, 0}, 5e-3).scalar - flrw_scalar(t));
  const double e3 = std::abs(curvature(flrw_linear_field(), {t, 0, 0, 0}, 2.5e-3).scalar - flrw_scalar(t));
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.3);
  EXPECT_NEAR(std::log2(e2 / e3), 2.0, 0.3);
}

TEST(Curvature, VacuumWaveIsSecondOrderInStrain) {
  const auto r = curvature(plane_wave_field(1e-5, 1.0), {0.7, 0.0, 0.0, 0.2}, 1e-3);
  EXPECT_LE(max_abs(r.einstein), 1e-8);
}

TEST(EinsteinConstant, CodataDefaults) {
  // 8 pi G / c^4 evaluated with 40-digit arithmetic: 2.07664744284497e-43.
  EXPECT_NEAR(einstein_constant(), 2.07664744284497e-43, 1e-46);
  EXPECT_NEAR(einstein_constant({1.0, 1.0}), 25.132741228718345, 1e-12);
  const double k = einstein_constant();
  EXPECT_DOUBLE_EQ(einstein_constant({2.0 * 6.67430e-11, 2.99792458e8}), 2.0 * k);
  EXPECT_EQ(code_of([] { einstein_constant({0.0, 1.0}); }), ErrorCode::InvalidArgument);
}

TEST(CurvatureFromStress, ScalesAndChecksSymmetry) {
  Matrix4 zero{};
  EXPECT_EQ(curvature_from_stress(zero, 3.0), zero);
  Matrix4 t{};
  t[0][0] = 2.0;
  t[1][2] = t[2][1] = -0.5;
  EXPECT_EQ(curvature_from_stress(t, 1.0), t);
  const auto g = curvature_from_stress(t, 4.0);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) EXPECT_EQ(g[m][n], g[n][m]);
  }
  t[0][3] = 1.0;
  EXPECT_EQ(code_of([&] { curvature_from_stress(t, 1.0); }), ErrorCode::AsymmetricInput);
}

TEST(CurvatureFromStress, Linear) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> small(-8, 8);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix4 a{}, b{};
    for (int m = 0; m < 4; ++m) {
      for (int n = m; n < 4; ++n) {
        a[m][n] = a[n][m] = small(rng) * 0.25;
        b[m][n] = b[n][m] = small(rng) * 0.125;
      }
    }
    const double alpha = 2.0, beta = -0.5, k = 4.0;
    Matrix4 mix{};
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) mix[m][n] = alpha * a[m][n] + beta * b[m][n];
    }
    const auto lhs = curvature_from_stress(mix, k);
    const auto fa = curvature_from_stress(a, k);
    const auto fb = curvature_from_stress(b, k);
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) EXPECT_EQ(lhs[m][n], alpha * fa[m][n] + beta * fb[m][n]);
    }
  }
}

TEST(WaveResidual, ConstantStrainVanishes) {
  EXPECT_LE(std::abs(wave_residual([](double, double) { return 3e-4; }, 1.0, 2.0, 1e-3, 1.0)), 1e-12);
}

TEST(WaveResidual, SpaceIndependentOscillation) {
  // box h = -(1/c^2) d2h/dt2 = A w^2 cos(w t) for h = A cos(w t).
  const double amp = 1e-3, omega = 10.0, t = 0.37;
  const double residual = wave_residual([&](double tt, double) { return amp * std::cos(omega * tt); }, t, 0.0, 1e-4, 1.0);
  EXPECT_NEAR(residual, amp * omega * omega * std::cos(omega * t), 1e-7);
}

TEST(WaveResidual, PlaneWaveConvergesAtSecondOrder) {
  const double c = 2.0;
  const auto wave = [c](double t, double z) { return 1e-3 * std::cos(3.0 * (t - z / c)); };
  double step = 0.05;
  double prev = std::abs(wave_residual(wave, 0.4, 0.1, step, c));
  for (int k = 0; k < 3; ++k) {
    step /= 2.0;
    const double cur = std::abs(wave_residual(wave, 0.4, 0.1, step, c));
    EXPECT_GE(prev / cur, 3.4);
    EXPECT_LE(prev / cur, 4.6);
    prev = cur;
  }
}

TEST(Interval, Examples) {
  EXPECT_EQ(interval(1, 0, 0, 0, 0, 1), -1.0);
  EXPECT_EQ(interval(0, 1, 0, 0, 1e-3, 1), 1.001);
  EXPECT_EQ(interval(1, 1, 0, 0, 0, 1), 0.0);
  EXPECT_EQ(interval(0, 0, 0, 2, 0.5, 1), 4.0);
  EXPECT_EQ(code_of([] { interval(0, 1, 0, 0, 1.0, 1); }), ErrorCode::AmplitudeTooLarge);
}

TEST(StretchFactor, Examples) {
  const auto none = stretch_factor(0.0);
  EXPECT_EQ(none.sx, 1.0);
  EXPECT_EQ(none.sy, 1.0);
  // sqrt(1.002), sqrt(0.998) at 40 digits.
  const auto s = stretch_factor(2e-3);
  EXPECT_NEAR(s.sx, 1.000999500499375874, 1e-9);
  EXPECT_NEAR(s.sy, 0.998999499499374124, 1e-9);
  EXPECT_EQ(code_of([] { stretch_factor(-1.0); }), ErrorCode::AmplitudeTooLarge);
}

TEST(StretchFactor, TaylorRemainderBound) {
  for (int i = 1; i < 100; ++i) {
    const double h = 0.1 * i / 100.0;
    EXPECT_LE(std::abs(stretch_factor(h).sx - (1.0 + h / 2.0)), h * h / 8.0);
  }
}
