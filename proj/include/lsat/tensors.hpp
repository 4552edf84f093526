#pragma once

// Fixed-size spacetime tensor algebra in signature (-,+,+,+).
//
// Curvature is evaluated numerically with central differences at a point:
//   Gamma^l_{mn} = 1/2 g^{ls} (d_m g_{sn} + d_n g_{sm} - d_s g_{mn})
//   R^r_{smn}    = d_m Gamma^r_{ns} - d_n Gamma^r_{ms}
//                  + Gamma^r_{ml} Gamma^l_{ns} - Gamma^r_{nl} Gamma^l_{ms}
//   R_{sn}       = R^r_{srn},  R = g^{sn} R_{sn},  G_{mn} = R_{mn} - 1/2 g_{mn} R

#include <array>
#include <functional>
#include <string>

namespace lsat::tensors {

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Rank3 = std::array<Matrix4, 4>;  // [upper][lower][lower]

inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kSingularDeterminant = 1e-12;

struct SpacetimePoint {
  double t = 0.0;  // s
  double x = 0.0;  // m
  double y = 0.0;
  double z = 0.0;

  double operator[](int mu) const;
  SpacetimePoint shifted(int mu, double delta) const;
};

struct PhysicalConstants {
  double G = 6.67430e-11;    // m^3 kg^-1 s^-2
  double c = 2.99792458e8;   // m s^-1
};

/// Symmetric 4x4 metric. Construction rejects asymmetric or exactly singular input.
class MetricTensor {
 public:
  explicit MetricTensor(const Matrix4& components);

  const Matrix4& components() const noexcept { return components_; }
  double operator()(int mu, int nu) const { return components_[mu][nu]; }

  double determinant() const;
  /// Exact adjugate inverse. Throws SingularMetric when |det| < kSingularDeterminant.
  Matrix4 inverse() const;

 private:
  Matrix4 components_;
};

/// TT-gauge strain for a wave travelling along z.
class StrainTensor {
 public:
  /// Validates the TT layout (zero time row/column, zero z row/column, symmetric,
  /// traceless, h_xx = -h_yy) and max |component| < max_amplitude.
  static StrainTensor from_components(const Matrix4& components, double max_amplitude = 1.0);

  const Matrix4& components() const noexcept { return components_; }
  double h_plus() const noexcept { return h_plus_; }
  double h_cross() const noexcept { return h_cross_; }
  double max_abs() const;

 private:
  StrainTensor(const Matrix4& components, double h_plus, double h_cross)
      : components_(components), h_plus_(h_plus), h_cross_(h_cross) {}

  friend StrainTensor tt_strain(double, double, double, double);

  Matrix4 components_;
  double h_plus_;
  double h_cross_;
};

struct MetricField {
  std::function<MetricTensor(const SpacetimePoint&)> eval;
  std::string label;
};

struct CurvatureResult {
  Matrix4 ricci{};
  double scalar = 0.0;
  Matrix4 einstein{};
};

struct StretchFactors {
  double sx;
  double sy;
};

MetricTensor minkowski();

StrainTensor tt_strain(double h_plus, double h_cross, double phase, double max_amplitude = 1.0);

MetricTensor perturb(const MetricTensor& eta, const StrainTensor& h);

Rank3 christoffel(const MetricField& field, const SpacetimePoint& p, double step = kDefaultStep);

CurvatureResult curvature(const MetricField& field, const SpacetimePoint& p,
                          double step = kDefaultStep);

/// 8 pi G / c^4.
double einstein_constant(const PhysicalConstants& consts = {});

/// G_{mn} = k T_{mn}. Throws AsymmetricInput when |T_mn - T_nm| > 1e-12.
Matrix4 curvature_from_stress(const Matrix4& stress, double k);

/// Central-difference d'Alembertian -(1/c^2) d2h/dt2 + d2h/dz2 at (t, z).
/// The same numeric step is used along t (s) and z (m).
double wave_residual(const std::function<double(double, double)>& strain, double t, double z,
                     double step, double c);

/// ds^2 = -c^2 dt^2 + (1 + h+) dx^2 + (1 - h+) dy^2 + dz^2.
double interval(double dt, double dx, double dy, double dz, double h_plus, double c);

StretchFactors stretch_factor(double h_plus);

// Built-in fields used by the curvature check and tests.
MetricField flat_field();
/// Spatially flat FLRW metric diag(-1, a^2, a^2, a^2) with a(t) = t.
MetricField flrw_linear_field();
/// eta + tt_strain(amplitude, 0, omega (t - z)).
MetricField plane_wave_field(double amplitude, double omega);

}  // namespace lsat::tensors
