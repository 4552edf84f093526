#include "lsat/tensors.hpp"

#include <cmath>
#include <numbers>

#include "lsat/error.hpp"

namespace lsat::tensors {

namespace {

void require_weak(double amplitude, double bound, const char* what) {
  if (!std::isfinite(amplitude) || std::abs(amplitude) >= bound) {
    throw Error(ErrorCode::AmplitudeTooLarge,
                std::string(what) + " = " + std::to_string(amplitude) +
                    " violates the weak-field bound " + std::to_string(bound));
  }
}

double minor3(const Matrix4& m, int skip_row, int skip_col) {
  int rows[3];
  int cols[3];
  for (int i = 0, r = 0, c = 0; i < 4; ++i) {
    if (i != skip_row) rows[r++] = i;
    if (i != skip_col) cols[c++] = i;
  }
  auto at = [&](int i, int j) { return m[rows[i]][cols[j]]; };
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

double cofactor(const Matrix4& m, int i, int j) {
  const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  return sign * minor3(m, i, j);
}

}  // namespace

double SpacetimePoint::operator[](int mu) const {
  switch (mu) {
    case 0: return t;
    case 1: return x;
    case 2: return y;
    default: return z;
  }
}

SpacetimePoint SpacetimePoint::shifted(int mu, double delta) const {
  SpacetimePoint q = *this;
  switch (mu) {
    case 0: q.t += delta; break;
    case 1: q.x += delta; break;
    case 2: q.y += delta; break;
    default: q.z += delta; break;
  }
  return q;
}

MetricTensor::MetricTensor(const Matrix4& components) : components_(components) {
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const double a = components_[mu][nu];
      if (!std::isfinite(a)) throw Error(ErrorCode::NonFinite, "metric component is not finite");
      const double b = components_[nu][mu];
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
        throw Error(ErrorCode::AsymmetricInput, "metric is not symmetric");
      }
    }
  }
  if (determinant() == 0.0) throw Error(ErrorCode::SingularMetric, "metric determinant is zero");
}

double MetricTensor::determinant() const {
  double det = 0.0;
  for (int j = 0; j < 4; ++j) det += components_[0][j] * cofactor(components_, 0, j);
  return det;
}

Matrix4 MetricTensor::inverse() const {
  const double det = determinant();
  if (std::abs(det) < kSingularDeterminant) {
    throw Error(ErrorCode::SingularMetric, "|det g| = " + std::to_string(std::abs(det)));
  }
  Matrix4 inv{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) inv[i][j] = cofactor(components_, j, i) / det;
  }
  return inv;
}

StrainTensor StrainTensor::from_components(const Matrix4& c, double max_amplitude) {
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      if (c[mu][nu] != c[nu][mu]) throw Error(ErrorCode::AsymmetricInput, "strain is not symmetric");
      const bool tt_slot = (mu == 1 || mu == 2) && (nu == 1 || nu == 2);
      if (!tt_slot && c[mu][nu] != 0.0) {
        throw Error(ErrorCode::InvalidArgument, "strain has components outside the x-y block");
      }
      require_weak(c[mu][nu], max_amplitude, "strain component");
    }
  }
  if (c[1][1] != -c[2][2]) throw Error(ErrorCode::InvalidArgument, "strain is not traceless");
  return StrainTensor(c, c[1][1], c[1][2]);
}

double StrainTensor::max_abs() const {
  double m = 0.0;
  for (const auto& row : components_) {
    for (double v : row) m = std::max(m, std::abs(v));
  }
  return m;
}

MetricTensor minkowski() {
  Matrix4 eta{};
  eta[0][0] = -1.0;
  eta[1][1] = eta[2][2] = eta[3][3] = 1.0;
  return MetricTensor(eta);
}

StrainTensor tt_strain(double h_plus, double h_cross, double phase, double max_amplitude) {
  require_weak(h_plus, max_amplitude, "h_plus");
  require_weak(h_cross, max_amplitude, "h_cross");
  const double oscillation = std::cos(phase);
  Matrix4 h{};
  h[1][1] = h_plus * oscillation;
  h[2][2] = -h[1][1];
  h[1][2] = h[2][1] = h_cross * oscillation;
  return StrainTensor(h, h_plus, h_cross);
}

MetricTensor perturb(const MetricTensor& eta, const StrainTensor& h) {
  require_weak(h.max_abs(), 1.0, "max |h|");
  Matrix4 g = eta.components();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) g[mu][nu] += h.components()[mu][nu];
  }
  return MetricTensor(g);
}

Rank3 christoffel(const MetricField& field, const SpacetimePoint& p, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const Matrix4 g_inv = field.eval(p).inverse();

  // dg[s][m][n] = d_s g_{mn}
  Rank3 dg{};
  for (int s = 0; s < 4; ++s) {
    const Matrix4 plus = field.eval(p.shifted(s, step)).components();
    const Matrix4 minus = field.eval(p.shifted(s, -step)).components();
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) dg[s][m][n] = (plus[m][n] - minus[m][n]) / (2.0 * step);
    }
  }

  Rank3 gamma{};
  for (int l = 0; l < 4; ++l) {
    for (int m = 0; m < 4; ++m) {
      for (int n = m; n < 4; ++n) {
        double sum = 0.0;
        for (int s = 0; s < 4; ++s) {
          sum += g_inv[l][s] * (dg[m][s][n] + dg[n][s][m] - dg[s][m][n]);
        }
        gamma[l][m][n] = gamma[l][n][m] = 0.5 * sum;
      }
    }
  }
  return gamma;
}

CurvatureResult curvature(const MetricField& field, const SpacetimePoint& p, double step) {
  const MetricTensor g = field.eval(p);
  const Matrix4 g_inv = g.inverse();
  const Rank3 gamma = christoffel(field, p, step);

  // dgamma[m][r][n][s] = d_m Gamma^r_{ns}
  std::array<Rank3, 4> dgamma{};
  for (int m = 0; m < 4; ++m) {
    const Rank3 plus = christoffel(field, p.shifted(m, step), step);
    const Rank3 minus = christoffel(field, p.shifted(m, -step), step);
    for (int r = 0; r < 4; ++r) {
      for (int n = 0; n < 4; ++n) {
        for (int s = 0; s < 4; ++s) {
          dgamma[m][r][n][s] = (plus[r][n][s] - minus[r][n][s]) / (2.0 * step);
        }
      }
    }
  }

  // R_{sn} = R^r_{srn}; contract the Riemann expression directly with m = r.
  CurvatureResult out;
  for (int s = 0; s < 4; ++s) {
    for (int n = 0; n < 4; ++n) {
      double sum = 0.0;
      for (int r = 0; r < 4; ++r) {
        sum += dgamma[r][r][n][s] - dgamma[n][r][r][s];
        for (int l = 0; l < 4; ++l) {
          sum += gamma[r][r][l] * gamma[l][n][s] - gamma[r][n][l] * gamma[l][r][s];
        }
      }
      out.ricci[s][n] = sum;
    }
  }

  for (int s = 0; s < 4; ++s) {
    for (int n = 0; n < 4; ++n) out.scalar += g_inv[s][n] * out.ricci[s][n];
  }
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) out.einstein[m][n] = out.ricci[m][n] - 0.5 * g(m, n) * out.scalar;
  }
  return out;
}

double einstein_constant(const PhysicalConstants& consts) {
  if (!(consts.G > 0.0) || !(consts.c > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "G and c must be strictly positive");
  }
  const double c2 = consts.c * consts.c;
  return 8.0 * std::numbers::pi * consts.G / (c2 * c2);
}

Matrix4 curvature_from_stress(const Matrix4& stress, double k) {
  Matrix4 out{};
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      if (std::abs(stress[m][n] - stress[n][m]) > 1e-12) {
        throw Error(ErrorCode::AsymmetricInput, "stress-energy tensor is not symmetric");
      }
      out[m][n] = k * stress[m][n];
    }
  }
  return out;
}

double wave_residual(const std::function<double(double, double)>& strain, double t, double z,
                     double step, double c) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "c must be positive");
  const double centre = strain(t, z);
  const double h2 = step * step;
  const double d2t = (strain(t + step, z) - 2.0 * centre + strain(t - step, z)) / h2;
  const double d2z = (strain(t, z + step) - 2.0 * centre + strain(t, z - step)) / h2;
  return -d2t / (c * c) + d2z;
}

double interval(double dt, double dx, double dy, double dz, double h_plus, double c) {
  require_weak(h_plus, 1.0, "h_plus");
  return -c * c * dt * dt + (1.0 + h_plus) * dx * dx + (1.0 - h_plus) * dy * dy + dz * dz;
}

StretchFactors stretch_factor(double h_plus) {
  require_weak(h_plus, 1.0, "h_plus");
  return {std::sqrt(1.0 + h_plus), std::sqrt(1.0 - h_plus)};
}

MetricField flat_field() {
  return {[](const SpacetimePoint&) { return minkowski(); }, "minkowski"};
}

MetricField flrw_linear_field() {
  return {[](const SpacetimePoint& p) {
            const double a2 = p.t * p.t;
            Matrix4 g{};
            g[0][0] = -1.0;
            g[1][1] = g[2][2] = g[3][3] = a2;
            return MetricTensor(g);
          },
          "flrw a(t)=t"};
}

MetricField plane_wave_field(double amplitude, double omega) {
  return {[amplitude, omega](const SpacetimePoint& p) {
            return perturb(minkowski(), tt_strain(amplitude, 0.0, omega * (p.t - p.z)));
          },
          "tt plane wave"};
}

}  // namespace lsat::tensors
