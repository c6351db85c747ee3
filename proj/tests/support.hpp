#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "holderlab/field.hpp"

namespace holderlab::testing {

inline constexpr double kPi = std::numbers::pi;

// Bump integrals over the unit ball for phi = c exp(-1/(1-|y|^2)), frozen from
// an independent 30-digit radial quadrature. m2 = int y_1^2 phi with unit mass.
inline constexpr double kBumpMass2D = 0.46651239317833007;
inline constexpr double kBumpMass3D = 0.44108888727660440;
inline constexpr double kSecondMoment2D = 0.13065560171027932;
inline constexpr double kSecondMoment3D = 0.11169565399086730;

// int_{B_1} |y_1| dy.
inline constexpr double kAbsFirstMoment2D = 4.0 / 3.0;
inline constexpr double kAbsFirstMoment3D = kPi / 2.0;

using ScalarFn = std::function<double(const Vec&)>;

inline ScalarField sample(const Grid& g, const ScalarFn& f) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.coords(g.point(i)));
  return ScalarField(g, std::move(v));
}

inline VectorField sample_vec(const Grid& g, const std::vector<ScalarFn>& fs, bool div_free = false) {
  std::vector<ScalarField> comps;
  for (const auto& f : fs) comps.push_back(sample(g, f));
  while (static_cast<int>(comps.size()) < g.dim()) comps.emplace_back(g);
  return VectorField(g, std::move(comps), div_free);
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int c = 0; c < a.dim(); ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
  return m;
}

inline LatticePoint center(const Grid& g) {
  const int c = g.points_per_axis() / 2;
  return {c, c, g.dim() == 3 ? c : 0};
}

// Constant Jacobian of an affine field: jac[i][j] = a[i][j].
inline Jacobian constant_jacobian(const Grid& g, const std::vector<std::vector<double>>& a) {
  Jacobian jac;
  for (int i = 0; i < g.dim(); ++i) {
    std::vector<ScalarFn> row;
    for (int j = 0; j < g.dim(); ++j) {
      const double v = a[i][j];
      row.push_back([v](const Vec&) { return v; });
    }
    jac.push_back(sample_vec(g, row));
  }
  return jac;
}

}  // namespace holderlab::testing
