#pragma once

#include <functional>
#include <vector>

#include "holderlab/field.hpp"
#include "holderlab/ladder.hpp"

namespace holderlab {

/// delta = min{(eps / B)^{1/(3-alpha)}, 1/2}.
double endpoint_delta(double eps, double B, double alpha);
/// C_alpha = r^{3-alpha} int_{2r}^inf rho^{alpha-4} d rho = 2^{alpha-3} / (3 - alpha).
double endpoint_tail_constant(double alpha);
/// The smallness threshold c_star / (C_star (3 + 2 C_alpha)).
double endpoint_epsilon(double C_star, double c_star, double alpha);

struct IntegralTest {
  bool finite = false;
  double value = 0.0;  ///< trapezoidal integral up to the finest level examined
  double increment_ratio = 0.0;
};

/// Finiteness of int_0^T r_star(t)^{-2} dt: trapezoidal integrals on
/// [0, T - T 2^{-k}] for k = 1..levels; divergence is declared when the
/// increments stop shrinking (ratio of successive increments >= 0.99).
/// r_star must be positive on [0, T); r_star(T) may vanish.
IntegralTest inverse_square_integral(const std::function<double(double)>& r_star, double T,
                                     int levels = 24);

struct EndpointReport {
  double alpha = 0.0;
  double eps = 0.0;
  double B = 0.0;
  double delta = 0.0;
  double C_alpha = 0.0;
  double K = 0.0;
  double eps_rule = 0.0;
  /// Condition (a): sup over snapshots, x and ladder radii r < r_star(t) of r M.
  double small_scale_sup = 0.0;
  bool small_scale_ok = false;
  /// Condition (b).
  IntegralTest integral;
  /// f(t) = f0 exp(K int_0^t r_star^{-2}) at the snapshot times (when finite).
  std::vector<double> times;
  std::vector<double> f;
  bool passed() const noexcept { return small_scale_ok && integral.finite; }
};

struct EndpointInput {
  std::vector<double> times;           ///< snapshot times, increasing, in [0, T]
  std::vector<VectorField> snapshots;  ///< b at those times
  double T = 0.0;
  double alpha = 0.5;
  double eps = 0.0;
  double B = 0.0;
  double C_star = 0.0;
  double c_star = 0.0;
  double f0 = 1.0;
  std::function<double(double)> r_star;
};

/// Throws InvalidInput when r_star <= 0 somewhere in [0, T).
EndpointReport endpoint_check(const EndpointInput& in, const ScaleLadder& ladder);

/// sup over x and ladder radii of r M(x, r) with M the Morrey functional.
double endpoint_norm(const VectorField& b, const ScaleLadder& ladder);

}  // namespace holderlab
