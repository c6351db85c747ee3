#pragma once

#include <cstddef>
#include <vector>

#include "holderlab/field.hpp"
#include "holderlab/ladder.hpp"
#include "holderlab/weight.hpp"

namespace holderlab {

/// Weighted mean u_bar(x, r) = sum_z w_z u(x + z).
Vec local_mean(const VectorField& u, const LatticePoint& x, const WeightedStencil& st);

/// I(x, r) = sum_z w_z |u(x + z) - u_bar|^2.
double campanato_I(const VectorField& u, const LatticePoint& x, const WeightedStencil& st);

/// Double-integral form sum_{y,z} w_y w_z |u(y) - u(z)|^2, evaluated in one
/// pass as 2 (sum w |u|^2 - |sum w u|^2). Equals 2 * campanato_I.
double double_diff_form(const VectorField& u, const LatticePoint& x, const WeightedStencil& st);

/// M(x, r) = |B_1| * mean over B_r(x) of |b - b_bar| with b_bar = 0 (Morrey),
/// the plain ball mean (BMO), or b(x) (Hoelder).
double morrey_M(const VectorField& b, const LatticePoint& x, const BallStencil& ball,
                SeminormCase kind);

/// -(1/r^2) sum_{y,z} w_y w_z |grad_y u(y) - grad_z u(z)|^2, i.e.
/// -2 (sum w |grad u|^2 - |sum w grad u|^2) in x-derivatives. Always <= 0.
double dissipation_D(const Jacobian& grad_u, const LatticePoint& x, const WeightedStencil& st);
double dissipation_D(const VectorField& u, const LatticePoint& x, const WeightedStencil& st);

/// dI/dr = 2 sum w (u - u_bar) . ((y . grad) u), with y = z / r.
double dI_dr(const VectorField& u, const Jacobian& grad_u, const LatticePoint& x,
             const WeightedStencil& st);

/// Terms of the functional inequality at one (x, r).
///
/// `lhs` = 2I - r I' (the combination entering the dissipation bound);
/// `lhs_doubled_coupling` = 2I - 2 r I' carries the coupling coefficient used
/// in the proof of the inequality rather than its statement.
struct InequalityGap {
  double lhs = 0.0;
  double lhs_doubled_coupling = 0.0;
  double rhs_factor_I = 0.0;  ///< sqrt(I)
  double rhs_factor_E = 0.0;  ///< sqrt(-r^2 dissipation_D)

  /// lhs / (rhs_factor_I * rhs_factor_E); 0 when lhs <= 0, +inf when the
  /// product vanishes with lhs > 0.
  double ratio() const noexcept;
  double ratio_doubled_coupling() const noexcept;
};

InequalityGap functional_inequality_gap(const VectorField& u, const Jacobian& grad_u,
                                        const LatticePoint& x, const WeightedStencil& st);

/// I(x, r) at every lattice point for one stencil.
std::vector<double> campanato_map(const VectorField& u, const WeightedStencil& st);

/// M(x, r) at every lattice point for one ball.
std::vector<double> morrey_map(const VectorField& b, const BallStencil& ball, SeminormCase kind);

}  // namespace holderlab
