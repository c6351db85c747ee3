#pragma once

#include <vector>

#include "holderlab/grid.hpp"

namespace holderlab {

enum class WeightKind { standard_bump };

/// Radial weight phi on the unit ball with unit mass.
///
/// The standard bump is c * exp(-1 / (1 - |y|^2)) on |y| < 1, with c fixed by
/// a high-order radial quadrature.
class WeightProfile {
 public:
  static WeightProfile standard_bump(int dim);

  WeightKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double normalization() const noexcept { return c_; }

  double value(const Vec& y) const noexcept;
  Vec gradient(const Vec& y) const noexcept;

 private:
  WeightProfile(WeightKind kind, int dim, double c) : kind_(kind), dim_(dim), c_(c) {}
  WeightKind kind_;
  int dim_;
  double c_;
};

/// Smallest radius, in lattice spacings, at which stencil quadrature is trusted.
inline constexpr double kMinimumStencilCells = 4.0;

/// Lattice quadrature of phi((z - x)/r) r^{-n} dz for one radius.
///
/// Weights are renormalized to sum to exactly one; `grad_weights` carry the
/// same normalization applied to grad phi.
struct WeightedStencil {
  double radius = 0.0;
  std::vector<LatticePoint> offsets;
  std::vector<Vec> y;
  std::vector<double> weights;
  std::vector<Vec> grad_weights;
  /// Sum of phi(y) (h/r)^n before renormalization.
  double raw_mass = 0.0;

  /// Throws InvalidInput when r is below kMinimumStencilCells * h or above L/2.
  static WeightedStencil build(const Grid& grid, const WeightProfile& profile, double r);
  std::size_t size() const noexcept { return offsets.size(); }
};

/// Unweighted closed ball |z - x| <= r on the lattice.
struct BallStencil {
  double radius = 0.0;
  std::vector<LatticePoint> offsets;
  /// |B_1|; the ball integral is |B_1| times the mean over the stencil.
  double unit_ball_measure = 0.0;

  static BallStencil build(const Grid& grid, double r);
  std::size_t size() const noexcept { return offsets.size(); }
};

/// Lebesgue measure of the unit ball in dimension 2 or 3.
double unit_ball_measure(int dim) noexcept;

}  // namespace holderlab
