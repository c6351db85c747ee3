#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "holderlab/grid.hpp"
#include "holderlab/weight.hpp"

namespace holderlab {

/// Decreasing list of radii with their stencils, shared by every multiscale
/// scan. Every radius is at least 4 lattice spacings.
class ScaleLadder {
 public:
  ScaleLadder(const Grid& grid, std::vector<double> radii);

  /// r_k = top * 2^{-k} for k = 0, 1, ... while r_k >= min_cells * h.
  /// `top` defaults to L/4.
  static ScaleLadder dyadic(const Grid& grid, std::optional<double> top = std::nullopt,
                            double min_cells = kMinimumStencilCells);

  const Grid& grid() const noexcept { return grid_; }
  const WeightProfile& profile() const noexcept { return profile_; }
  std::size_t size() const noexcept { return radii_.size(); }
  bool empty() const noexcept { return radii_.empty(); }
  double radius(std::size_t k) const noexcept { return radii_[k]; }
  const std::vector<double>& radii() const noexcept { return radii_; }
  const WeightedStencil& weighted(std::size_t k) const noexcept { return weighted_[k]; }
  const BallStencil& ball(std::size_t k) const noexcept { return balls_[k]; }
  /// Index of a radius equal to r up to 1e-12 relative.
  std::optional<std::size_t> find(double r) const noexcept;

 private:
  Grid grid_;
  WeightProfile profile_;
  std::vector<double> radii_;
  std::vector<WeightedStencil> weighted_;
  std::vector<BallStencil> balls_;
};

enum class SeminormCase { morrey, bmo, holder };

const char* to_string(SeminormCase c) noexcept;

/// Drift seminorm selector. beta < 0: Morrey (mean 0), beta = 0: BMO (plain
/// ball mean), beta > 0: Hoelder (center value). p = 2 / (1 + beta).
struct SeminormSpec {
  double beta = 0.0;
  SeminormCase kind = SeminormCase::bmo;
  double p = 2.0;

  static SeminormSpec from_beta(double beta);
  /// True for beta = -1, where p is infinite.
  bool endpoint() const noexcept { return p == std::numeric_limits<double>::infinity(); }
};

}  // namespace holderlab
