#include "holderlab/ladder.hpp"

#include <cmath>
#include <string>

#include "holderlab/errors.hpp"

namespace holderlab {

ScaleLadder::ScaleLadder(const Grid& grid, std::vector<double> radii)
    : grid_(grid), profile_(WeightProfile::standard_bump(grid.dim())), radii_(std::move(radii)) {
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    if (k > 0 && !(radii_[k] < radii_[k - 1]))
      throw InvalidInput("ladder radii must be strictly decreasing");
    weighted_.push_back(WeightedStencil::build(grid_, profile_, radii_[k]));
    balls_.push_back(BallStencil::build(grid_, radii_[k]));
  }
}

ScaleLadder ScaleLadder::dyadic(const Grid& grid, std::optional<double> top, double min_cells) {
  const double start = top.value_or(grid.side_length() / 4.0);
  if (min_cells < kMinimumStencilCells)
    throw InvalidInput("ladder minimum below " + std::to_string(kMinimumStencilCells) + " cells");
  const double floor = min_cells * grid.spacing() * (1.0 - 1e-12);
  std::vector<double> radii;
  for (double r = start; r >= floor; r *= 0.5) radii.push_back(r);
  return ScaleLadder(grid, std::move(radii));
}

std::optional<std::size_t> ScaleLadder::find(double r) const noexcept {
  for (std::size_t k = 0; k < radii_.size(); ++k)
    if (std::abs(radii_[k] - r) <= 1e-12 * std::max(1.0, r)) return k;
  return std::nullopt;
}

const char* to_string(SeminormCase c) noexcept {
  switch (c) {
    case SeminormCase::morrey: return "morrey";
    case SeminormCase::bmo: return "bmo";
    case SeminormCase::holder: return "holder";
  }
  return "unknown";
}

SeminormSpec SeminormSpec::from_beta(double beta) {
  if (!(beta >= -1.0 && beta <= 1.0)) throw InvalidInput("beta must lie in [-1, 1]");
  SeminormSpec s;
  s.beta = beta;
  s.kind = beta < 0.0 ? SeminormCase::morrey : (beta == 0.0 ? SeminormCase::bmo : SeminormCase::holder);
  s.p = beta == -1.0 ? std::numeric_limits<double>::infinity() : 2.0 / (1.0 + beta);
  return s;
}

}  // namespace holderlab
