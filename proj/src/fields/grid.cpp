#include "holderlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "holderlab/errors.hpp"

namespace holderlab {

namespace {

bool smooth_size(int n) {
  for (int f : {2, 3, 5})
    while (n % f == 0) n /= f;
  return n == 1;
}

}  // namespace

Grid::Grid(int dim, int points_per_axis, double side_length)
    : dim_(dim), n_(points_per_axis), length_(side_length) {
  if (dim != 2 && dim != 3)
    throw InvalidInput("grid dimension must be 2 or 3, got " + std::to_string(dim));
  if (points_per_axis < 16 || points_per_axis % 2 != 0 || !smooth_size(points_per_axis))
    throw InvalidInput("points per axis must be even, >= 16 and a product of 2, 3, 5; got " +
                       std::to_string(points_per_axis));
  if (!(side_length > 0.0) || !std::isfinite(side_length))
    throw InvalidInput("side length must be positive and finite");
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
}

double Grid::wavenumber_unit() const noexcept { return 2.0 * std::numbers::pi / length_; }

std::size_t Grid::index(const LatticePoint& p) const noexcept {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) idx = idx * n_ + static_cast<std::size_t>(p[a]);
  return idx;
}

LatticePoint Grid::point(std::size_t index) const noexcept {
  LatticePoint p{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    p[a] = static_cast<int>(index % n_);
    index /= n_;
  }
  return p;
}

Vec Grid::coords(const LatticePoint& p) const noexcept {
  Vec x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = p[a] * spacing();
  return x;
}

std::size_t Grid::shifted(const LatticePoint& p, const LatticePoint& offset) const noexcept {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) idx = idx * n_ + static_cast<std::size_t>(wrap(p[a] + offset[a]));
  return idx;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InvalidInput(std::string(what) + ": grid mismatch");
}

}  // namespace holderlab
