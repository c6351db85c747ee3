#include "holderlab/weight.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "holderlab/errors.hpp"

namespace holderlab {

namespace {

double bump_shape(double rho2) noexcept {
  return rho2 < 1.0 ? std::exp(-1.0 / (1.0 - rho2)) : 0.0;
}

// Composite Simpson on the radial integral of rho^{n-1} exp(-1/(1-rho^2)).
double radial_mass(int dim) {
  constexpr int intervals = 200000;
  const double h = 1.0 / intervals;
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double rho = i * h;
    const double f = std::pow(rho, dim - 1) * bump_shape(rho * rho);
    const double coef = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += coef * f;
  }
  const double sphere = dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  return sphere * acc * h / 3.0;
}

double norm2(const Vec& y, int dim) noexcept {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += y[a] * y[a];
  return s;
}

void check_radius(const Grid& grid, double r) {
  const double h = grid.spacing();
  if (!(r >= kMinimumStencilCells * h * (1.0 - 1e-12)))
    throw InvalidInput("radius " + std::to_string(r) + " is below the minimum scale " +
                       std::to_string(kMinimumStencilCells * h));
  if (r > 0.5 * grid.side_length() * (1.0 + 1e-12))
    throw InvalidInput("radius " + std::to_string(r) + " exceeds half the torus period");
}

template <class Fn>
void for_offsets(const Grid& grid, double r, Fn&& fn) {
  const double h = grid.spacing();
  const int reach = static_cast<int>(std::ceil(r / h));
  const int dim = grid.dim();
  const int z_reach = dim == 3 ? reach : 0;
  for (int d0 = -reach; d0 <= reach; ++d0)
    for (int d1 = -reach; d1 <= reach; ++d1)
      for (int d2 = -z_reach; d2 <= z_reach; ++d2) fn(LatticePoint{d0, d1, d2});
}

}  // namespace

double unit_ball_measure(int dim) noexcept {
  return dim == 2 ? std::numbers::pi : 4.0 * std::numbers::pi / 3.0;
}

WeightProfile WeightProfile::standard_bump(int dim) {
  if (dim != 2 && dim != 3) throw InvalidInput("weight profile dimension must be 2 or 3");
  return WeightProfile(WeightKind::standard_bump, dim, 1.0 / radial_mass(dim));
}

double WeightProfile::value(const Vec& y) const noexcept { return c_ * bump_shape(norm2(y, dim_)); }

Vec WeightProfile::gradient(const Vec& y) const noexcept {
  const double rho2 = norm2(y, dim_);
  Vec g{0.0, 0.0, 0.0};
  if (rho2 >= 1.0) return g;
  const double q = 1.0 - rho2;
  const double factor = -2.0 * c_ * bump_shape(rho2) / (q * q);
  for (int a = 0; a < dim_; ++a) g[a] = factor * y[a];
  return g;
}

WeightedStencil WeightedStencil::build(const Grid& grid, const WeightProfile& profile, double r) {
  check_radius(grid, r);
  if (profile.dim() != grid.dim()) throw InvalidInput("weight profile dimension mismatch");
  WeightedStencil st;
  st.radius = r;
  const double h = grid.spacing();
  const int dim = grid.dim();
  const double cell = std::pow(h / r, dim);
  for_offsets(grid, r, [&](const LatticePoint& d) {
    Vec y{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) y[a] = d[a] * h / r;
    // The closed ball: boundary points carry zero weight but count as support.
    if (norm2(y, dim) > 1.0 + 1e-12) return;
    const double w = profile.value(y) * cell;
    st.offsets.push_back(d);
    st.y.push_back(y);
    st.weights.push_back(w);
    Vec g = profile.gradient(y);
    for (int a = 0; a < dim; ++a) g[a] *= cell;
    st.grad_weights.push_back(g);
  });
  long double mass = 0.0L;
  for (double w : st.weights) mass += w;
  st.raw_mass = static_cast<double>(mass);
  for (double& w : st.weights) w /= st.raw_mass;
  for (auto& g : st.grad_weights)
    for (double& c : g) c /= st.raw_mass;
  return st;
}

BallStencil BallStencil::build(const Grid& grid, double r) {
  check_radius(grid, r);
  BallStencil ball;
  ball.radius = r;
  ball.unit_ball_measure = holderlab::unit_ball_measure(grid.dim());
  const double h = grid.spacing();
  const double limit = r * r * (1.0 + 1e-12);
  for_offsets(grid, r, [&](const LatticePoint& d) {
    double s = 0.0;
    for (int a = 0; a < grid.dim(); ++a) s += (d[a] * h) * (d[a] * h);
    if (s <= limit) ball.offsets.push_back(d);
  });
  return ball;
}

}  // namespace holderlab
