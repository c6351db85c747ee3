#include "holderlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "holderlab/errors.hpp"

namespace holderlab {

namespace {

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<ScalarField> zero_components(const Grid& grid) {
  return std::vector<ScalarField>(grid.dim(), ScalarField(grid));
}

}  // namespace

VectorField stream_field(const Grid& grid, std::span<const StreamMode> modes) {
  const int dim = grid.dim();
  const int band = grid.points_per_axis() / 2 - 1;
  const double unit = grid.wavenumber_unit();
  auto comps = zero_components(grid);
  std::vector<std::span<double>> out;
  for (auto& c : comps) out.push_back(c.mutable_samples());

  for (const auto& m : modes) {
    for (int a = 0; a < dim; ++a)
      if (std::abs(m.k[a]) > band)
        throw InvalidInput("stream mode beyond the resolvable band |k| <= " + std::to_string(band));
    if (!std::isfinite(m.amplitude) || !std::isfinite(m.phase))
      throw InvalidInput("stream mode: non-finite amplitude or phase");
    // psi = a cos(theta): grad psi = -a sin(theta) k'.
    Vec kk{unit * m.k[0], unit * m.k[1], unit * m.k[2]};
    Vec dir = kk;
    if (dim == 2) {
      dir = {kk[1], -kk[0], 0.0};
    } else {
      dir = cross(kk, m.direction);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto x = grid.coords(grid.point(i));
      double theta = m.phase;
      for (int a = 0; a < dim; ++a) theta += kk[a] * x[a];
      const double s = -m.amplitude * std::sin(theta);
      for (int c = 0; c < dim; ++c) out[c][i] += s * dir[c];
    }
  }
  return VectorField(grid, std::move(comps), true);
}

std::vector<StreamMode> random_modes(int dim, int kmax, double slope, std::uint64_t seed) {
  if (dim != 2 && dim != 3) throw InvalidInput("random_modes: dim must be 2 or 3");
  if (kmax < 1) throw InvalidInput("random_modes: kmax must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<StreamMode> modes;
  const int kz = dim == 3 ? kmax : 0;
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = -kmax; b <= kmax; ++b)
      for (int c = -kz; c <= kz; ++c) {
        // One representative of each +-k pair.
        const LatticePoint k{a, b, c};
        const auto first = std::find_if(k.begin(), k.end(), [](int v) { return v != 0; });
        if (first == k.end() || *first < 0) continue;
        const double norm = std::sqrt(double(a * a + b * b + c * c));
        StreamMode m;
        m.k = k;
        m.amplitude = gauss(rng) * std::pow(norm, -slope);
        m.phase = phase(rng);
        if (dim == 3) {
          Vec d{gauss(rng), gauss(rng), gauss(rng)};
          const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
          for (auto& v : d) v /= n;
          m.direction = d;
        }
        modes.push_back(m);
      }
  return modes;
}

VectorField random_solenoidal(const Grid& grid, int kmax, double slope, std::uint64_t seed,
                              double amplitude) {
  const auto modes = random_modes(grid.dim(), kmax, slope, seed);
  auto v = stream_field(grid, modes);
  const double peak = v.max_norm();
  if (peak == 0.0) return v;
  const double s = amplitude / peak;
  for (int c = 0; c < v.dim(); ++c)
    for (auto& x : v.component(c).mutable_samples()) x *= s;
  v.set_divergence_free(true);
  return v;
}

VectorField sine_mode(const Grid& grid, int m, double amplitude) {
  auto comps = zero_components(grid);
  auto out = comps[1].mutable_samples();
  const double k = m * grid.wavenumber_unit();
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = amplitude * std::sin(k * grid.coords(grid.point(i))[0]);
  return VectorField(grid, std::move(comps), true);
}

VectorField abs_sine_power(const Grid& grid, double power, double amplitude) {
  if (!(power > 0.0)) throw InvalidInput("abs_sine_power: power must be positive");
  auto comps = zero_components(grid);
  auto out = comps[1].mutable_samples();
  const double k = grid.wavenumber_unit();
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = amplitude * std::pow(std::abs(std::sin(k * grid.coords(grid.point(i))[0])), power);
  return VectorField(grid, std::move(comps), true);
}

VectorField taylor_green(const Grid& grid, double amplitude) {
  auto comps = zero_components(grid);
  auto u0 = comps[0].mutable_samples();
  auto u1 = comps[1].mutable_samples();
  const double k = grid.wavenumber_unit();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.coords(grid.point(i));
    const double z = grid.dim() == 3 ? std::cos(k * x[2]) : 1.0;
    u0[i] = amplitude * std::sin(k * x[0]) * std::cos(k * x[1]) * z;
    u1[i] = -amplitude * std::cos(k * x[0]) * std::sin(k * x[1]) * z;
  }
  return VectorField(grid, std::move(comps), true);
}

}  // namespace holderlab
