#include "holderlab/stepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "holderlab/errors.hpp"
#include "holderlab/operators.hpp"

namespace holderlab {

namespace {

constexpr double kCflFactor = 0.5;
constexpr double kDriftDivergenceTolerance = 1e-8;

double cfl_limit(const VectorField& b) {
  const double peak = b.max_norm();
  if (peak == 0.0) return std::numeric_limits<double>::infinity();
  return kCflFactor * b.grid().spacing() / peak;
}

void check_drift(const VectorField& b, const Grid& grid, double dt) {
  require_same_grid(b.grid(), grid, "step");
  if (!b.all_finite()) throw NumericalFailure("step: drift has non-finite samples");
  if (!b.divergence_free() && divergence_ratio(b) > kDriftDivergenceTolerance)
    throw InvalidInput("step: drift is not divergence-free");
  const double limit = cfl_limit(b);
  if (dt > limit * (1.0 + 1e-12))
    throw CflViolation("step: dt = " + std::to_string(dt) + " exceeds the advective limit " +
                           std::to_string(limit),
                       limit);
}

std::vector<Spectrum> tendency_spectra(const VectorField& b, const VectorField& u) {
  const auto t = advective_tendency(b, u);
  std::vector<Spectrum> out;
  for (int c = 0; c < u.dim(); ++c) out.push_back(t[c].spectrum());
  return out;
}

VectorField assemble(const Grid& grid, std::vector<Spectrum>& s, bool div_free) {
  std::vector<ScalarField> comps;
  for (auto& sp : s) comps.emplace_back(sp);
  return VectorField(grid, std::move(comps), div_free);
}

SimState advance(const SimState& state, const VectorField& b1, const DriftFn* drift,
                 const VectorField* fixed, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("step: dt must be positive and finite");
  const VectorField& u = state.u;
  const Grid& grid = u.grid();
  const int dim = u.dim();
  check_drift(b1, grid, dt);

  const auto layout = SpectralLayout::for_grid(grid);
  const auto n1 = tendency_spectra(b1, u);
  std::vector<Spectrum> mid;
  for (int c = 0; c < dim; ++c) {
    Spectrum s = u[c].spectrum();
    for (std::size_t m = 0; m < s.size(); ++m)
      s[m] = std::exp(-layout->ksq(m) * dt / 2) * (s[m] + dt / 2 * n1[c][m]);
    mid.push_back(std::move(s));
  }
  const VectorField u_mid = assemble(grid, mid, u.divergence_free());

  const double t_mid = state.t + dt / 2;
  const VectorField b2 = drift ? (*drift)(t_mid, u_mid) : *fixed;
  if (drift) check_drift(b2, grid, dt);
  const auto n2 = tendency_spectra(b2, u_mid);

  std::vector<Spectrum> next;
  for (int c = 0; c < dim; ++c) {
    Spectrum s = u[c].spectrum();
    for (std::size_t m = 0; m < s.size(); ++m) {
      const double k2 = layout->ksq(m);
      s[m] = std::exp(-k2 * dt) * s[m] + dt * std::exp(-k2 * dt / 2) * n2[c][m];
    }
    next.push_back(std::move(s));
  }

  SimState out{state.t + dt, assemble(grid, next, u.divergence_free()), state.step_index + 1,
               state.dt_history};
  if (!out.u.all_finite()) throw NumericalFailure("step: solution became non-finite");
  out.dt_history.push_back(dt);
  return out;
}

}  // namespace

double admissible_dt(const VectorField& b, double cap) {
  return std::min(cfl_limit(b), cap);
}

VectorField advective_tendency(const VectorField& b, const VectorField& u) {
  auto p = leray_project(advection_term(b, u));
  std::vector<Spectrum> s;
  for (int c = 0; c < u.dim(); ++c) {
    Spectrum sp = p[c].spectrum();
    for (auto& z : sp.coeffs) z = -z;
    sp[0] = 0.0;
    s.push_back(std::move(sp));
  }
  return assemble(u.grid(), s, true);
}

SimState step(const SimState& state, const VectorField& b, double dt) {
  return advance(state, b, nullptr, &b, dt);
}

SimState step(const SimState& state, const DriftFn& drift, double dt) {
  const VectorField b1 = drift(state.t, state.u);
  return advance(state, b1, &drift, nullptr, dt);
}

}  // namespace holderlab
