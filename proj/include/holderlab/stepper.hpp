#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "holderlab/field.hpp"

namespace holderlab {

struct SimState {
  double t = 0.0;
  VectorField u;
  std::size_t step_index = 0;
  std::vector<double> dt_history;
};

/// Drift as a function of time and the current solution.
using DriftFn = std::function<VectorField(double t, const VectorField& u)>;

/// Default upper bound on the time step.
inline constexpr double kMaxTimeStep = 0.1;

/// min(0.5 h / max|b|, cap).
double admissible_dt(const VectorField& b, double cap = kMaxTimeStep);

/// Right-hand side without diffusion: -P[(b . grad) u], dealiased, mean mode
/// zeroed.
VectorField advective_tendency(const VectorField& b, const VectorField& u);

/// One integrating-factor midpoint step of u_t + b.grad u - lap u = grad p.
/// The heat part is exact per mode; advection and pressure are explicit.
/// Throws CflViolation when dt > 0.5 h / max|b| and NumericalFailure on
/// non-finite output.
SimState step(const SimState& state, const VectorField& b, double dt);
SimState step(const SimState& state, const DriftFn& drift, double dt);

}  // namespace holderlab
