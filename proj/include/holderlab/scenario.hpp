#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "holderlab/config.hpp"
#include "holderlab/drift.hpp"
#include "holderlab/grid.hpp"
#include "holderlab/ladder.hpp"

namespace holderlab {

enum class InitialKind { sine, abs_sine, random, taylor_green, dump };

struct InitialSpec {
  InitialKind kind = InitialKind::sine;
  int mode = 1;
  double amplitude = 1.0;
  double power = 0.5;
  int kmax = 4;
  double slope = 1.0;
  std::uint64_t seed = 1;
  std::filesystem::path path;
};

/// r_star(t) = value (constant) or value * (T - t)^exponent (power).
struct RadiusSchedule {
  enum class Kind { constant, power } kind = Kind::constant;
  double value = 0.0;
  double exponent = 0.0;
  double operator()(double t, double T) const;
};

struct EndpointSpec {
  std::optional<double> eps;
  RadiusSchedule r_star;
  double C_star = 0.0;
  double c_star = 0.0;
};

/// A validated run description. See README for the key schema.
struct Scenario {
  Config source;
  int dim = 2;
  int n = 64;
  double length = 6.283185307179586;
  double alpha = 0.5;
  SeminormSpec seminorm;
  InitialSpec initial;
  DriftSpec drift;
  std::optional<double> ladder_top;
  double ladder_min_cells = kMinimumStencilCells;
  double T = 0.0;
  std::optional<double> dt;
  int stride = 1;
  std::optional<double> C_bar;
  std::optional<double> f0;
  std::size_t calibrate_count = 200;
  std::size_t calibrate_holdout = 100;
  std::uint64_t calibrate_seed = 3;
  std::uint64_t seed = 1;
  EndpointSpec endpoint;

  Grid grid() const { return Grid(dim, n, length); }
  ScaleLadder ladder() const;
};

/// Validates every key; errors are InvalidInput naming the offending key.
Scenario parse_scenario(const Config& cfg);

}  // namespace holderlab
