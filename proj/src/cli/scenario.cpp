#include "holderlab/scenario.hpp"

#include <cmath>
#include <set>

#include "holderlab/errors.hpp"

namespace holderlab {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "alpha", "beta", "seed",
      "grid.dim", "grid.n", "grid.length",
      "initial.kind", "initial.mode", "initial.amplitude", "initial.power", "initial.kmax",
      "initial.slope", "initial.seed", "initial.path",
      "drift.kind", "drift.g", "drift.envelope", "drift.low", "drift.period", "drift.kmax",
      "drift.slope", "drift.seed", "drift.mollify_eps", "drift.exponent",
      "ladder.top", "ladder.min_cells",
      "time.T", "time.dt", "output.stride",
      "certificate.C_bar", "certificate.f0", "certificate.calibrate",
      "calibrate.count", "calibrate.holdout", "calibrate.seed",
      "endpoint.eps", "endpoint.r_star", "endpoint.C_star", "endpoint.c_star",
  };
  return keys;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw InvalidInput("key '" + key + "': " + why);
}

int positive_int(const Config& c, const std::string& key, long long fallback) {
  const long long v = c.integer(key, fallback);
  if (v <= 0 || v > 1'000'000'000) bad(key, "must be a positive integer");
  return static_cast<int>(v);
}

std::uint64_t seed_value(const Config& c, const std::string& key, std::uint64_t fallback) {
  const long long v = c.integer(key, static_cast<long long>(fallback));
  if (v < 0) bad(key, "must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

double finite_real(const Config& c, const std::string& key, double fallback) {
  const double v = c.real(key, fallback);
  if (!std::isfinite(v)) bad(key, "must be finite");
  return v;
}

InitialKind initial_kind(const std::string& s) {
  if (s == "sine") return InitialKind::sine;
  if (s == "abs_sine") return InitialKind::abs_sine;
  if (s == "random") return InitialKind::random;
  if (s == "taylor_green") return InitialKind::taylor_green;
  if (s == "dump") return InitialKind::dump;
  bad("initial.kind", "unknown kind '" + s + "' (sine, abs_sine, random, taylor_green, dump)");
}

Envelope::Shape envelope_shape(const std::string& s) {
  if (s == "constant") return Envelope::Shape::constant;
  if (s == "square") return Envelope::Shape::square;
  if (s == "sine") return Envelope::Shape::sine;
  bad("drift.envelope", "unknown shape '" + s + "' (constant, square, sine)");
}

RadiusSchedule radius_schedule(const std::string& text) {
  // constant:<r>  or  power:<c>:<q>
  RadiusSchedule r;
  const auto a = text.find(':');
  if (a == std::string::npos) bad("endpoint.r_star", "expected constant:<r> or power:<c>:<q>");
  const std::string kind = text.substr(0, a);
  const std::string rest = text.substr(a + 1);
  if (kind == "constant") {
    r.value = parse_real("endpoint.r_star", rest);
  } else if (kind == "power") {
    const auto b = rest.find(':');
    if (b == std::string::npos) bad("endpoint.r_star", "power schedule needs power:<c>:<q>");
    r.kind = RadiusSchedule::Kind::power;
    r.value = parse_real("endpoint.r_star", rest.substr(0, b));
    r.exponent = parse_real("endpoint.r_star", rest.substr(b + 1));
  } else {
    bad("endpoint.r_star", "unknown schedule '" + kind + "'");
  }
  if (!(r.value > 0.0)) bad("endpoint.r_star", "must be positive on [0, T)");
  return r;
}

}  // namespace

double RadiusSchedule::operator()(double t, double T) const {
  if (kind == Kind::constant) return value;
  return value * std::pow(std::max(T - t, 0.0), exponent);
}

ScaleLadder Scenario::ladder() const { return ScaleLadder::dyadic(grid(), ladder_top, ladder_min_cells); }

Scenario parse_scenario(const Config& cfg) {
  for (const auto& [k, v] : cfg.values())
    if (!known_keys().count(k)) bad(k, "unknown key");

  Scenario s;
  s.source = cfg;
  s.seed = seed_value(cfg, "seed", 1);

  s.dim = positive_int(cfg, "grid.dim", 2);
  if (s.dim != 2 && s.dim != 3) bad("grid.dim", "must be 2 or 3");
  s.n = positive_int(cfg, "grid.n", 64);
  s.length = finite_real(cfg, "grid.length", s.length);
  try {
    (void)s.grid();
  } catch (const InvalidInput& e) {
    bad("grid.n", e.what());
  }

  s.alpha = cfg.real("alpha");
  if (!(s.alpha > 0.0 && s.alpha < 1.0)) bad("alpha", "must lie in (0, 1)");
  const double beta = finite_real(cfg, "beta", 0.0);
  if (!(beta >= -1.0 && beta <= 1.0)) bad("beta", "must lie in [-1, 1]");
  s.seminorm = SeminormSpec::from_beta(beta);

  auto& in = s.initial;
  in.kind = initial_kind(cfg.get("initial.kind").value_or("sine"));
  in.mode = positive_int(cfg, "initial.mode", 1);
  in.amplitude = finite_real(cfg, "initial.amplitude", 1.0);
  in.power = finite_real(cfg, "initial.power", 0.5);
  in.kmax = positive_int(cfg, "initial.kmax", 4);
  in.slope = finite_real(cfg, "initial.slope", 1.0);
  in.seed = seed_value(cfg, "initial.seed", s.seed);
  if (in.kind == InitialKind::dump) {
    in.path = cfg.require("initial.path");
    if (!std::filesystem::exists(in.path)) bad("initial.path", "file not found: " + in.path.string());
  }

  auto& d = s.drift;
  try {
    d.kind = drift_kind_from_string(cfg.get("drift.kind").value_or("none"));
  } catch (const InvalidInput& e) {
    bad("drift.kind", e.what());
  }
  d.envelope.shape = envelope_shape(cfg.get("drift.envelope").value_or("constant"));
  d.envelope.level = finite_real(cfg, "drift.g", 1.0);
  d.envelope.low = finite_real(cfg, "drift.low", 0.0);
  d.envelope.period = finite_real(cfg, "drift.period", 1.0);
  if (d.envelope.level < 0.0) bad("drift.g", "must be nonnegative");
  if (!(d.envelope.period > 0.0)) bad("drift.period", "must be positive");
  d.random_kmax = positive_int(cfg, "drift.kmax", 3);
  d.random_slope = finite_real(cfg, "drift.slope", 1.0);
  d.seed = seed_value(cfg, "drift.seed", s.seed + 1);
  d.mollify_eps = finite_real(cfg, "drift.mollify_eps", 0.0);
  if (d.kind == DriftKind::mollified && !(d.mollify_eps > 0.0))
    bad("drift.mollify_eps", "mollified drifts need a positive radius");
  d.coupling_exponent = finite_real(cfg, "drift.exponent", -0.25);
  d.seminorm = s.seminorm;

  if (cfg.has("ladder.top")) {
    s.ladder_top = finite_real(cfg, "ladder.top", 0.0);
    if (!(*s.ladder_top > 0.0)) bad("ladder.top", "must be positive");
  }
  s.ladder_min_cells = finite_real(cfg, "ladder.min_cells", kMinimumStencilCells);
  if (s.ladder_min_cells < kMinimumStencilCells) bad("ladder.min_cells", "must be at least 4");
  try {
    if (s.ladder().empty()) bad("ladder.top", "ladder has no admissible radius");
  } catch (const InvalidInput& e) {
    if (std::string(e.what()).starts_with("key ")) throw;
    bad("ladder.top", e.what());
  }

  s.T = cfg.real("time.T");
  if (!(s.T > 0.0) || !std::isfinite(s.T)) bad("time.T", "must be positive");
  if (cfg.has("time.dt")) {
    s.dt = finite_real(cfg, "time.dt", 0.0);
    if (!(*s.dt > 0.0)) bad("time.dt", "must be positive");
  }
  s.stride = positive_int(cfg, "output.stride", 1);

  if (cfg.has("certificate.C_bar")) {
    s.C_bar = finite_real(cfg, "certificate.C_bar", 0.0);
    if (*s.C_bar < 0.0) bad("certificate.C_bar", "must be nonnegative");
  }
  if (cfg.has("certificate.f0")) {
    s.f0 = finite_real(cfg, "certificate.f0", 0.0);
    if (!(*s.f0 > 0.0)) bad("certificate.f0", "must be positive");
  }
  if (cfg.flag("certificate.calibrate", false)) s.C_bar.reset();
  s.calibrate_count = static_cast<std::size_t>(positive_int(cfg, "calibrate.count", 200));
  s.calibrate_holdout = static_cast<std::size_t>(cfg.integer("calibrate.holdout", 100));
  if (cfg.integer("calibrate.holdout", 100) < 0) bad("calibrate.holdout", "must be nonnegative");
  s.calibrate_seed = seed_value(cfg, "calibrate.seed", s.seed + 2);

  if (s.seminorm.endpoint()) {
    auto& e = s.endpoint;
    e.r_star = radius_schedule(cfg.require("endpoint.r_star"));
    e.C_star = cfg.real("endpoint.C_star");
    e.c_star = cfg.real("endpoint.c_star");
    if (!(e.C_star > 0.0)) bad("endpoint.C_star", "must be positive");
    if (!(e.c_star >= 0.0)) bad("endpoint.c_star", "must be nonnegative");
    if (cfg.has("endpoint.eps")) {
      e.eps = cfg.real("endpoint.eps");
      if (!(*e.eps > 0.0)) bad("endpoint.eps", "must be positive");
    }
  }
  return s;
}

}  // namespace holderlab
