#include "holderlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "holderlab/endpoint.hpp"
#include "holderlab/errors.hpp"
#include "holderlab/field_io.hpp"
#include "holderlab/generators.hpp"
#include "holderlab/scan.hpp"
#include "holderlab/stepper.hpp"

namespace holderlab {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kBisectionSteps = 24;
constexpr int kCflRetries = 30;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + p.string());
  return out;
}

void write_text(const fs::path& p, const std::string& text) { open_out(p) << text; }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point_json(const LatticePoint& x, int dim) {
  Json a = Json::array();
  for (int c = 0; c < dim; ++c) a.push_back(x[c]);
  return a;
}

BreakdownScan as_breakdown(const ScanResult& r) { return {r.value, r.argmax_index, r.argmax, r.argmax_r}; }

class SeminormLog {
 public:
  explicit SeminormLog(const fs::path& p) : out_(open_out(p)) {
    out_ << "t,quantity,beta_or_alpha,r,value,argmax_x,argmax_y,argmax_z\n";
  }
  void add(double t, const char* quantity, double exponent, const ScanResult& scan, const Grid& grid) {
    for (const auto& row : scan.per_radius) {
      const auto x = grid.point(row.argmax_index);
      out_ << num(t) << ',' << quantity << ',' << num(exponent) << ',' << num(row.r) << ',' << num(row.value)
           << ',' << x[0] << ',' << x[1] << ',' << (grid.dim() == 3 ? x[2] : 0) << '\n';
    }
  }

 private:
  std::ofstream out_;
};

class SnapshotLog {
 public:
  explicit SnapshotLog(const fs::path& dir) : dir_(dir), index_(open_out(dir / "snapshots.csv")) {
    fs::create_directories(dir_ / "fields");
    index_ << "step,t,u,b\n";
  }
  void add(std::size_t step, double t, const VectorField& u, const VectorField& b) {
    char name[32];
    std::snprintf(name, sizeof name, "%06zu", step);
    const std::string u_rel = std::string("fields/u_") + name + ".bin";
    const std::string b_rel = std::string("fields/b_") + name + ".bin";
    write_dump(dir_ / u_rel, u, t);
    write_dump(dir_ / b_rel, b, t);
    index_ << step << ',' << num(t) << ',' << u_rel << ',' << b_rel << '\n';
    index_.flush();
  }

 private:
  fs::path dir_;
  std::ofstream index_;
};

struct Sample {
  double t, g, f, S, r;
};

void write_timeseries(const fs::path& p, const std::vector<Sample>& rows) {
  auto out = open_out(p);
  out << "t,g,f,S,argmax_r\n";
  for (const auto& s : rows)
    out << num(s.t) << ',' << num(s.g) << ',' << num(s.f) << ',' << num(s.S) << ',' << num(s.r) << '\n';
}

Json trajectory_json(const std::vector<Sample>& rows) {
  Json t = Json::array(), g = Json::array(), f = Json::array(), S = Json::array(), r = Json::array();
  for (const auto& s : rows) {
    t.push_back(s.t);
    g.push_back(finite_or_null(s.g));
    f.push_back(finite_or_null(s.f));
    S.push_back(finite_or_null(s.S));
    r.push_back(s.r);
  }
  return Json{{"t", t}, {"g", g}, {"f", f}, {"S", S}, {"argmax_r", r}};
}

Json constants_json(const CalibratedConstants& k) {
  auto one = [](const ConstantEstimate& e) {
    return Json{{"value", finite_or_null(e.value)}, {"identified", e.identified}, {"witness", e.witness}};
  };
  return Json{{"records", k.records},      {"beta", k.beta},
              {"C_A", one(k.C_A)},         {"c_D", one(k.c_D)},
              {"C_P", one(k.C_P)},         {"C_star", finite_or_null(k.C_star())},
              {"c_star", k.c_star()},      {"C_bar", finite_or_null(k.C_bar)}};
}

CorpusSpec corpus_spec(const Scenario& s, std::size_t count, std::uint64_t seed) {
  CorpusSpec cs;
  cs.dim = s.dim;
  cs.n = s.n;
  cs.length = s.length;
  cs.alpha = s.alpha;
  cs.beta = s.seminorm.beta;
  cs.count = count;
  cs.seed = seed;
  cs.b_kmax = s.drift.random_kmax;
  cs.b_slope = s.drift.random_slope;
  return cs;
}

// Steps with the admissible time step, halving on a late CFL violation.
SimState advance(const SimState& state, const DriftFn& drift, double dt) {
  for (int attempt = 0;; ++attempt) {
    try {
      return step(state, drift, dt);
    } catch (const CflViolation& e) {
      if (attempt == kCflRetries) throw NumericalFailure(std::string("time step collapsed: ") + e.what());
      dt = std::min(dt / 2, e.admissible_dt());
    }
  }
}

double chosen_dt(const Scenario& s, const VectorField& b, double remaining) {
  double dt = s.dt ? std::min(*s.dt, admissible_dt(b, std::numeric_limits<double>::infinity()))
                   : admissible_dt(b);
  if (!(dt > 0.0)) throw NumericalFailure("time step vanished");
  // Avoid a sliver of a final step.
  if (remaining <= dt * (1.0 + 1e-9)) return remaining;
  return dt;
}

struct ScanPair {
  ScanResult campanato;
  ScanResult drift;
};

ScanPair scan_state(const VectorField& u, const VectorField& b, const Scenario& s, const ScaleLadder& ladder) {
  return {seminorm_scan(u, s.alpha, ScanMode::campanato_sqrt, ladder), morrey_scan(b, s.seminorm, ladder)};
}

void write_last_good(const fs::path& out, const SimState& good, const VectorField& b) {
  fs::create_directories(out / "fields");
  write_dump(out / "fields" / "u_last_good.bin", good.u, good.t);
  write_dump(out / "fields" / "b_last_good.bin", b, good.t);
}

RunOutcome run_endpoint(const Scenario& s, const fs::path& out, const VectorField& u0, const DriftGenerator& gen,
                        const ScaleLadder& ladder) {
  const Grid grid = s.grid();
  const DriftFn drift = [&gen](double t, const VectorField& u) { return gen.at(t, u); };
  SeminormLog seminorms(out / "seminorms.csv");
  SnapshotLog snapshots(out);

  SimState state{0.0, u0, 0, {}};
  VectorField b = gen.at(0.0, u0);
  std::vector<double> times;
  std::vector<VectorField> bs;
  std::vector<ScanResult> campanato;
  std::vector<double> g;

  auto observe = [&](const SimState& st, const VectorField& bt) {
    auto scans = scan_state(st.u, bt, s, ladder);
    times.push_back(st.t);
    bs.push_back(bt);
    g.push_back(scans.drift.value);
    if (st.step_index % static_cast<std::size_t>(s.stride) == 0 || st.t >= s.T) {
      seminorms.add(st.t, "campanato", s.alpha, scans.campanato, grid);
      seminorms.add(st.t, "drift", s.seminorm.beta, scans.drift, grid);
      snapshots.add(st.step_index, st.t, st.u, bt);
    }
    campanato.push_back(std::move(scans.campanato));
  };
  observe(state, b);
  while (state.t < s.T) {
    std::optional<SimState> next;
    try {
      next = advance(state, drift, chosen_dt(s, b, s.T - state.t));
    } catch (const NumericalFailure&) {
      write_last_good(out, state, b);
      throw;
    }
    if (s.T - next->t <= 1e-12 * s.T) next->t = s.T;
    state = std::move(*next);
    b = gen.at(state.t, state.u);
    observe(state, b);
  }

  const double f0 = s.f0.value_or(campanato.front().value > 0.0 ? campanato.front().value : 1.0);
  EndpointInput in;
  in.times = times;
  in.snapshots = bs;
  in.T = s.T;
  in.alpha = s.alpha;
  in.B = std::max(*std::max_element(g.begin(), g.end()), std::numeric_limits<double>::min());
  in.C_star = s.endpoint.C_star;
  in.c_star = s.endpoint.c_star;
  in.eps = s.endpoint.eps.value_or(endpoint_epsilon(in.C_star, in.c_star, s.alpha));
  in.f0 = f0;
  const RadiusSchedule sched = s.endpoint.r_star;
  const double T = s.T;
  in.r_star = [sched, T](double t) { return sched(t, T); };
  const EndpointReport rep = endpoint_check(in, ladder);

  RunOutcome o;
  o.C_bar_source = "endpoint";
  o.f0 = f0;
  o.steps = state.step_index;
  o.t_end = state.t;
  o.endpoint_passed = rep.passed();
  std::vector<Sample> rows;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double S = campanato[k].value / rep.f[k];
    rows.push_back({times[k], g[k], rep.f[k], S, campanato[k].argmax_r});
    o.S_max = std::max(o.S_max, S);
    if (!o.breach && S > 1.0 + kBreachTolerance)
      o.breach = Breach{times[k], campanato[k].argmax, campanato[k].argmax_r, S, k > 0 ? times[k - 1] : 0.0};
  }
  o.f_T = rep.f.back();
  o.status = rep.passed() && !o.breach ? CertificateStatus::holding : CertificateStatus::breached;
  write_timeseries(out / "timeseries.csv", rows);

  Json j;
  j["alpha"] = s.alpha;
  j["beta"] = s.seminorm.beta;
  j["p"] = nullptr;
  j["f0"] = f0;
  j["status"] = o.status == CertificateStatus::holding ? "holding" : "breached";
  j["endpoint"] = Json{{"eps", rep.eps},
                       {"B", rep.B},
                       {"delta", rep.delta},
                       {"C_alpha", rep.C_alpha},
                       {"K", rep.K},
                       {"eps_rule", rep.eps_rule},
                       {"small_scale_sup", rep.small_scale_sup},
                       {"small_scale_ok", rep.small_scale_ok},
                       {"integral_finite", rep.integral.finite},
                       {"integral_value", finite_or_null(rep.integral.value)},
                       {"increment_ratio", rep.integral.increment_ratio},
                       {"passed", rep.passed()}};
  if (o.breach)
    j["breach"] = Json{{"t", o.breach->t}, {"x", point_json(o.breach->x, s.dim)}, {"r", o.breach->r},
                       {"S", o.breach->S}, {"t_last_holding", o.breach->t_last_holding}};
  else
    j["breach"] = nullptr;
  j["trajectory"] = trajectory_json(rows);
  write_text(out / "certificate.json", j.dump(2) + "\n");
  return o;
}

}  // namespace

VectorField initial_field(const Scenario& s) {
  const Grid grid = s.grid();
  const auto& in = s.initial;
  switch (in.kind) {
    case InitialKind::sine: return sine_mode(grid, in.mode, in.amplitude);
    case InitialKind::abs_sine: return abs_sine_power(grid, in.power, in.amplitude);
    case InitialKind::random: return random_solenoidal(grid, in.kmax, in.slope, in.seed, in.amplitude);
    case InitialKind::taylor_green: return taylor_green(grid, in.amplitude);
    case InitialKind::dump: break;
  }
  const auto meta = read_dump_meta(in.path);
  if (meta.dim != grid.dim() || meta.n != grid.points_per_axis() ||
      std::abs(meta.length - grid.side_length()) > 1e-12 * grid.side_length())
    throw InvalidInput("key 'initial.path': dump grid does not match the scenario grid");
  return read_vector_dump(in.path);
}

CalibratedConstants calibrate_scenario(const Scenario& s, const fs::path& out) {
  if (s.seminorm.endpoint()) throw InvalidInput("key 'beta': calibration needs beta > -1");
  const auto corpus = build_corpus(corpus_spec(s, s.calibrate_count, s.calibrate_seed));
  const auto k = calibrate_constants(corpus);
  Json j = constants_json(k);
  j["seed"] = s.calibrate_seed;
  j["alpha"] = s.alpha;
  if (s.calibrate_holdout > 0) {
    const auto held = build_corpus(corpus_spec(s, s.calibrate_holdout, s.calibrate_seed + 0x9e3779b9ULL));
    const auto cov = coverage(held, k);
    j["holdout"] = Json{{"records", held.size()},
                        {"advection", finite_or_null(cov.advection)},
                        {"dissipation", finite_or_null(cov.dissipation)},
                        {"pressure", finite_or_null(cov.pressure)},
                        {"worst", finite_or_null(cov.worst())}};
  }
  fs::create_directories(out);
  write_text(out / "calibration.json", j.dump(2) + "\n");
  return k;
}

RunOutcome run_scenario(const Scenario& s, const fs::path& out) {
  fs::create_directories(out);
  write_text(out / "config.txt", s.source.dump());
  const Grid grid = s.grid();
  const ScaleLadder ladder = s.ladder();
  const VectorField u0 = initial_field(s);
  const DriftGenerator gen(s.drift, ladder);
  if (s.seminorm.endpoint()) return run_endpoint(s, out, u0, gen, ladder);

  RunOutcome o;
  if (s.C_bar) {
    o.C_bar = *s.C_bar;
    o.C_bar_source = "config";
  } else if (s.drift.kind == DriftKind::none) {
    o.C_bar = 0.0;
    o.C_bar_source = "no drift";
  } else {
    const auto k = calibrate_scenario(s, out);
    if (!std::isfinite(k.C_bar)) throw NumericalFailure("calibrated growth constant is not finite");
    o.C_bar = k.C_bar;
    o.C_bar_source = "calibrated";
  }

  const DriftFn drift = [&gen](double t, const VectorField& u) { return gen.at(t, u); };
  SeminormLog seminorms(out / "seminorms.csv");
  SnapshotLog snapshots(out);

  SimState state{0.0, u0, 0, {}};
  VectorField b = gen.at(0.0, u0);
  ScanPair scans = scan_state(state.u, b, s, ladder);
  o.f0 = s.f0.value_or(scans.campanato.value > 0.0 ? scans.campanato.value : 1.0);
  Certificate cert(s.alpha, s.seminorm, o.C_bar, o.f0);

  std::vector<Sample> rows;
  auto log = [&](const SimState& st, const VectorField& bt, const ScanPair& sc, bool force) {
    const auto& rec = cert.record(st.t, sc.drift.value, as_breakdown(sc.campanato));
    rows.push_back({rec.t, rec.g, rec.f, rec.S, rec.argmax_r});
    o.S_max = std::max(o.S_max, rec.S);
    if (force || st.step_index % static_cast<std::size_t>(s.stride) == 0) {
      seminorms.add(st.t, "campanato", s.alpha, sc.campanato, grid);
      seminorms.add(st.t, "drift", s.seminorm.beta, sc.drift, grid);
      snapshots.add(st.step_index, st.t, st.u, bt);
    }
  };
  log(state, b, scans, true);
  if (rows.front().S > 1.0 + kBreachTolerance)
    cert.mark_breach({0.0, scans.campanato.argmax, scans.campanato.argmax_r, rows.front().S, 0.0});

  auto finish = [&]() {
    o.status = cert.status();
    o.breach = cert.breach();
    o.steps = state.step_index;
    o.t_end = state.t;
    o.f_T = rows.back().f;
    write_timeseries(out / "timeseries.csv", rows);
    Json j;
    j["alpha"] = s.alpha;
    j["beta"] = s.seminorm.beta;
    j["p"] = s.seminorm.p;
    j["C_bar"] = o.C_bar;
    j["C_bar_source"] = o.C_bar_source;
    j["f0"] = o.f0;
    j["status"] = o.status == CertificateStatus::holding ? "holding" : "breached";
    if (o.breach)
      j["breach"] = Json{{"t", o.breach->t}, {"x", point_json(o.breach->x, s.dim)}, {"r", o.breach->r},
                         {"S", o.breach->S}, {"t_last_holding", o.breach->t_last_holding}};
    else
      j["breach"] = nullptr;
    j["final"] = Json{{"t", o.t_end}, {"f", o.f_T}, {"S_max", o.S_max}, {"steps", o.steps}};
    j["trajectory"] = trajectory_json(rows);
    write_text(out / "certificate.json", j.dump(2) + "\n");
  };

  while (!cert.breach() && state.t < s.T) {
    const double dt = chosen_dt(s, b, s.T - state.t);
    std::optional<SimState> maybe;
    try {
      maybe = advance(state, drift, dt);
    } catch (const NumericalFailure&) {
      write_last_good(out, state, b);
      finish();
      throw;
    }
    SimState next = std::move(*maybe);
    if (s.T - next.t <= 1e-12 * s.T) next.t = s.T;
    VectorField b_next = gen.at(next.t, next.u);
    ScanPair next_scans = scan_state(next.u, b_next, s, ladder);
    const double S_next = next_scans.campanato.value / cert.f_at(next.t, next_scans.drift.value);

    if (S_next > 1.0 + kBreachTolerance) {
      // Bracket the first crossing by re-integrating from the last holding state.
      const double taken = next.t - state.t;
      double lo = 0.0, hi = taken;
      BreakdownScan at_hi{S_next, next_scans.campanato.argmax_index, next_scans.campanato.argmax,
                          next_scans.campanato.argmax_r};
      for (int it = 0; it < kBisectionSteps; ++it) {
        const double mid = 0.5 * (lo + hi);
        const SimState probe = step(state, drift, mid);
        const VectorField bp = gen.at(probe.t, probe.u);
        const auto sc = scan_state(probe.u, bp, s, ladder);
        const double S = sc.campanato.value / cert.f_at(probe.t, sc.drift.value);
        if (S > 1.0 + kBreachTolerance) {
          hi = mid;
          at_hi = {S, sc.campanato.argmax_index, sc.campanato.argmax, sc.campanato.argmax_r};
        } else {
          lo = mid;
        }
      }
      cert.mark_breach({state.t + hi, at_hi.argmax, at_hi.argmax_r, at_hi.S, state.t + lo});
      state = std::move(next);
      log(state, b_next, next_scans, true);
      finish();
      return o;
    }
    const bool last = next.t >= s.T;
    state = std::move(next);
    b = std::move(b_next);
    log(state, b, next_scans, last);
  }
  finish();
  return o;
}

std::vector<AuditRecord> audit_run(const fs::path& run_dir, std::size_t count) {
  if (!fs::exists(run_dir / "config.txt")) throw InvalidInput("not a run directory: " + run_dir.string());
  const Scenario s = parse_scenario(Config::load(run_dir / "config.txt"));
  if (s.seminorm.endpoint()) throw InvalidInput("key 'beta': audits need beta > -1");

  struct Candidate {
    double value;
    double t;
    std::size_t snapshot;
    LatticePoint x;
    double r;
  };
  std::vector<fs::path> u_paths, b_paths;
  std::vector<double> times;
  std::vector<Candidate> candidates;
  std::vector<AuditRecord> records;
  const ScaleLadder ladder = s.ladder();

  if (count > 0) {
    std::ifstream index(run_dir / "snapshots.csv");
    if (!index) throw InvalidInput("run directory has no snapshots: " + run_dir.string());
    std::string line;
    std::getline(index, line);
    while (std::getline(index, line)) {
      std::istringstream row(line);
      std::string step, t, u, b;
      std::getline(row, step, ',');
      std::getline(row, t, ',');
      std::getline(row, u, ',');
      std::getline(row, b, ',');
      if (!fs::exists(run_dir / u) || !fs::exists(run_dir / b))
        throw InvalidInput("missing snapshot file listed at t = " + t);
      times.push_back(parse_real("snapshots.t", t));
      u_paths.push_back(run_dir / u);
      b_paths.push_back(run_dir / b);
    }
    if (times.empty()) throw InvalidInput("run directory has no snapshots: " + run_dir.string());

    const Grid grid = s.grid();
    for (std::size_t k = 0; k < times.size(); ++k) {
      const auto scan = seminorm_scan(read_vector_dump(u_paths[k]), s.alpha, ScanMode::campanato_sqrt, ladder);
      for (const auto& row : scan.per_radius)
        candidates.push_back({row.value, times[k], k, grid.point(row.argmax_index), row.r});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    candidates.resize(std::min(count, candidates.size()));

    for (const auto& c : candidates) {
      const auto u = read_vector_dump(u_paths[c.snapshot]);
      const auto b = read_vector_dump(b_paths[c.snapshot]);
      AuditContext ctx;
      ctx.t = c.t;
      ctx.alpha = s.alpha;
      ctx.spec = s.seminorm;
      records.push_back(adp_decompose(u, b, c.x, c.r, ctx, ladder));
    }
  }

  auto csv = open_out(run_dir / "audit.csv");
  csv << "t,x,y,z,r,I,f,g,M,A_term,D_term,P_term,dI_dt_fd,closure_error,A_weight_form,laplacian_bound,"
         "grad_x_I,neighbor_slope,advection_shape,dissipation_shape,pressure_shape\n";
  double worst_closure = 0.0;
  bool d_nonpositive = true;
  for (const auto& r : records) {
    csv << num(r.t) << ',' << r.x[0] << ',' << r.x[1] << ',' << (s.dim == 3 ? r.x[2] : 0) << ',' << num(r.r) << ','
        << num(r.I) << ',' << num(r.f) << ',' << num(r.g) << ',' << num(r.M) << ',' << num(r.A_term) << ','
        << num(r.D_term) << ',' << num(r.P_term) << ',' << num(r.dI_dt_fd) << ',' << num(r.closure_error()) << ','
        << num(r.A_weight_form) << ',' << num(r.laplacian_bound) << ',' << num(r.grad_x_I) << ','
        << num(r.neighbor_slope) << ',' << num(r.advection_shape) << ',' << num(r.dissipation_shape) << ','
        << num(r.pressure_shape) << '\n';
    worst_closure = std::max(worst_closure, r.closure_error());
    d_nonpositive = d_nonpositive && r.D_term <= 0.0;
  }
  Json j;
  j["records"] = records.size();
  j["max_closure_error"] = worst_closure;
  j["all_D_nonpositive"] = d_nonpositive;
  j["constants"] = records.empty() ? Json(nullptr) : constants_json(calibrate_constants(records));
  write_text(run_dir / "audit.json", j.dump(2) + "\n");
  return records;
}

std::size_t sweep_runs(const Config& cfg, const fs::path& out) {
  Config base = cfg;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& [key, value] : cfg.with_prefix("sweep.")) {
    base.erase("sweep." + key);
    axes.emplace_back(key, cfg.list("sweep." + key));
  }
  fs::create_directories(out);
  auto csv = open_out(out / "summary.csv");
  csv << "cell";
  for (const auto& a : axes) csv << ',' << a.first;
  csv << ",status,exit_code,C_bar,f0,f_T,f_closed_form,f_rel_diff,S_max,message\n";

  std::size_t cells = axes.empty() ? 0 : 1;
  for (const auto& a : axes) cells *= a.second.size();

  for (std::size_t cell = 0; cell < cells; ++cell) {
    Config c = base;
    std::vector<std::string> chosen;
    std::size_t rest = cell;
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
      const auto& vals = it->second;
      chosen.insert(chosen.begin(), vals[rest % vals.size()]);
      rest /= vals.size();
    }
    for (std::size_t a = 0; a < axes.size(); ++a) c.set(axes[a].first, chosen[a]);

    char dir[32];
    std::snprintf(dir, sizeof dir, "cell_%04zu", cell);
    std::string status, message;
    int code = kExitOk;
    double C_bar = NAN, f0 = NAN, f_T = NAN, closed = NAN, S_max = NAN;
    try {
      const Scenario s = parse_scenario(c);
      const RunOutcome o = run_scenario(s, out / dir);
      status = o.status == CertificateStatus::holding ? "holding" : "breached";
      code = o.exit_code();
      C_bar = o.C_bar;
      f0 = o.f0;
      f_T = o.f_T;
      S_max = o.S_max;
      if (!s.seminorm.endpoint()) {
        const bool flat = s.drift.kind == DriftKind::none ||
                          (s.drift.kind != DriftKind::self_coupled && s.drift.envelope.shape == Envelope::Shape::constant);
        const double G = s.drift.kind == DriftKind::none ? 0.0 : s.drift.envelope.level;
        if (flat) closed = f0 * std::exp(2.0 * C_bar * std::pow(G, s.seminorm.p) * o.t_end);
      }
    } catch (const InvalidInput& e) {
      status = "invalid";
      code = kExitInvalid;
      message = e.what();
    } catch (const NumericalFailure& e) {
      status = "failed";
      code = kExitNumerical;
      message = e.what();
    }
    for (auto& ch : message)
      if (ch == ',' || ch == '\n') ch = ';';
    csv << dir;
    for (const auto& v : chosen) csv << ',' << v;
    csv << ',' << status << ',' << code << ',' << num(C_bar) << ',' << num(f0) << ',' << num(f_T) << ','
        << num(closed) << ',' << num(std::abs(f_T / closed - 1.0)) << ',' << num(S_max) << ',' << message << '\n';
    csv.flush();
  }
  return cells;
}

}  // namespace holderlab
