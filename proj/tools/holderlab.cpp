#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "holderlab/config.hpp"
#include "holderlab/errors.hpp"
#include "holderlab/parallel.hpp"
#include "holderlab/runner.hpp"
#include "holderlab/scenario.hpp"

namespace {

using namespace holderlab;

struct Options {
  std::string config;
  std::string out;
  int threads = 1;
  long long seed = -1;
  std::size_t count = 20;
};

Config load(const Options& o) {
  Config cfg = Config::load(o.config);
  if (o.seed >= 0) cfg.set("seed", std::to_string(o.seed));
  return cfg;
}

const char* status_word(const RunOutcome& r) {
  return r.status == CertificateStatus::holding ? "holding" : "breached";
}

int dispatch(const std::string& command, const Options& o) {
  set_thread_count(o.threads);
  if (command == "run") {
    const Scenario s = parse_scenario(load(o));
    const RunOutcome r = run_scenario(s, o.out);
    std::printf("status %s  t %.6g  steps %zu  C_bar %.6g  f %.6g  S_max %.6g\n", status_word(r), r.t_end, r.steps,
                r.C_bar, r.f_T, r.S_max);
    if (r.breach)
      std::printf("breach at t %.9g (last holding %.9g), r %.6g, S %.9g\n", r.breach->t, r.breach->t_last_holding,
                  r.breach->r, r.breach->S);
    return r.exit_code();
  }
  if (command == "audit") {
    const auto records = audit_run(o.out, o.count);
    std::printf("audited %zu records in %s\n", records.size(), o.out.c_str());
    return kExitOk;
  }
  if (command == "sweep") {
    const std::size_t cells = sweep_runs(load(o), o.out);
    std::printf("swept %zu cells into %s/summary.csv\n", cells, o.out.c_str());
    return kExitOk;
  }
  const Scenario s = parse_scenario(load(o));
  const auto k = calibrate_scenario(s, o.out);
  std::printf("C_A %.6g  c_D %.6g  C_P %.6g  C_bar %.6g  (%zu records)\n", k.C_A.value, k.c_D.value, k.C_P.value,
              k.C_bar, k.records);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drift-diffusion simulator with a Hoelder persistence certificate"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "Scenario file (key = value)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output directory")->required();
    sub->add_option("--threads", o.threads, "Worker threads for scans")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Overrides the scenario seed")->check(CLI::NonNegativeNumber);
  };
  common(app.add_subcommand("run", "Simulate and certify a scenario"), true);
  auto* audit = app.add_subcommand("audit", "Decompose dI/dt at the extremal points of a run (--out is the run)");
  common(audit, false);
  audit->add_option("--count", o.count, "Number of extremal points");
  common(app.add_subcommand("sweep", "Run the cross product of sweep.<key> overrides"), true);
  common(app.add_subcommand("calibrate", "Calibrate the A/D/P term constants on a random corpus"), true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, o);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitInvalid;
  } catch (const NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
