#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "holderlab/audit.hpp"
#include "holderlab/certificate.hpp"
#include "holderlab/scenario.hpp"

namespace holderlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBreached = 2;
inline constexpr int kExitInvalid = 3;
inline constexpr int kExitNumerical = 4;

struct RunOutcome {
  CertificateStatus status = CertificateStatus::holding;
  double C_bar = 0.0;
  std::string C_bar_source;
  double f0 = 0.0;
  double f_T = 0.0;
  double S_max = 0.0;
  double t_end = 0.0;
  std::size_t steps = 0;
  std::optional<Breach> breach;
  /// Set for beta = -1 runs.
  std::optional<bool> endpoint_passed;
  int exit_code() const noexcept { return status == CertificateStatus::holding ? kExitOk : kExitBreached; }
};

/// Initial solution described by the scenario.
VectorField initial_field(const Scenario& s);

/// Simulates, scans and certifies; writes the run directory. A non-finite
/// state aborts with NumericalFailure after the last good snapshot is written.
RunOutcome run_scenario(const Scenario& s, const std::filesystem::path& out);

/// Random corpus calibration for the scenario's grid, alpha and beta; writes
/// calibration.json into `out` (created if needed).
CalibratedConstants calibrate_scenario(const Scenario& s, const std::filesystem::path& out);

/// Audits the `count` largest Campanato ratios over the stored snapshots of a
/// run directory; writes audit.csv and audit.json there.
std::vector<AuditRecord> audit_run(const std::filesystem::path& run_dir, std::size_t count);

/// Cross product of `sweep.<key> = v1, v2, ...` overrides applied to the
/// remaining keys; one run directory and summary row per cell. Returns the
/// number of cells.
std::size_t sweep_runs(const Config& cfg, const std::filesystem::path& out);

}  // namespace holderlab
