#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "holderlab/field.hpp"
#include "holderlab/ladder.hpp"

namespace holderlab {

/// Contributions to dI/dt at one (x, r): dI/dt = A + D + P with
/// A = 2 sum w (u - u_bar).(-(b.grad)u), D = 2 sum w (u - u_bar).lap u,
/// P = 2 sum w (u - u_bar).grad p, using the solver's dealiased operators.
struct AuditRecord {
  double t = 0.0;
  LatticePoint x{0, 0, 0};
  double r = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  double I = 0.0;
  double f = 0.0;
  double g = 0.0;
  double M = 0.0;  ///< drift functional at (x, r) for the seminorm case

  double A_term = 0.0;
  double D_term = 0.0;
  double P_term = 0.0;
  /// (1/r) sum |u - u_bar|^2 (b - b_bar).grad phi: the advection term after
  /// moving the gradient onto the weight, exact only where grad_x I = 0.
  double A_weight_form = 0.0;
  /// One-sided second-order difference of I over two solver microsteps.
  double dI_dt_fd = 0.0;
  double fd_step = 0.0;
  /// -2 sum w |grad u - mean grad u|^2, an upper bound for D at x-maxima of I.
  double laplacian_bound = 0.0;
  /// |grad_x I| and the largest one-cell difference quotient of I around x.
  double grad_x_I = 0.0;
  double neighbor_slope = 0.0;

  /// Right-hand sides of the three term bounds without their constants:
  /// r^{2a-1} f^2 M, f^2 r^{2a-2}, f^2 g r^{2a+b-1}.
  double advection_shape = 0.0;
  double dissipation_shape = 0.0;
  double pressure_shape = 0.0;

  double sum() const noexcept { return A_term + D_term + P_term; }
  /// |A + D + P - dI_dt_fd| / max(|A|, |D|, |P|, |dI_dt_fd|).
  double closure_error() const noexcept;
};

struct AuditContext {
  double t = 0.0;
  double alpha = 0.5;
  SeminormSpec spec;
  /// Hoelder amplitude; <= 0 selects the tight value sqrt(I) / r^alpha.
  double f = 0.0;
  /// Drift seminorm; < 0 selects a fresh scan of b on `ladder`.
  double g = -1.0;
};

/// Decomposes dI/dt at (x, r). r must be a ladder radius (>= 4h). The
/// finite-difference check advances u twice by 1e-4 h^2 with b frozen.
AuditRecord adp_decompose(const VectorField& u, const VectorField& b, const LatticePoint& x,
                          double r, const AuditContext& ctx, const ScaleLadder& ladder);

struct ConstantEstimate {
  double value = 0.0;
  bool identified = false;
  std::size_t witness = 0;  ///< record index attaining the extreme ratio
};

/// Smallest constants with A <= C_A shape_A, D <= -c_D shape_D,
/// P <= C_P shape_P on every record, and the resulting growth constant.
struct CalibratedConstants {
  ConstantEstimate C_A;
  ConstantEstimate c_D;
  ConstantEstimate C_P;
  double beta = 0.0;
  double C_star() const noexcept { return C_A.value + C_P.value; }
  double c_star() const noexcept { return c_D.value; }
  double C_bar = 0.0;
  std::size_t records = 0;
};

CalibratedConstants calibrate_constants(std::span<const AuditRecord> corpus);

/// Worst ratio of each record's term to its calibrated bound over a corpus:
/// max A/(C_A shape), max c_D shape/(-D) and max P/(C_P shape). A value <= 1
/// means every record satisfies the inequality.
struct CoverageRatios {
  double advection = 0.0;
  double dissipation = 0.0;
  double pressure = 0.0;
  double worst() const noexcept;
};

CoverageRatios coverage(std::span<const AuditRecord> corpus, const CalibratedConstants& constants);

/// Random audit corpus: each record pairs a random band-limited solution with
/// a random stream drift rescaled to a seminorm drawn from [g_min, g_max],
/// audited at the breakdown-scan argmax of u with the tight amplitude.
struct CorpusSpec {
  int dim = 2;
  int n = 64;
  double length = 6.283185307179586;
  double alpha = 0.5;
  double beta = 0.0;
  std::size_t count = 200;
  std::uint64_t seed = 1;
  int u_kmax = 4;
  double u_slope = 1.0;
  int b_kmax = 3;
  double b_slope = 1.0;
  double g_min = 0.5;
  double g_max = 2.0;
};

std::vector<AuditRecord> build_corpus(const CorpusSpec& spec);

}  // namespace holderlab
