#pragma once

#include <optional>
#include <span>
#include <vector>

#include "holderlab/field.hpp"
#include "holderlab/ladder.hpp"

namespace holderlab {

/// Drift seminorm at one time: the scan value of b for the case of `spec`.
double g_of_t(const VectorField& b, const SeminormSpec& spec, const ScaleLadder& ladder);

/// f(t_k) = f0 exp(2 C_bar int_0^{t_k} g^{2/(1+beta)}), trapezoidal in time.
/// `times` nondecreasing, `g` >= 0, same length. Rejects beta = -1.
std::vector<double> f_trajectory(std::span<const double> times, std::span<const double> g,
                                 const SeminormSpec& spec, double C_bar, double f0);

/// sup_{x,r} sqrt(I(x,r)) / (f r^alpha) with its argmax.
struct BreakdownScan {
  double S = 0.0;
  std::size_t argmax_index = 0;
  LatticePoint argmax{0, 0, 0};
  double argmax_r = 0.0;
};

/// Breach threshold on S, absorbing quadrature noise.
inline constexpr double kBreachTolerance = 1e-6;

BreakdownScan breakdown_scan(const VectorField& u, double f_t, double alpha, const ScaleLadder& ladder);

/// sup_{r > 0} (C_star g r^{beta-1} - c_star r^{-2}) / g^{2/(1+beta)}, the
/// growth rate of log f. For beta = 1 this is C_star; for beta < 1 it is
/// c_star (1+beta)/(1-beta) ((1-beta) C_star / (2 c_star))^{2/(1+beta)}.
/// Infinite when c_star = 0 < C_star and beta < 1; zero when C_star = 0.
double c_bar(double C_star, double c_star, double beta);

enum class CertificateStatus { holding, breached };

struct TrajectorySample {
  double t = 0.0;
  double g = 0.0;
  double f = 0.0;
  double S = 0.0;
  LatticePoint argmax{0, 0, 0};
  double argmax_r = 0.0;
};

struct Breach {
  double t = 0.0;
  LatticePoint x{0, 0, 0};
  double r = 0.0;
  double S = 0.0;
  /// Last time known to satisfy S <= 1 + tolerance.
  double t_last_holding = 0.0;
};

/// The persistence claim for one run: f grows by the closed form, and the
/// Campanato ratio S stays at most 1.
class Certificate {
 public:
  Certificate(double alpha, SeminormSpec spec, double C_bar, double f0);

  double alpha() const noexcept { return alpha_; }
  const SeminormSpec& spec() const noexcept { return spec_; }
  double C_bar() const noexcept { return C_bar_; }
  double f0() const noexcept { return f0_; }

  /// f at time t given g on the recorded grid plus (t, g_t); does not record.
  double f_at(double t, double g_t) const;

  /// Appends a sample (t must not decrease). `unit_scan` is the breakdown scan
  /// taken with f = 1; S is rescaled by the current f.
  const TrajectorySample& record(double t, double g, const BreakdownScan& unit_scan);
  void mark_breach(const Breach& b) { breach_ = b; }

  CertificateStatus status() const noexcept {
    return breach_ ? CertificateStatus::breached : CertificateStatus::holding;
  }
  const std::optional<Breach>& breach() const noexcept { return breach_; }
  const std::vector<TrajectorySample>& trajectory() const noexcept { return samples_; }

 private:
  double alpha_;
  SeminormSpec spec_;
  double C_bar_;
  double f0_;
  long double log_growth_ = 0.0L;
  std::vector<TrajectorySample> samples_;
  std::optional<Breach> breach_;
};

/// max over x and ladder pairs (r, 2r) of |b_bar(x, 2r) - b_bar(x, r)| divided
/// by the BMO seminorm of b (plain ball means). Zero for constant drifts.
double bmo_shell_ratio(const VectorField& b, const ScaleLadder& ladder);

}  // namespace holderlab
