#include "holderlab/certificate.hpp"

#include <cmath>
#include <limits>

#include "holderlab/errors.hpp"
#include "holderlab/scan.hpp"

namespace holderlab {

namespace {

void require_finite_beta(const SeminormSpec& spec, const char* op) {
  if (spec.endpoint())
    throw InvalidInput(std::string(op) + ": beta = -1 has no growth law; use the endpoint check");
}

}  // namespace

double g_of_t(const VectorField& b, const SeminormSpec& spec, const ScaleLadder& ladder) {
  return morrey_scan(b, spec, ladder).value;
}

std::vector<double> f_trajectory(std::span<const double> times, std::span<const double> g,
                                 const SeminormSpec& spec, double C_bar, double f0) {
  require_finite_beta(spec, "f_trajectory");
  if (times.size() != g.size()) throw InvalidInput("f_trajectory: times and g differ in length");
  if (!(f0 > 0.0)) throw InvalidInput("f_trajectory: f0 must be positive");
  if (!(C_bar >= 0.0)) throw InvalidInput("f_trajectory: C_bar must be nonnegative");
  std::vector<double> f;
  f.reserve(times.size());
  long double integral = 0.0L;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(g[k] >= 0.0)) throw InvalidInput("f_trajectory: g must be nonnegative");
    if (k > 0) {
      const double dt = times[k] - times[k - 1];
      if (dt < 0.0) throw InvalidInput("f_trajectory: times must be nondecreasing");
      integral += 0.5L * dt * (std::pow(g[k - 1], spec.p) + std::pow(g[k], spec.p));
    }
    f.push_back(f0 * std::exp(static_cast<double>(2.0L * C_bar * integral)));
  }
  return f;
}

BreakdownScan breakdown_scan(const VectorField& u, double f_t, double alpha, const ScaleLadder& ladder) {
  if (!(f_t > 0.0)) throw InvalidInput("breakdown_scan: f must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  const auto res = seminorm_scan(u, alpha, ScanMode::campanato_sqrt, ladder);
  return {res.value / f_t, res.argmax_index, res.argmax, res.argmax_r};
}

double c_bar(double C_star, double c_star, double beta) {
  if (!(beta > -1.0 && beta <= 1.0)) throw InvalidInput("c_bar: beta must lie in (-1, 1]");
  if (!(C_star >= 0.0) || !(c_star >= 0.0)) throw InvalidInput("c_bar: constants must be nonnegative");
  if (C_star == 0.0) return 0.0;
  if (beta == 1.0) return C_star;
  if (c_star == 0.0) return std::numeric_limits<double>::infinity();
  const double p = 2.0 / (1.0 + beta);
  return c_star * (1.0 + beta) / (1.0 - beta) * std::pow((1.0 - beta) * C_star / (2.0 * c_star), p);
}

Certificate::Certificate(double alpha, SeminormSpec spec, double C_bar, double f0)
    : alpha_(alpha), spec_(spec), C_bar_(C_bar), f0_(f0) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  require_finite_beta(spec_, "certificate");
  if (!(C_bar >= 0.0) || !std::isfinite(C_bar)) throw InvalidInput("certificate: C_bar must be finite and >= 0");
  if (!(f0 > 0.0) || !std::isfinite(f0)) throw InvalidInput("certificate: f0 must be finite and positive");
}

double Certificate::f_at(double t, double g_t) const {
  long double growth = log_growth_;
  if (!samples_.empty()) {
    const auto& last = samples_.back();
    growth += 0.5L * (t - last.t) * (std::pow(last.g, spec_.p) + std::pow(g_t, spec_.p));
  }
  return f0_ * std::exp(static_cast<double>(2.0L * C_bar_ * growth));
}

const TrajectorySample& Certificate::record(double t, double g, const BreakdownScan& unit_scan) {
  if (!(g >= 0.0)) throw InvalidInput("certificate: g must be nonnegative");
  if (!samples_.empty()) {
    const auto& last = samples_.back();
    if (t < last.t) throw InvalidInput("certificate: time must not decrease");
    log_growth_ += 0.5L * (t - last.t) * (std::pow(last.g, spec_.p) + std::pow(g, spec_.p));
  }
  TrajectorySample s;
  s.t = t;
  s.g = g;
  s.f = f0_ * std::exp(static_cast<double>(2.0L * C_bar_ * log_growth_));
  s.S = unit_scan.S / s.f;
  s.argmax = unit_scan.argmax;
  s.argmax_r = unit_scan.argmax_r;
  samples_.push_back(s);
  return samples_.back();
}

double bmo_shell_ratio(const VectorField& b, const ScaleLadder& ladder) {
  const double bmo = morrey_scan(b, SeminormSpec::from_beta(0.0), ladder).value;
  const Grid& grid = b.grid();
  const int dim = grid.dim();
  auto ball_means = [&](const BallStencil& ball) {
    std::vector<Vec> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto p = grid.point(i);
      Vec m{0.0, 0.0, 0.0};
      for (const auto& d : ball.offsets) {
        const auto q = grid.shifted(p, d);
        for (int c = 0; c < dim; ++c) m[c] += b[c][q];
      }
      for (int c = 0; c < dim; ++c) m[c] /= static_cast<double>(ball.size());
      out[i] = m;
    }
    return out;
  };
  double worst = 0.0;
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    if (std::abs(ladder.radius(k - 1) - 2.0 * ladder.radius(k)) > 1e-12 * ladder.radius(k - 1)) continue;
    const auto wide = ball_means(ladder.ball(k - 1));
    const auto narrow = ball_means(ladder.ball(k));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double s = 0.0;
      for (int c = 0; c < dim; ++c) s += (wide[i][c] - narrow[i][c]) * (wide[i][c] - narrow[i][c]);
      worst = std::max(worst, std::sqrt(s));
    }
  }
  if (worst == 0.0) return 0.0;
  return bmo > 0.0 ? worst / bmo : std::numeric_limits<double>::infinity();
}

}  // namespace holderlab
