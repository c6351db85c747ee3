#include "holderlab/endpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holderlab/campanato.hpp"
#include "holderlab/errors.hpp"
#include "holderlab/scan.hpp"

namespace holderlab {

namespace {

constexpr int kPanelsPerSegment = 256;
constexpr double kDivergentRatio = 0.99;

double positive_radius(const std::function<double(double)>& r_star, double t) {
  const double r = r_star(t);
  if (!(r > 0.0) || !std::isfinite(r))
    throw InvalidInput("endpoint: r_star must be positive and finite on [0, T)");
  return r;
}

// Trapezoidal int_a^b r_star^{-2} with kPanelsPerSegment panels.
double segment_integral(const std::function<double(double)>& r_star, double a, double b) {
  if (b <= a) return 0.0;
  const double dt = (b - a) / kPanelsPerSegment;
  long double acc = 0.0L;
  double prev = 1.0 / std::pow(positive_radius(r_star, a), 2);
  for (int i = 1; i <= kPanelsPerSegment; ++i) {
    const double cur = 1.0 / std::pow(positive_radius(r_star, a + i * dt), 2);
    acc += 0.5L * dt * (prev + cur);
    prev = cur;
  }
  return static_cast<double>(acc);
}

}  // namespace

double endpoint_delta(double eps, double B, double alpha) {
  if (!(eps > 0.0) || !(B > 0.0)) throw InvalidInput("endpoint: eps and B must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  return std::min(std::exp2(std::log2(eps / B) / (3.0 - alpha)), 0.5);
}

double endpoint_tail_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  return std::pow(2.0, alpha - 3.0) / (3.0 - alpha);
}

double endpoint_epsilon(double C_star, double c_star, double alpha) {
  if (!(C_star > 0.0)) throw InvalidInput("endpoint: C_star must be positive");
  if (!(c_star >= 0.0)) throw InvalidInput("endpoint: c_star must be nonnegative");
  return c_star / (C_star * (3.0 + 2.0 * endpoint_tail_constant(alpha)));
}

IntegralTest inverse_square_integral(const std::function<double(double)>& r_star, double T, int levels) {
  if (!(T > 0.0)) throw InvalidInput("endpoint: T must be positive");
  if (levels < 3) throw InvalidInput("endpoint: need at least three refinement levels");
  IntegralTest out;
  long double total = 0.0L;
  double prev_increment = 0.0, last_increment = 0.0;
  double lo = 0.0;
  for (int k = 1; k <= levels; ++k) {
    const double hi = T - T * std::ldexp(1.0, -k);
    const double inc = segment_integral(r_star, lo, hi);
    total += inc;
    prev_increment = last_increment;
    last_increment = inc;
    lo = hi;
  }
  out.increment_ratio = prev_increment > 0.0 ? last_increment / prev_increment : 0.0;
  out.finite = out.increment_ratio < kDivergentRatio;
  const double q = out.increment_ratio;
  // A geometric tail closes the sum when the increments keep shrinking.
  out.value = out.finite ? static_cast<double>(total) + last_increment * q / (1.0 - q)
                         : std::numeric_limits<double>::infinity();
  return out;
}

EndpointReport endpoint_check(const EndpointInput& in, const ScaleLadder& ladder) {
  if (!in.r_star) throw InvalidInput("endpoint: r_star is required");
  if (in.times.size() != in.snapshots.size()) throw InvalidInput("endpoint: times and snapshots differ in length");
  if (!(in.f0 > 0.0)) throw InvalidInput("endpoint: f0 must be positive");
  EndpointReport rep;
  rep.alpha = in.alpha;
  rep.eps = in.eps;
  rep.B = in.B;
  rep.delta = endpoint_delta(in.eps, in.B, in.alpha);
  rep.C_alpha = endpoint_tail_constant(in.alpha);
  rep.K = in.C_star * in.B * (3.0 + rep.C_alpha) / (rep.delta * rep.delta);
  rep.eps_rule = endpoint_epsilon(in.C_star, in.c_star, in.alpha);

  for (std::size_t s = 0; s < in.times.size(); ++s) {
    const double t = in.times[s];
    if (t < 0.0 || t > in.T) throw InvalidInput("endpoint: snapshot time outside [0, T]");
    if (s > 0 && t <= in.times[s - 1]) throw InvalidInput("endpoint: snapshot times must increase");
    const double rs = t < in.T ? positive_radius(in.r_star, t) : std::max(in.r_star(t), 0.0);
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      const double r = ladder.radius(k);
      if (r >= rs) continue;
      const auto m = morrey_map(in.snapshots[s], ladder.ball(k), SeminormCase::morrey);
      rep.small_scale_sup = std::max(rep.small_scale_sup, r * *std::max_element(m.begin(), m.end()));
    }
  }
  rep.small_scale_ok = rep.small_scale_sup <= in.eps;
  rep.integral = inverse_square_integral(in.r_star, in.T);

  long double acc = 0.0L;
  double t_prev = 0.0;
  for (double t : in.times) {
    double f;
    if (t < in.T) {
      acc += segment_integral(in.r_star, t_prev, t);
      t_prev = t;
      f = in.f0 * std::exp(rep.K * static_cast<double>(acc));
    } else {
      f = rep.integral.finite ? in.f0 * std::exp(rep.K * rep.integral.value)
                              : std::numeric_limits<double>::infinity();
    }
    rep.times.push_back(t);
    rep.f.push_back(f);
  }
  return rep;
}

double endpoint_norm(const VectorField& b, const ScaleLadder& ladder) {
  return morrey_scan(b, SeminormSpec::from_beta(-1.0), ladder).value;
}

}  // namespace holderlab
