#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "holderlab/audit.hpp"
#include "holderlab/certificate.hpp"
#include "holderlab/drift.hpp"
#include "holderlab/endpoint.hpp"
#include "holderlab/errors.hpp"
#include "holderlab/generators.hpp"
#include "holderlab/operators.hpp"
#include "holderlab/scan.hpp"
#include "holderlab/stepper.hpp"
#include "support.hpp"

using namespace holderlab;
using namespace holderlab::testing;

namespace {

const Grid g64(2, 64, 2 * kPi);
const ScaleLadder ladder64 = ScaleLadder::dyadic(g64);

VectorField constant_field(const Grid& g, double a, double b) {
  return sample_vec(g, {[a](const Vec&) { return a; }, [b](const Vec&) { return b; }});
}

// Sawtooth with unit ramps of length `period`, kinks on multiples of period.
double sawtooth(double t, double period) {
  const double s = t / period;
  return s - std::floor(s);
}

// Classical RK4 for f' = 2 C g(t)^p f, restarted on each ramp so that no
// step straddles a reset.
double rk4_oracle(double T, double dt, double C, double p, double f0, double period) {
  auto rhs = [&](double s, double f) { return 2.0 * C * std::pow(s / period, p) * f; };
  double f = f0;
  const int ramps = static_cast<int>(std::llround(T / period));
  const int steps = static_cast<int>(std::llround(period / dt));
  for (int j = 0; j < ramps; ++j) {
    for (int k = 0; k < steps; ++k) {
      const double s = k * dt;
      const double k1 = rhs(s, f);
      const double k2 = rhs(s + dt / 2, f + dt / 2 * k1);
      const double k3 = rhs(s + dt / 2, f + dt / 2 * k2);
      const double k4 = rhs(s + dt, f + dt * k3);
      f += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
  }
  return f;
}

AuditRecord synthetic(double A, double D, double P, double shape) {
  AuditRecord r;
  r.A_term = A;
  r.D_term = D;
  r.P_term = P;
  r.advection_shape = shape;
  r.dissipation_shape = shape;
  r.pressure_shape = shape;
  return r;
}

}  // namespace

TEST_CASE("g_of_t examples") {
  const auto spec0 = SeminormSpec::from_beta(0.0);
  CHECK(g_of_t(VectorField(g64), spec0, ladder64) == 0.0);
  CHECK(g_of_t(constant_field(g64, 0.3, -1.2), SeminormSpec::from_beta(0.5), ladder64) < 1e-12);

  DriftSpec ds;
  ds.kind = DriftKind::static_stream;
  ds.seed = 7;
  ds.envelope.level = 1.7;
  ds.seminorm = spec0;
  const auto b = make_drift(ds, g64, 0.0, ladder64);
  CHECK(std::abs(g_of_t(b, spec0, ladder64) / 1.7 - 1.0) <= 0.02);
}

TEST_CASE("f_trajectory examples") {
  const auto spec0 = SeminormSpec::from_beta(0.0);
  std::vector<double> t, g0, gG;
  for (int k = 0; k <= 40; ++k) {
    t.push_back(0.025 * k);
    g0.push_back(0.0);
    gG.push_back(1.3);
  }
  for (double f : f_trajectory(t, g0, spec0, 0.8, 2.5)) CHECK(f == 2.5);

  const auto f = f_trajectory(t, gG, spec0, 0.8, 2.5);
  for (std::size_t k = 0; k < t.size(); ++k)
    CHECK(std::abs(f[k] / (2.5 * std::exp(2 * 0.8 * 1.3 * 1.3 * t[k])) - 1.0) < 1e-12);

  CHECK_THROWS_AS(f_trajectory(t, gG, SeminormSpec::from_beta(-1.0), 0.8, 1.0), InvalidInput);
  CHECK_THROWS_AS(f_trajectory(t, gG, spec0, 0.8, 0.0), InvalidInput);
  std::vector<double> neg = gG;
  neg[3] = -0.1;
  CHECK_THROWS_AS(f_trajectory(t, neg, spec0, 0.8, 1.0), InvalidInput);
}

TEST_CASE("f_trajectory matches an RK4 oracle on a sawtooth drift budget") {
  const double T = 1.0, dt = 2.5e-4, period = 0.25, C = 0.5, f0 = 1.5;
  for (double beta : {0.0, 0.5, -0.5}) {
    const auto spec = SeminormSpec::from_beta(beta);
    // Each kink is sampled twice (ramp top, then reset) so no panel straddles a jump.
    std::vector<double> tt, gg;
    const int steps = static_cast<int>(std::llround(T / dt));
    for (int k = 0; k <= steps; ++k) {
      const double s = sawtooth(k * dt, period);
      const bool kink = k > 0 && s < 1e-9;
      tt.push_back(k * dt);
      gg.push_back(kink ? 1.0 : s);
      if (kink && k < steps) {
        tt.push_back(k * dt);
        gg.push_back(0.0);
      }
    }
    const auto f = f_trajectory(tt, gg, spec, C, f0);
    const double oracle = rk4_oracle(T, dt / 100, C, spec.p, f0, period);
    CHECK(std::abs(f.back() / oracle - 1.0) < 1e-6);
  }
}

TEST_CASE("f_trajectory is monotone and multiplicative over concatenation") {
  const auto spec = SeminormSpec::from_beta(0.25);
  std::vector<double> t, g;
  for (int k = 0; k <= 200; ++k) {
    t.push_back(0.005 * k);
    g.push_back(1.0 + 0.7 * std::sin(13.0 * k * 0.005));
  }
  const auto f = f_trajectory(t, g, spec, 0.3, 1.0);
  for (std::size_t k = 1; k < f.size(); ++k) CHECK(f[k] >= f[k - 1]);

  const std::size_t mid = 77;
  const auto first = f_trajectory(std::span(t).subspan(0, mid + 1), std::span(g).subspan(0, mid + 1), spec, 0.3, 1.0);
  const auto second = f_trajectory(std::span(t).subspan(mid), std::span(g).subspan(mid), spec, 0.3, first.back());
  CHECK(std::abs(second.back() / f.back() - 1.0) < 1e-13);
}

TEST_CASE("breakdown_scan examples") {
  CHECK(breakdown_scan(VectorField(g64), 1.0, 0.5, ladder64).S == 0.0);

  const auto u = sine_mode(g64, 1, 1.0);
  const double A = holder_from_campanato(u, 0.5, ladder64);
  CHECK(std::abs(breakdown_scan(u, 2 * A, 0.5, ladder64).S - 0.5) < 1e-14);

  const auto hot = breakdown_scan(u, 1e-3, 0.5, ladder64);
  CHECK(hot.S > 1.0 + kBreachTolerance);
  CHECK(hot.argmax_r == ladder64.radius(0));

  CHECK_THROWS_AS(breakdown_scan(u, 0.0, 0.5, ladder64), InvalidInput);
  CHECK_THROWS_AS(breakdown_scan(u, -1.0, 0.5, ladder64), InvalidInput);
}

TEST_CASE("c_bar closed forms") {
  CHECK(c_bar(1.7, 0.4, 1.0) == 1.7);
  CHECK(std::abs(c_bar(1.7, 0.4, 0.0) - 1.7 * 1.7 / (4 * 0.4)) < 1e-14);
  CHECK(c_bar(0.0, 0.4, 0.3) == 0.0);
  CHECK(std::isinf(c_bar(1.0, 0.0, 0.3)));
  CHECK_THROWS_AS(c_bar(1.0, 1.0, -1.0), InvalidInput);

  // Brute-force maximization of (C g r^{beta-1} - c r^{-2}) / g^p over r.
  for (double beta : {-0.6, -0.2, 0.0, 0.4, 0.8}) {
    const double C = 0.9, c = 2.3, g = 1.9, p = 2.0 / (1.0 + beta);
    double best = -std::numeric_limits<double>::infinity();
    for (double lr = -12.0; lr <= 12.0; lr += 1e-5) {
      const double r = std::exp(lr);
      best = std::max(best, C * g * std::pow(r, beta - 1) - c / (r * r));
    }
    CHECK(std::abs(best / std::pow(g, p) / c_bar(C, c, beta) - 1.0) < 1e-8);
  }
}

TEST_CASE("certificate bookkeeping") {
  const auto spec = SeminormSpec::from_beta(0.0);
  Certificate cert(0.5, spec, 0.2, 3.0);
  BreakdownScan unit{1.5, 0, {0, 0, 0}, 1.0};
  cert.record(0.0, 1.0, unit);
  CHECK(cert.trajectory().back().f == 3.0);
  CHECK(cert.trajectory().back().S == 0.5);
  const double predicted = cert.f_at(0.5, 1.0);
  const auto& s = cert.record(0.5, 1.0, unit);
  CHECK(s.f == predicted);
  CHECK(std::abs(s.f / (3.0 * std::exp(2 * 0.2 * 0.5)) - 1.0) < 1e-15);
  CHECK(cert.status() == CertificateStatus::holding);
  cert.mark_breach({0.5, {1, 2, 0}, 1.0, 1.1, 0.25});
  CHECK(cert.status() == CertificateStatus::breached);
  CHECK_THROWS_AS(cert.record(0.1, 1.0, unit), InvalidInput);
  CHECK_THROWS_AS(Certificate(0.5, SeminormSpec::from_beta(-1.0), 0.2, 1.0), InvalidInput);
  CHECK_THROWS_AS(Certificate(1.0, spec, 0.2, 1.0), InvalidInput);
}

TEST_CASE("heat flow never raises the sup ratio at fixed f") {
  const auto u0 = random_solenoidal(g64, 6, 1.0, 11);
  const double f0 = breakdown_scan(u0, 1.0, 0.5, ladder64).S;
  SimState s{0.0, u0, 0, {}};
  double prev = breakdown_scan(s.u, f0, 0.5, ladder64).S;
  CHECK(std::abs(prev - 1.0) < 1e-15);
  const VectorField b0(g64);
  for (int k = 0; k < 10; ++k) {
    s = step(s, b0, 0.02);
    const double S = breakdown_scan(s.u, f0, 0.5, ladder64).S;
    CHECK(S <= prev + 1e-6);
    prev = S;
  }
}

TEST_CASE("adp_decompose with zero drift") {
  const auto u = random_solenoidal(g64, 4, 1.0, 3);
  const auto scan = breakdown_scan(u, 1.0, 0.5, ladder64);
  AuditContext ctx;
  ctx.spec = SeminormSpec::from_beta(0.0);
  const auto rec = adp_decompose(u, VectorField(g64), scan.argmax, scan.argmax_r, ctx, ladder64);
  CHECK(rec.A_term == 0.0);
  CHECK(rec.P_term == 0.0);
  CHECK(rec.A_weight_form == 0.0);
  CHECK(rec.D_term <= 0.0);
  CHECK(rec.g == 0.0);
  CHECK(rec.closure_error() < 1e-3);
  CHECK(std::abs(rec.f - std::sqrt(rec.I) / std::pow(rec.r, 0.5)) < 1e-15);
}

TEST_CASE("adp_decompose on a constant solution") {
  const auto u = constant_field(g64, 0.4, -0.9);
  const auto b = random_solenoidal(g64, 3, 1.0, 5);
  AuditContext ctx;
  ctx.spec = SeminormSpec::from_beta(0.0);
  const auto rec = adp_decompose(u, b, {10, 20, 0}, ladder64.radius(1), ctx, ladder64);
  CHECK(rec.I < 1e-28);
  CHECK(std::abs(rec.D_term) < 1e-14);
  CHECK(std::abs(rec.A_term) < 1e-14);
  CHECK(std::abs(rec.P_term) < 1e-14);
}

TEST_CASE("adp_decompose closes against the solver at scan maxima") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto u = random_solenoidal(g64, 4, 1.0, seed);
    const auto b = scaled(random_solenoidal(g64, 3, 1.0, seed + 100), 2.0);
    const auto scan = breakdown_scan(u, 1.0, 0.5, ladder64);
    AuditContext ctx;
    ctx.spec = SeminormSpec::from_beta(0.0);
    const auto rec = adp_decompose(u, b, scan.argmax, scan.argmax_r, ctx, ladder64);
    CHECK(rec.closure_error() < 1e-3);
    CHECK(rec.D_term <= 0.0);
    CHECK(rec.D_term <= rec.laplacian_bound + 1e-6 * std::abs(rec.laplacian_bound));
    CHECK(rec.advection_shape > 0.0);
    CHECK(rec.grad_x_I <= 2.0 * rec.neighbor_slope);
  }
}

TEST_CASE("adp_decompose rejects radii off the ladder") {
  const auto u = random_solenoidal(g64, 4, 1.0, 1);
  AuditContext ctx;
  ctx.spec = SeminormSpec::from_beta(0.0);
  CHECK_THROWS_AS(adp_decompose(u, VectorField(g64), {0, 0, 0}, 2 * g64.spacing(), ctx, ladder64), InvalidInput);
  ctx.spec = SeminormSpec::from_beta(-1.0);
  CHECK_THROWS_AS(adp_decompose(u, VectorField(g64), {0, 0, 0}, ladder64.radius(0), ctx, ladder64), InvalidInput);
}

TEST_CASE("calibration identifiability") {
  CHECK_THROWS_AS(calibrate_constants(std::vector<AuditRecord>{}), InvalidInput);

  const std::vector<AuditRecord> no_drift = {synthetic(0.0, -2.0, 0.0, 1.0), synthetic(0.0, -3.0, 0.0, 0.5)};
  const auto k0 = calibrate_constants(no_drift);
  CHECK_FALSE(k0.C_A.identified);
  CHECK_FALSE(k0.C_P.identified);
  CHECK(k0.c_D.identified);
  CHECK(k0.c_D.value == 2.0);
  CHECK(k0.c_D.witness == 0);

  const std::vector<AuditRecord> affine = {synthetic(0.3, 0.0, 0.1, 1.0), synthetic(-0.2, 0.0, 0.8, 2.0)};
  const auto ka = calibrate_constants(affine);
  CHECK_FALSE(ka.c_D.identified);
  CHECK(ka.C_A.value == 0.3);
  CHECK(ka.C_P.value == 0.4);
  CHECK(ka.C_P.witness == 1);
}

TEST_CASE("a calibrated corpus covers itself") {
  CorpusSpec cs;
  cs.count = 24;
  cs.seed = 9;
  const auto corpus = build_corpus(cs);
  REQUIRE(corpus.size() == 24);
  const auto k = calibrate_constants(corpus);
  CHECK(k.C_A.identified);
  CHECK(k.c_D.identified);
  CHECK(k.C_P.identified);
  CHECK(k.C_bar == doctest::Approx(c_bar(k.C_star(), k.c_star(), 0.0)).epsilon(1e-15));
  const auto cov = coverage(corpus, k);
  CHECK(cov.worst() <= 1.0 + 1e-12);
  CHECK(cov.advection == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cov.dissipation == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& r : corpus) CHECK(r.closure_error() < 1e-3);
}

TEST_CASE("corpus is reproducible from its seed") {
  CorpusSpec cs;
  cs.count = 3;
  cs.seed = 4;
  const auto a = build_corpus(cs);
  const auto b = build_corpus(cs);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].A_term == b[i].A_term);
    CHECK(a[i].D_term == b[i].D_term);
    CHECK(a[i].P_term == b[i].P_term);
  }
  cs.count = 0;
  CHECK(build_corpus(cs).empty());
}

TEST_CASE("endpoint closed forms") {
  CHECK(endpoint_delta(2.0, 2.0, 0.3) == 0.5);
  CHECK(endpoint_delta(1.0, 32.0, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(endpoint_tail_constant(0.5) == doctest::Approx(std::pow(2.0, -2.5) / 2.5).epsilon(1e-15));
  CHECK(endpoint_epsilon(2.0, 1.0, 0.5) ==
        doctest::Approx(1.0 / (2.0 * (3.0 + 2.0 * endpoint_tail_constant(0.5)))).epsilon(1e-15));
  CHECK_THROWS_AS(endpoint_delta(0.0, 1.0, 0.5), InvalidInput);
}

TEST_CASE("integrability of r_star^-2") {
  const double T = 0.7;
  const auto sqrt_gap = inverse_square_integral([T](double t) { return std::sqrt(T - t); }, T);
  CHECK_FALSE(sqrt_gap.finite);
  CHECK(sqrt_gap.increment_ratio > 0.99);

  const auto flat = inverse_square_integral([](double) { return 0.5; }, T);
  CHECK(flat.finite);
  CHECK(flat.value == doctest::Approx(4 * T).epsilon(1e-9));

  // r_star = (T - t)^{1/4}: int (T - t)^{-1/2} = 2 sqrt(T).
  const auto quarter = inverse_square_integral([T](double t) { return std::pow(T - t, 0.25); }, T);
  CHECK(quarter.finite);
  CHECK(quarter.value == doctest::Approx(2 * std::sqrt(T)).epsilon(1e-4));

  CHECK_THROWS_AS(inverse_square_integral([](double t) { return 0.3 - t; }, 1.0), InvalidInput);
}

TEST_CASE("endpoint_check on a small drift") {
  const auto b = scaled(random_solenoidal(g64, 3, 1.0, 2), 1e-3);
  EndpointInput in;
  in.times = {0.0, 0.5, 1.0};
  in.snapshots = {b, b, b};
  in.T = 1.0;
  in.alpha = 0.5;
  in.B = endpoint_norm(b, ladder64);
  in.eps = 0.5 * in.B;
  in.C_star = 1.0;
  in.c_star = 4.0;
  in.f0 = 2.0;
  in.r_star = [](double) { return 10.0; };
  const auto rep = endpoint_check(in, ladder64);
  CHECK(rep.small_scale_sup == doctest::Approx(in.B).epsilon(1e-15));
  CHECK_FALSE(rep.small_scale_ok);
  CHECK(rep.integral.finite);

  in.r_star = [](double) { return 0.3; };
  const auto small = endpoint_check(in, ladder64);
  CHECK(small.small_scale_sup <= in.B);
  CHECK(small.passed() == (small.small_scale_sup <= in.eps));
  CHECK(small.delta == endpoint_delta(in.eps, in.B, 0.5));
  CHECK(small.K == doctest::Approx(in.B * (3 + small.C_alpha) / (small.delta * small.delta)).epsilon(1e-15));
  REQUIRE(small.f.size() == 3);
  CHECK(small.f[1] == doctest::Approx(2.0 * std::exp(small.K * 0.5 / 0.09)).epsilon(1e-12));

  in.r_star = [](double t) { return 0.5 - t; };
  CHECK_THROWS_AS(endpoint_check(in, ladder64), InvalidInput);
}

TEST_CASE("BMO shell differences are bounded by the BMO seminorm") {
  CHECK(bmo_shell_ratio(constant_field(g64, 1.0, 2.0), ladder64) == 0.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto b = random_solenoidal(g64, 5, 0.5, seed);
    const double kappa = bmo_shell_ratio(b, ladder64);
    CHECK(kappa > 0.0);
    // |b_2r - b_r| <= (|B_2r| / |B_r|) mean_{B_2r} |b - b_2r| <= 2^n / |B_1| * BMO.
    CHECK(kappa <= 1.1 * 4.0 / kPi);
  }
}
