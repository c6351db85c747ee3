#include <cmath>

#include "doctest.h"
#include "holderlab/drift.hpp"
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

double inner(const VectorField& a, const VectorField& b) {
  long double s = 0.0;
  for (int c = 0; c < a.dim(); ++c)
    for (std::size_t i = 0; i < a[c].size(); ++i) s += a[c][i] * b[c][i];
  return static_cast<double>(s);
}

SimState run(const VectorField& u0, const VectorField& b, double t_end, int steps) {
  SimState s{0.0, u0, 0, {}};
  for (int k = 0; k < steps; ++k) s = step(s, b, t_end / steps);
  return s;
}

}  // namespace

TEST_CASE("heat part is exact per mode") {
  const auto u0 = sine_mode(g64, 3, 1.0);
  const double dt = 0.05;
  const auto s = step(SimState{0.0, u0, 0, {}}, VectorField(g64), dt);
  CHECK(max_abs_diff(s.u, scaled(u0, std::exp(-9 * dt))) < 1e-14);
  CHECK(s.t == dt);
  CHECK(s.step_index == 1);
  CHECK(s.dt_history.size() == 1);
}

TEST_CASE("constant state is stationary under any drift") {
  const auto c = sample_vec(g64, {[](const Vec&) { return 0.7; }, [](const Vec&) { return -1.1; }}, true);
  const auto b = random_solenoidal(g64, 3, 1.0, 5);
  const auto s = step(SimState{0.0, c, 0, {}}, b, admissible_dt(b));
  CHECK(max_abs_diff(s.u, c) < 1e-15);
}

TEST_CASE("time step policy") {
  const auto b = scaled(random_solenoidal(g64, 3, 1.0, 5), 2.0);
  const double limit = 0.5 * g64.spacing() / b.max_norm();
  CHECK(admissible_dt(b) == doctest::Approx(limit));
  CHECK(admissible_dt(VectorField(g64)) == kMaxTimeStep);
  try {
    step(SimState{0.0, sine_mode(g64, 1), 0, {}}, b, 2 * limit);
    FAIL("expected a CFL violation");
  } catch (const CflViolation& e) {
    CHECK(e.admissible_dt() == doctest::Approx(limit));
  }
  CHECK_THROWS_AS(step(SimState{0.0, sine_mode(g64, 1), 0, {}}, b, -1.0), InvalidInput);
}

TEST_CASE("step invariants") {
  const auto b = random_solenoidal(g64, 3, 1.0, 17);
  auto u = random_solenoidal(g64, 4, 1.0, 18);
  // Give u a nonzero mean.
  u = add(u, sample_vec(g64, {[](const Vec&) { return 0.3; }, [](const Vec&) { return -0.2; }}, true));
  u.set_divergence_free(true);
  const auto mean0 = u.mean();
  SimState s{0.0, u, 0, {}};
  SimState heat{0.0, u, 0, {}};
  double prev_energy = l2_norm(u);
  for (int k = 0; k < 20; ++k) {
    s = step(s, b, admissible_dt(b));
    CHECK(s.u.divergence_free());
    CHECK(divergence_ratio(s.u) <= 1e-10);
    CHECK(std::abs(s.u.mean()[0] - mean0[0]) <= 1e-12);
    CHECK(std::abs(s.u.mean()[1] - mean0[1]) <= 1e-12);
    heat = step(heat, VectorField(g64), 0.01);
    const double e = l2_norm(heat.u);
    CHECK(e < prev_energy);
    prev_energy = e;
    CHECK(s.t >= heat.t - 1e-300);
  }
}

TEST_CASE("advection is skew-symmetric for divergence-free drifts") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto b = random_solenoidal(g64, 3, 1.0, seed);
    const auto u = random_solenoidal(g64, 3, 1.0, seed + 100);
    const auto w = advection_term(b, u);
    CHECK(std::abs(inner(w, u)) <= 1e-8 * std::sqrt(inner(w, w) * inner(u, u)));
  }
}

TEST_CASE("second-order convergence in time") {
  // Endpoint errors against a dt/64 reference. The observed order approaches
  // 2 as dt shrinks, with a deviation that halves with dt.
  const auto b = random_solenoidal(g64, 2, 1.0, 31);
  const auto u0 = random_solenoidal(g64, 3, 1.0, 32);
  const double t_end = 0.2;
  auto order = [&](int n0) {
    const auto ref = run(u0, b, t_end, n0 * 64).u;
    const double e1 = l2_norm(add(run(u0, b, t_end, n0).u, ref, -1));
    const double e2 = l2_norm(add(run(u0, b, t_end, 2 * n0).u, ref, -1));
    return std::log2(e1 / e2);
  };
  REQUIRE(t_end / 8 <= admissible_dt(b));
  const double p8 = order(8), p16 = order(16);
  CHECK(std::abs(p8 - 2) < 0.03);
  CHECK(std::abs(p16 - 2) < 0.6 * std::abs(p8 - 2));
}

TEST_CASE("drift-coupled stepping") {
  const auto u0 = random_solenoidal(g64, 3, 1.0, 3);
  const DriftFn self = [](double, const VectorField& u) { return self_coupled_drift(u); };
  SimState s{0.0, u0, 0, {}};
  for (int k = 0; k < 5; ++k) s = step(s, self, admissible_dt(self_coupled_drift(s.u)));
  CHECK(divergence_ratio(s.u) < 1e-10);
  CHECK(s.step_index == 5);
}

TEST_CASE("stream generators") {
  const Grid g3(3, 32, 2 * kPi);
  const auto v3 = stream_field(g3, random_modes(3, 3, 1.0, 4));
  CHECK(v3.divergence_free());
  CHECK(divergence_ratio(v3) < 1e-12);
  CHECK(v3.max_norm() > 0.0);
  StreamMode bad;
  bad.k = {40, 0, 0};
  CHECK_THROWS_AS(stream_field(g64, std::vector<StreamMode>{bad}), InvalidInput);
  CHECK(random_modes(2, 2, 1.0, 9).size() == 12);
  CHECK(max_abs_diff(random_solenoidal(g64, 3, 1.0, 9), random_solenoidal(g64, 3, 1.0, 9)) == 0.0);
}

TEST_CASE("make_drift") {
  const auto ladder = ScaleLadder::dyadic(g64);
  DriftSpec spec;
  spec.kind = DriftKind::static_stream;
  spec.seminorm = SeminormSpec::from_beta(0.0);
  SUBCASE("zero target gives the zero field") {
    spec.envelope.level = 0.0;
    const auto b = make_drift(spec, g64, 0.0, ladder);
    CHECK(b.max_norm() == 0.0);
    CHECK(b.divergence_free());
  }
  SUBCASE("matches the target within 2%") {
    spec.envelope.level = 0.8;
    const auto b = make_drift(spec, g64, 0.0, ladder);
    CHECK(morrey_scan(b, spec.seminorm, ladder).value == doctest::Approx(0.8).epsilon(0.02));
    CHECK(divergence_ratio(b) <= 1e-10);
  }
  SUBCASE("square-wave envelope is tracked at every output time") {
    spec.kind = DriftKind::time_modulated;
    spec.envelope = {Envelope::Shape::square, 1.5, 0.25, 0.1};
    const DriftGenerator gen(spec, ladder);
    for (double t : {0.0, 0.02, 0.06, 0.11, 0.17}) {
      const auto b = gen.at(t, VectorField(g64));
      CHECK(morrey_scan(b, spec.seminorm, ladder).value == doctest::Approx(spec.envelope(t)).epsilon(0.02));
      const auto direct = make_drift(spec, g64, t, ladder);
      CHECK(morrey_scan(direct, spec.seminorm, ladder).value == doctest::Approx(spec.envelope(t)).epsilon(0.02));
    }
  }
  SUBCASE("zero template is rejected") {
    StreamMode zero;
    zero.amplitude = 0.0;
    spec.modes = {zero};
    spec.envelope.level = 1.0;
    CHECK_THROWS_AS(make_drift(spec, g64, 0.0, ladder), InvalidInput);
    CHECK_THROWS_AS(DriftGenerator(spec, ladder), InvalidInput);
  }
  SUBCASE("self-coupled needs the solution") {
    spec.kind = DriftKind::self_coupled;
    CHECK_THROWS_AS(make_drift(spec, g64, 0.0, ladder), InvalidInput);
  }
  SUBCASE("3D vector potential drift") {
    const Grid g3(3, 32, 2 * kPi);
    const auto ladder3 = ScaleLadder::dyadic(g3);
    spec.envelope.level = 0.5;
    const auto b = make_drift(spec, g3, 0.0, ladder3);
    CHECK(divergence_ratio(b) <= 1e-10);
    CHECK(morrey_scan(b, spec.seminorm, ladder3).value == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("Lipschitz scan of a cellular flow against a dense-sampling oracle") {
  // psi = cos x1 cos x2; b = (d2 psi, -d1 psi). The oracle is
  // sup_x int_{B_1} |grad b(x) y| dy, evaluated on dense x and polar y grids.
  const Grid g(2, 256, 2 * kPi);
  const std::vector<StreamMode> modes{{{1, 1, 0}, 0.5, 0.0, {}}, {{1, -1, 0}, 0.5, 0.0, {}}};
  const auto b = stream_field(g, modes);
  double oracle = 0.0;
  const int nx = 64, nr = 100, nt = 256;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      const double x = 2 * kPi * i / nx, y = 2 * kPi * j / nx;
      const double s = std::sin(x) * std::sin(y), c = std::cos(x) * std::cos(y);
      double acc = 0.0;
      for (int a = 0; a < nr; ++a) {
        const double rho = (a + 0.5) / nr;
        for (int t = 0; t < nt; ++t) {
          const double th = 2 * kPi * (t + 0.5) / nt;
          const double y1 = rho * std::cos(th), y2 = rho * std::sin(th);
          acc += std::hypot(s * y1 - c * y2, c * y1 - s * y2) * rho;
        }
      }
      oracle = std::max(oracle, acc * (1.0 / nr) * (2 * kPi / nt));
    }
  const auto res = morrey_scan(b, SeminormSpec::from_beta(1.0), ScaleLadder::dyadic(g));
  CHECK(res.value == doctest::Approx(oracle).epsilon(0.05));
}

TEST_CASE("mollification") {
  const auto ladder = ScaleLadder::dyadic(g64);
  const double h = g64.spacing();
  SUBCASE("constants unchanged") {
    const auto c = sample_vec(g64, {[](const Vec&) { return 2.0; }, [](const Vec&) { return -3.0; }}, true);
    CHECK(max_abs_diff(mollify_drift(c, 8 * h), c) < 1e-13);
  }
  SUBCASE("wide kernels flatten towards the mean") {
    const auto b = random_solenoidal(g64, 4, 0.5, 2);
    double prev = b.max_norm();
    for (double eps : {4 * h, 8 * h, 16 * h, g64.side_length() / 2}) {
      const double osc = mollify_drift(b, eps).max_norm();
      CHECK(osc < prev);
      prev = osc;
    }
    CHECK(prev < 0.3 * b.max_norm());
  }
  SUBCASE("L1 distance shrinks with eps and seminorms do not grow") {
    const auto b = random_solenoidal(g64, 6, 0.0, 3);
    double prev = INFINITY;
    for (double eps : {16 * h, 8 * h, 4 * h}) {
      const auto m = mollify_drift(b, eps);
      CHECK(m.divergence_free());
      CHECK(divergence_ratio(m) < 1e-10);
      double l1 = 0.0;
      for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < g64.size(); ++i) l1 += std::abs(m[c][i] - b[c][i]);
      CHECK(l1 < prev);
      prev = l1;
      for (double beta : {-0.5, 0.0, 0.5}) {
        const auto spec = SeminormSpec::from_beta(beta);
        CHECK(morrey_scan(m, spec, ladder).value <= morrey_scan(b, spec, ladder).value * (1 + 1e-3));
      }
    }
  }
  SUBCASE("eps below the grid spacing rejected") {
    CHECK_THROWS_AS(mollify_drift(VectorField(g64), 0.5 * h), InvalidInput);
    CHECK(max_abs_diff(mollify_drift(sine_mode(g64, 3), h), sine_mode(g64, 3)) < 1e-14);
  }
}

TEST_CASE("self-coupled drift") {
  CHECK(self_coupled_drift(VectorField(g64)).max_norm() == 0.0);
  CHECK(max_abs_diff(self_coupled_drift(sine_mode(g64, 1)), sine_mode(g64, 1)) < 1e-14);
  CHECK(max_abs_diff(self_coupled_drift(sine_mode(g64, 2)), sine_mode(g64, 2, std::pow(2.0, -0.5))) < 1e-14);
  const auto shifted = sample_vec(g64, {[](const Vec&) { return 1.0; }});
  CHECK_THROWS_AS(self_coupled_drift(shifted), InvalidInput);
}

TEST_CASE("rescale") {
  const auto u = random_solenoidal(g64, 4, 1.0, 6);
  CHECK(max_abs_diff(rescale(u, 1.0), u) == 0.0);
  CHECK(max_abs_diff(rescale(sine_mode(g64, 3), 2.0), sine_mode(g64, 6, 2.0)) < 1e-13);
  CHECK(max_abs_diff(rescale(sine_mode(g64, 6), 0.5), sine_mode(g64, 3, 0.5)) < 1e-13);
  CHECK(max_abs_diff(rescale(rescale(u, 2.0), 0.5), u) < 1e-13);
  CHECK(rescale(u, 2.0).divergence_free());
  CHECK_THROWS_AS(rescale(u, 3.0), InvalidInput);
  CHECK_THROWS_AS(rescale(u, 0.3), InvalidInput);
  CHECK_THROWS_AS(rescale(u, -2.0), InvalidInput);
  CHECK_THROWS_AS(rescale(sine_mode(g64, 3), 0.5), InvalidInput);
  CHECK_THROWS_AS(rescale(sine_mode(g64, 20), 2.0), InvalidInput);
}
