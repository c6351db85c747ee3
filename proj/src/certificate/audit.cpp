#include "holderlab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "holderlab/campanato.hpp"
#include "holderlab/certificate.hpp"
#include "holderlab/drift.hpp"
#include "holderlab/errors.hpp"
#include "holderlab/generators.hpp"
#include "holderlab/operators.hpp"
#include "holderlab/scan.hpp"
#include "holderlab/stepper.hpp"

namespace holderlab {

double AuditRecord::closure_error() const noexcept {
  const double scale = std::max({std::abs(A_term), std::abs(D_term), std::abs(P_term), std::abs(dI_dt_fd)});
  if (scale == 0.0) return 0.0;
  return std::abs(sum() - dI_dt_fd) / scale;
}

namespace {

double dot(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int c = 0; c < dim; ++c) s += a[c] * b[c];
  return s;
}

Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec drift_reference(const VectorField& b, const LatticePoint& x, const BallStencil& ball, SeminormCase kind) {
  const Grid& grid = b.grid();
  switch (kind) {
    case SeminormCase::morrey: return {0.0, 0.0, 0.0};
    case SeminormCase::holder: return b.at(grid.index(x));
    case SeminormCase::bmo: break;
  }
  Vec m{0.0, 0.0, 0.0};
  for (const auto& d : ball.offsets) {
    const Vec v = b.at(grid.shifted(x, d));
    for (int c = 0; c < b.dim(); ++c) m[c] += v[c];
  }
  for (int c = 0; c < b.dim(); ++c) m[c] /= static_cast<double>(ball.size());
  return m;
}

}  // namespace

AuditRecord adp_decompose(const VectorField& u, const VectorField& b, const LatticePoint& x,
                          double r, const AuditContext& ctx, const ScaleLadder& ladder) {
  require_same_grid(u.grid(), b.grid(), "adp_decompose");
  require_same_grid(u.grid(), ladder.grid(), "adp_decompose");
  if (ctx.spec.endpoint()) throw InvalidInput("adp_decompose: beta = -1 has no pressure shape");
  const auto k = ladder.find(r);
  if (!k) throw InvalidInput("adp_decompose: r must be a ladder radius");
  const Grid& grid = u.grid();
  const int dim = grid.dim();
  const double h = grid.spacing();
  const WeightedStencil& st = ladder.weighted(*k);
  const BallStencil& ball = ladder.ball(*k);

  const VectorField w = advection_term(b, u);
  const VectorField Q = pressure_gradient(b, u);
  const VectorField lap = laplacian(u);
  const Jacobian grad_u = jacobian(u);

  AuditRecord rec;
  rec.t = ctx.t;
  rec.x = x;
  rec.r = r;
  rec.alpha = ctx.alpha;
  rec.beta = ctx.spec.beta;

  const Vec ubar = local_mean(u, x, st);
  const Vec bref = drift_reference(b, x, ball, ctx.spec.kind);
  long double A = 0.0L, D = 0.0L, P = 0.0L, Aw = 0.0L, I = 0.0L;
  Vec gradI{0.0, 0.0, 0.0};
  for (std::size_t s = 0; s < st.size(); ++s) {
    const std::size_t q = grid.shifted(x, st.offsets[s]);
    const double wt = st.weights[s];
    const Vec diff = sub(u.at(q), ubar);
    A -= wt * dot(diff, w.at(q), dim);
    D += wt * dot(diff, lap.at(q), dim);
    P -= wt * dot(diff, Q.at(q), dim);
    const double sq = dot(diff, diff, dim);
    I += wt * sq;
    Aw += sq * dot(sub(b.at(q), bref), st.grad_weights[s], dim);
    for (int j = 0; j < dim; ++j) {
      Vec col{0.0, 0.0, 0.0};
      for (int c = 0; c < dim; ++c) col[c] = grad_u[c][j][q];
      gradI[j] += wt * dot(diff, col, dim);
    }
  }
  rec.A_term = static_cast<double>(2.0L * A);
  rec.D_term = static_cast<double>(2.0L * D);
  rec.P_term = static_cast<double>(2.0L * P);
  rec.A_weight_form = static_cast<double>(Aw) / r;
  rec.I = static_cast<double>(I);
  // Differentiating the mean term as well contributes sum w (u - u_bar) = 0.
  rec.grad_x_I = 2.0 * std::sqrt(dot(gradI, gradI, dim));
  rec.laplacian_bound = dissipation_D(grad_u, x, st);

  for (int j = 0; j < dim; ++j) {
    for (int sgn : {-1, 1}) {
      LatticePoint y = x;
      y[j] = grid.wrap(y[j] + sgn);
      rec.neighbor_slope = std::max(rec.neighbor_slope, std::abs(campanato_I(u, y, st) - rec.I) / h);
    }
  }

  rec.g = ctx.g >= 0.0 ? ctx.g : g_of_t(b, ctx.spec, ladder);
  rec.f = ctx.f > 0.0 ? ctx.f : std::sqrt(rec.I) / std::pow(r, ctx.alpha);
  rec.M = morrey_M(b, x, ball, ctx.spec.kind);
  const double f2 = rec.f * rec.f;
  rec.advection_shape = std::pow(r, 2.0 * ctx.alpha - 1.0) * f2 * rec.M;
  rec.dissipation_shape = f2 * std::pow(r, 2.0 * ctx.alpha - 2.0);
  rec.pressure_shape = f2 * rec.g * std::pow(r, 2.0 * ctx.alpha + ctx.spec.beta - 1.0);

  rec.fd_step = 1e-4 * h * h;
  const SimState s0{ctx.t, u, 0, {}};
  const SimState s1 = step(s0, b, rec.fd_step);
  const SimState s2 = step(s1, b, rec.fd_step);
  const double I1 = campanato_I(s1.u, x, st);
  const double I2 = campanato_I(s2.u, x, st);
  rec.dI_dt_fd = (-3.0 * rec.I + 4.0 * I1 - I2) / (2.0 * rec.fd_step);
  return rec;
}

namespace {

struct Extreme {
  double value;
  std::size_t index;
  bool any_nonzero;
  bool violated;  // nonzero term with zero shape
};

// max over records of term / shape, clamped below at 0.
template <class Term, class Shape>
Extreme max_ratio(std::span<const AuditRecord> corpus, Term term, Shape shape) {
  Extreme e{0.0, 0, false, false};
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const double a = term(corpus[i]);
    const double s = shape(corpus[i]);
    if (a != 0.0) e.any_nonzero = true;
    if (s > 0.0) {
      if (a / s > best) {
        best = a / s;
        e.index = i;
      }
    } else if (a > 0.0) {
      e.violated = true;
      e.index = i;
    }
  }
  e.value = e.violated ? std::numeric_limits<double>::infinity() : std::max(best, 0.0);
  return e;
}

ConstantEstimate upper_constant(std::span<const AuditRecord> corpus, double (*term)(const AuditRecord&),
                                double (*shape)(const AuditRecord&)) {
  const Extreme e = max_ratio(corpus, term, shape);
  return {e.value, e.any_nonzero, e.index};
}

double ratio_or(double num, double den) {
  if (num <= 0.0) return 0.0;
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

}  // namespace

CalibratedConstants calibrate_constants(std::span<const AuditRecord> corpus) {
  if (corpus.empty()) throw InvalidInput("calibrate_constants: empty corpus");
  CalibratedConstants out;
  out.records = corpus.size();
  out.beta = corpus.front().beta;
  for (const auto& r : corpus)
    if (r.beta != out.beta) throw InvalidInput("calibrate_constants: records mix drift exponents");

  out.C_A = upper_constant(
      corpus, [](const AuditRecord& r) { return r.A_term; }, [](const AuditRecord& r) { return r.advection_shape; });
  out.C_P = upper_constant(
      corpus, [](const AuditRecord& r) { return r.P_term; }, [](const AuditRecord& r) { return r.pressure_shape; });

  // Largest c with D <= -c shape everywhere, i.e. min of -D / shape.
  ConstantEstimate cD{std::numeric_limits<double>::infinity(), false, 0};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& r = corpus[i];
    if (r.D_term < 0.0) cD.identified = true;
    const double c = r.dissipation_shape > 0.0 ? -r.D_term / r.dissipation_shape : 0.0;
    if (c < cD.value) {
      cD.value = c;
      cD.witness = i;
    }
  }
  cD.value = std::max(cD.value, 0.0);
  if (!cD.identified) cD.value = 0.0;
  out.c_D = cD;

  if (out.beta > -1.0) out.C_bar = c_bar(out.C_star(), out.c_star(), out.beta);
  return out;
}

double CoverageRatios::worst() const noexcept { return std::max({advection, dissipation, pressure}); }

CoverageRatios coverage(std::span<const AuditRecord> corpus, const CalibratedConstants& k) {
  CoverageRatios out;
  for (const auto& r : corpus) {
    out.advection = std::max(out.advection, ratio_or(r.A_term, k.C_A.value * r.advection_shape));
    out.pressure = std::max(out.pressure, ratio_or(r.P_term, k.C_P.value * r.pressure_shape));
    const double need = k.c_D.value * r.dissipation_shape;
    if (need > 0.0)
      out.dissipation = std::max(out.dissipation, r.D_term < 0.0 ? need / -r.D_term
                                                                  : std::numeric_limits<double>::infinity());
  }
  return out;
}

std::vector<AuditRecord> build_corpus(const CorpusSpec& spec) {
  if (spec.count == 0) return {};
  if (!(spec.g_min > 0.0 && spec.g_max >= spec.g_min))
    throw InvalidInput("build_corpus: need 0 < g_min <= g_max");
  const Grid grid(spec.dim, spec.n, spec.length);
  const ScaleLadder ladder = ScaleLadder::dyadic(grid);
  const SeminormSpec seminorm = SeminormSpec::from_beta(spec.beta);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> level(spec.g_min, spec.g_max);

  std::vector<AuditRecord> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::uint64_t u_seed = rng();
    const std::uint64_t b_seed = rng();
    const double g = level(rng);
    const VectorField u = random_solenoidal(grid, spec.u_kmax, spec.u_slope, u_seed);
    DriftSpec ds;
    ds.kind = DriftKind::static_stream;
    ds.random_kmax = spec.b_kmax;
    ds.random_slope = spec.b_slope;
    ds.seed = b_seed;
    ds.envelope.level = g;
    ds.seminorm = seminorm;
    const VectorField b = DriftGenerator(ds, ladder).at(0.0, u);
    const BreakdownScan scan = breakdown_scan(u, 1.0, spec.alpha, ladder);
    AuditContext ctx;
    ctx.alpha = spec.alpha;
    ctx.spec = seminorm;
    ctx.g = g;
    out.push_back(adp_decompose(u, b, scan.argmax, scan.argmax_r, ctx, ladder));
  }
  return out;
}

}  // namespace holderlab
