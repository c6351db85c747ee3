#include "holderlab/drift.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "holderlab/errors.hpp"
#include "holderlab/operators.hpp"
#include "holderlab/scan.hpp"
#include "holderlab/weight.hpp"

namespace holderlab {

const char* to_string(DriftKind k) noexcept {
  switch (k) {
    case DriftKind::none: return "none";
    case DriftKind::static_stream: return "static_stream";
    case DriftKind::time_modulated: return "time_modulated";
    case DriftKind::mollified: return "mollified";
    case DriftKind::self_coupled: return "self_coupled";
  }
  return "none";
}

DriftKind drift_kind_from_string(const std::string& s) {
  for (auto k : {DriftKind::none, DriftKind::static_stream, DriftKind::time_modulated,
                 DriftKind::mollified, DriftKind::self_coupled})
    if (s == to_string(k)) return k;
  throw InvalidInput("unknown drift kind '" + s + "'");
}

double Envelope::operator()(double t) const noexcept {
  switch (shape) {
    case Shape::constant: return level;
    case Shape::square: {
      const double phase = t / period - std::floor(t / period);
      return phase < 0.5 ? level : low;
    }
    case Shape::sine: return level + low * std::sin(2.0 * std::numbers::pi * t / period);
  }
  return level;
}

namespace {

constexpr double kCalibrationTolerance = 0.02;
constexpr int kMaxSecantSteps = 5;

VectorField drift_template(const DriftSpec& spec, const Grid& grid) {
  if (spec.modes.empty())
    return stream_field(grid, random_modes(grid.dim(), spec.random_kmax, spec.random_slope, spec.seed));
  return stream_field(grid, spec.modes);
}

double scan_value(const VectorField& b, const DriftSpec& spec, const ScaleLadder& ladder) {
  return morrey_scan(b, spec.seminorm, ladder).value;
}

void check_target(double g) {
  if (!std::isfinite(g) || g < 0.0)
    throw InvalidInput("drift envelope: target seminorm must be finite and nonnegative");
}

}  // namespace

VectorField make_drift(const DriftSpec& spec, const Grid& grid, double t, const ScaleLadder& ladder) {
  require_same_grid(grid, ladder.grid(), "make_drift");
  if (spec.kind == DriftKind::self_coupled)
    throw InvalidInput("make_drift: self_coupled drift needs the current solution");
  if (spec.kind == DriftKind::none) return VectorField(grid);
  const double g = spec.envelope(t);
  check_target(g);

  auto base = drift_template(spec, grid);
  if (spec.kind == DriftKind::mollified) base = mollify_drift(base, spec.mollify_eps);
  if (g == 0.0) return scaled(base, 0.0);
  const double s1 = scan_value(base, spec, ladder);
  if (!(s1 > 0.0)) throw InvalidInput("make_drift: template has zero seminorm, target unreachable");

  // Secant on F(a) = scan(a b) - g through (0, -g) and (1, s1 - g).
  double a_prev = 1.0, f_prev = s1 - g;
  double a = g / s1;
  VectorField b = scaled(base, a);
  for (int it = 0; it < kMaxSecantSteps; ++it) {
    const double f = scan_value(b, spec, ladder) - g;
    if (std::abs(f) <= kCalibrationTolerance * g) return b;
    const double next = a - f * (a - a_prev) / (f - f_prev);
    a_prev = a;
    f_prev = f;
    a = next;
    b = scaled(base, a);
  }
  throw NumericalFailure("make_drift: amplitude calibration did not converge");
}

DriftGenerator::DriftGenerator(DriftSpec spec, const ScaleLadder& ladder)
    : spec_(std::move(spec)), grid_(ladder.grid()) {
  if (spec_.kind == DriftKind::none || spec_.kind == DriftKind::self_coupled) return;
  auto base = drift_template(spec_, grid_);
  if (spec_.kind == DriftKind::mollified) base = mollify_drift(base, spec_.mollify_eps);
  template_scan_ = scan_value(base, spec_, ladder);
  if (!(template_scan_ > 0.0))
    throw InvalidInput("drift template has zero seminorm, target unreachable");
  template_.emplace(std::move(base));
}

VectorField DriftGenerator::at(double t, const VectorField& u) const {
  switch (spec_.kind) {
    case DriftKind::none: return VectorField(grid_);
    case DriftKind::self_coupled: return self_coupled_drift(u, spec_.coupling_exponent);
    default: break;
  }
  const double g = spec_.envelope(t);
  check_target(g);
  return scaled(*template_, g / template_scan_);
}

VectorField mollify_drift(const VectorField& b, double eps) {
  const Grid& grid = b.grid();
  const double h = grid.spacing();
  if (!(eps >= h * (1.0 - 1e-12)))
    throw InvalidInput("mollify_drift: eps must be at least the grid spacing");
  if (eps > grid.side_length() / 2.0)
    throw InvalidInput("mollify_drift: eps must not exceed L/2");

  const auto profile = WeightProfile::standard_bump(grid.dim());
  const int reach = static_cast<int>(std::ceil(eps / h));
  const int dim = grid.dim();
  ScalarField kernel(grid);
  auto ks = kernel.mutable_samples();
  double mass = 0.0;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j)
      for (int l = (dim == 3 ? -reach : 0); l <= (dim == 3 ? reach : 0); ++l) {
        const Vec y{i * h / eps, j * h / eps, l * h / eps};
        const double w = profile.value(y);
        if (w <= 0.0) continue;
        ks[grid.index({grid.wrap(i), grid.wrap(j), grid.wrap(l)})] += w;
        mass += w;
      }
  // eps = h leaves only the center weight: the identity.
  for (auto& v : ks) v /= mass;

  // Coefficients are normalized by N^n, so the circular convolution carries
  // a factor N^n on the kernel transform.
  const double volume = static_cast<double>(grid.size());
  const auto& kh = kernel.spectrum();
  std::vector<ScalarField> comps;
  for (int c = 0; c < dim; ++c) {
    Spectrum s = b[c].spectrum();
    for (std::size_t m = 0; m < s.size(); ++m) s[m] *= kh[m] * volume;
    comps.emplace_back(s);
  }
  return VectorField(grid, std::move(comps), b.divergence_free());
}

VectorField self_coupled_drift(const VectorField& u, double exponent) {
  std::vector<ScalarField> comps;
  for (int c = 0; c < u.dim(); ++c) comps.push_back(fractional_laplacian(u[c], exponent));
  return VectorField(u.grid(), std::move(comps), u.divergence_free());
}

VectorField rescale(const VectorField& u, double r) {
  int e = 0;
  const double mant = std::frexp(r, &e);
  if (!(r > 0.0) || mant != 0.5) throw InvalidInput("rescale: r must be a dyadic power 2^m");
  if (r == 1.0) return u;

  const Grid& grid = u.grid();
  const int n = grid.points_per_axis();
  const int dim = grid.dim();
  const int band = n / 2 - 1;
  const auto layout = SpectralLayout::for_grid(grid);
  // u_r(x) = r u(r x): source mode m lands on r m with amplitude times r.
  const int up = e > 1 ? 1 << (e - 1) : 1;        // r = up   when r > 1
  const int down = e < 1 ? 1 << (1 - e) : 1;      // r = 1/down when r < 1

  double peak = 0.0;
  for (int c = 0; c < dim; ++c)
    for (const auto& z : u[c].spectrum().coeffs) peak = std::max(peak, std::abs(z));
  const double negligible = 1e-13 * std::max(peak, 1e-300);

  std::vector<ScalarField> comps;
  for (int c = 0; c < dim; ++c) {
    const Spectrum& src = u[c].spectrum();
    Spectrum dst = Spectrum::zeros(grid);
    for (std::size_t s = 0; s < src.size(); ++s) {
      if (std::abs(src[s]) <= negligible) continue;
      LatticePoint target{0, 0, 0};
      for (int a = 0; a < dim; ++a) {
        const int m = layout->mode(s, a);
        if (std::abs(m) == n / 2) throw InvalidInput("rescale: field has Nyquist content");
        if (m % down != 0)
          throw InvalidInput("rescale: mode not divisible by 1/r, field has no exact zoom");
        const int t = m * up / down;
        if (std::abs(t) > band)
          throw InvalidInput("rescale: zoomed mode leaves the resolvable band");
        target[a] = t;
      }
      // Half-spectrum index: last axis nonnegative, others wrapped.
      std::size_t idx = 0;
      const int half = n / 2 + 1;
      for (int a = 0; a < dim; ++a) {
        const int t = target[a];
        idx = a + 1 < dim ? idx * n + (t < 0 ? t + n : t) : idx * half + t;
      }
      dst[idx] = r * src[s];
    }
    comps.emplace_back(dst);
  }
  return VectorField(grid, std::move(comps), u.divergence_free());
}

}  // namespace holderlab
