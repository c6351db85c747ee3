#include "holderlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holderlab/errors.hpp"

namespace holderlab {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_finite(const ScalarField& f, const char* op) {
  if (!f.all_finite()) throw InvalidInput(std::string(op) + ": non-finite samples");
}

void require_finite(const VectorField& v, const char* op) {
  if (!v.all_finite()) throw InvalidInput(std::string(op) + ": non-finite samples");
}

void require_zero_mean(const ScalarField& f, const char* op) {
  const double tol = kMeanTolerance * std::max(1.0, f.max_abs());
  if (std::abs(f.mean()) > tol)
    throw InvalidInput(std::string(op) + ": field must have zero mean (mean = " +
                       std::to_string(f.mean()) + ")");
}

std::vector<Spectrum> spectra(const VectorField& v) {
  std::vector<Spectrum> out;
  out.reserve(v.dim());
  for (int c = 0; c < v.dim(); ++c) out.push_back(v[c].spectrum());
  return out;
}

VectorField from_spectra(const Grid& grid, const std::vector<Spectrum>& s, bool div_free) {
  std::vector<ScalarField> comps;
  comps.reserve(s.size());
  for (const auto& sp : s) comps.emplace_back(sp);
  return VectorField(grid, std::move(comps), div_free);
}

// Applies -k (k.w)/|k|^2 to the spectra in place.
void gradient_part(std::vector<Spectrum>& w) {
  const auto& layout = *w[0].layout;
  const int dim = layout.grid().dim();
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const double kk = layout.kdsq(s);
    if (kk == 0.0) {
      for (int c = 0; c < dim; ++c) w[c][s] = 0.0;
      continue;
    }
    Complex dot = 0.0;
    for (int c = 0; c < dim; ++c) dot += layout.kd(s, c) * w[c][s];
    for (int c = 0; c < dim; ++c) w[c][s] = -layout.kd(s, c) * dot / kk;
  }
}

}  // namespace

VectorField gradient(const ScalarField& f) {
  require_finite(f, "gradient");
  const Spectrum& in = f.spectrum();
  const auto& layout = *in.layout;
  std::vector<ScalarField> comps;
  for (int a = 0; a < f.grid().dim(); ++a) {
    Spectrum d = Spectrum::zeros(f.grid());
    for (std::size_t s = 0; s < layout.size(); ++s) d[s] = kI * layout.kd(s, a) * in[s];
    comps.emplace_back(d);
  }
  return VectorField(f.grid(), std::move(comps));
}

ScalarField divergence(const VectorField& v) {
  require_finite(v, "divergence");
  Spectrum d = Spectrum::zeros(v.grid());
  const auto& layout = *d.layout;
  for (int a = 0; a < v.dim(); ++a) {
    const Spectrum& in = v[a].spectrum();
    for (std::size_t s = 0; s < layout.size(); ++s) d[s] += kI * layout.kd(s, a) * in[s];
  }
  return ScalarField(d);
}

double divergence_ratio(const VectorField& v) {
  const double scale = v.max_norm();
  if (scale == 0.0) return 0.0;
  return divergence(v).max_abs() / scale;
}

Jacobian jacobian(const VectorField& v) {
  Jacobian j;
  j.reserve(v.dim());
  for (int c = 0; c < v.dim(); ++c) j.push_back(gradient(v[c]));
  return j;
}

VectorField laplacian(const VectorField& v) {
  require_finite(v, "laplacian");
  auto s = spectra(v);
  const auto& layout = *s[0].layout;
  for (auto& sp : s)
    for (std::size_t k = 0; k < layout.size(); ++k) sp[k] *= -layout.ksq(k);
  return from_spectra(v.grid(), s, v.divergence_free());
}

VectorField leray_project(const VectorField& v) {
  require_finite(v, "leray_project");
  auto s = spectra(v);
  const auto& layout = *s[0].layout;
  const int dim = v.dim();
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const double kk = layout.kdsq(k);
    if (kk == 0.0) continue;
    Complex dot = 0.0;
    for (int c = 0; c < dim; ++c) dot += layout.kd(k, c) * s[c][k];
    for (int c = 0; c < dim; ++c) s[c][k] -= layout.kd(k, c) * dot / kk;
  }
  return from_spectra(v.grid(), s, true);
}

VectorField dealiased(const VectorField& v) {
  auto s = spectra(v);
  for (auto& sp : s) sp.dealias();
  return from_spectra(v.grid(), s, v.divergence_free());
}

VectorField advection_term(const VectorField& b, const VectorField& u) {
  require_same_grid(b.grid(), u.grid(), "advection_term");
  require_finite(b, "advection_term");
  require_finite(u, "advection_term");
  const Grid& grid = u.grid();
  const int dim = grid.dim();
  const VectorField bd = dealiased(b);
  std::vector<ScalarField> out;
  out.reserve(dim);
  for (int c = 0; c < dim; ++c) {
    Spectrum uc = u[c].spectrum();
    uc.dealias();
    const auto& layout = *uc.layout;
    std::vector<double> w(grid.size(), 0.0);
    for (int a = 0; a < dim; ++a) {
      Spectrum d = Spectrum::zeros(grid);
      for (std::size_t s = 0; s < layout.size(); ++s) d[s] = kI * layout.kd(s, a) * uc[s];
      const ScalarField da(d);
      const auto ba = bd[a].samples();
      const auto dv = da.samples();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += ba[i] * dv[i];
    }
    ScalarField wf(grid, std::move(w));
    Spectrum ws = wf.spectrum();
    ws.dealias();
    out.emplace_back(ws);
  }
  return VectorField(grid, std::move(out));
}

VectorField pressure_gradient(const VectorField& b, const VectorField& u) {
  require_same_grid(b.grid(), u.grid(), "pressure_gradient");
  const VectorField w = advection_term(b, u);
  auto s = spectra(w);
  gradient_part(s);
  return from_spectra(u.grid(), s, false);
}

ScalarField riesz_double(int i, int j, const ScalarField& f) {
  require_finite(f, "riesz_double");
  const int dim = f.grid().dim();
  if (i < 0 || j < 0 || i >= dim || j >= dim) throw InvalidInput("riesz_double: axis out of range");
  require_zero_mean(f, "riesz_double");
  Spectrum s = f.spectrum();
  const auto& layout = *s.layout;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const double kk = layout.kdsq(k);
    s[k] = (kk == 0.0) ? Complex{0.0} : s[k] * (-(layout.kd(k, i) * layout.kd(k, j)) / kk);
  }
  return ScalarField(s);
}

ScalarField fractional_laplacian(const ScalarField& f, double s) {
  require_finite(f, "fractional_laplacian");
  if (!std::isfinite(s)) throw InvalidInput("fractional_laplacian: exponent must be finite");
  if (s < 0.0) require_zero_mean(f, "fractional_laplacian");
  Spectrum sp = f.spectrum();
  const auto& layout = *sp.layout;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const double kk = layout.ksq(k);
    if (kk == 0.0) {
      if (s < 0.0) sp[k] = 0.0;
      continue;
    }
    sp[k] *= std::pow(kk, s);
  }
  return ScalarField(sp);
}

double l2_norm(const ScalarField& f) {
  long double acc = 0.0L;
  for (double v : f.samples()) acc += static_cast<long double>(v) * v;
  return std::sqrt(static_cast<double>(acc) * std::pow(f.grid().spacing(), f.grid().dim()));
}

double l2_norm(const VectorField& v) {
  double acc = 0.0;
  for (int c = 0; c < v.dim(); ++c) {
    const double n = l2_norm(v[c]);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double spectral_l2_norm(const ScalarField& f) {
  const Spectrum& s = f.spectrum();
  long double acc = 0.0L;
  for (std::size_t k = 0; k < s.size(); ++k) acc += s.layout->multiplicity(k) * std::norm(s[k]);
  const double volume = std::pow(f.grid().side_length(), f.grid().dim());
  return std::sqrt(static_cast<double>(acc) * volume);
}

VectorField add(const VectorField& a, const VectorField& b, double scale_b) {
  require_same_grid(a.grid(), b.grid(), "add");
  std::vector<ScalarField> comps;
  for (int c = 0; c < a.dim(); ++c) {
    std::vector<double> s(a.grid().size());
    const auto x = a[c].samples();
    const auto y = b[c].samples();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = x[i] + scale_b * y[i];
    comps.emplace_back(a.grid(), std::move(s));
  }
  return VectorField(a.grid(), std::move(comps), a.divergence_free() && b.divergence_free());
}

VectorField scaled(const VectorField& a, double factor) {
  std::vector<ScalarField> comps;
  for (int c = 0; c < a.dim(); ++c) {
    std::vector<double> s(a[c].samples().begin(), a[c].samples().end());
    for (double& x : s) x *= factor;
    comps.emplace_back(a.grid(), std::move(s));
  }
  return VectorField(a.grid(), std::move(comps), a.divergence_free());
}

}  // namespace holderlab
