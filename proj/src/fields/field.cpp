#include "holderlab/field.hpp"

#include <algorithm>
#include <cmath>

#include "holderlab/errors.hpp"

namespace holderlab {

ScalarField::ScalarField(Grid grid)
    : grid_(grid), samples_(grid.size(), 0.0), cache_(std::make_shared<Cache>()) {}

ScalarField::ScalarField(Grid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)), cache_(std::make_shared<Cache>()) {
  if (samples_.size() != grid_.size())
    throw InvalidInput("sample count does not match the grid");
}

ScalarField::ScalarField(const Spectrum& spectrum)
    : grid_(spectrum.grid()), samples_(spectrum.grid().size()), cache_(std::make_shared<Cache>()) {
  spectrum.layout->inverse(spectrum.coeffs, samples_);
}

std::span<double> ScalarField::mutable_samples() {
  cache_ = std::make_shared<Cache>();
  return samples_;
}

const Spectrum& ScalarField::spectrum() const {
  std::call_once(cache_->once, [this] {
    Spectrum s = Spectrum::zeros(grid_);
    s.layout->forward(samples_, s.coeffs);
    cache_->value = std::move(s);
  });
  return *cache_->value;
}

bool ScalarField::has_spectrum() const noexcept { return cache_->value.has_value(); }

double ScalarField::mean() const noexcept {
  long double acc = 0.0L;
  for (double v : samples_) acc += v;
  return static_cast<double>(acc / samples_.size());
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); });
}

VectorField::VectorField(Grid grid) : grid_(grid) {
  components_.reserve(grid.dim());
  for (int c = 0; c < grid.dim(); ++c) components_.emplace_back(grid);
}

VectorField::VectorField(Grid grid, std::vector<ScalarField> components, bool divergence_free)
    : grid_(grid), components_(std::move(components)), divergence_free_(divergence_free) {
  if (static_cast<int>(components_.size()) != grid_.dim())
    throw InvalidInput("vector field needs one component per axis");
  for (const auto& c : components_) require_same_grid(c.grid(), grid_, "vector field component");
}

ScalarField& VectorField::component(int c) {
  divergence_free_ = false;
  return components_[c];
}

Vec VectorField::at(std::size_t i) const noexcept {
  Vec v{0.0, 0.0, 0.0};
  for (int c = 0; c < dim(); ++c) v[c] = components_[c][i];
  return v;
}

double VectorField::max_norm() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    double s = 0.0;
    for (int c = 0; c < dim(); ++c) s += components_[c][i] * components_[c][i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

Vec VectorField::mean() const noexcept {
  Vec v{0.0, 0.0, 0.0};
  for (int c = 0; c < dim(); ++c) v[c] = components_[c].mean();
  return v;
}

bool VectorField::all_finite() const noexcept {
  return std::all_of(components_.begin(), components_.end(),
                     [](const ScalarField& f) { return f.all_finite(); });
}

}  // namespace holderlab
