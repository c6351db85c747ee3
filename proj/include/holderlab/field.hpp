#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "holderlab/grid.hpp"
#include "holderlab/spectral.hpp"

namespace holderlab {

/// Real samples on a periodic lattice, with a lazily filled spectral cache.
///
/// Copies share the cache until one of them is mutated.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);
  ScalarField(Grid grid, std::vector<double> samples);
  /// Synthesizes samples from a spectrum.
  explicit ScalarField(const Spectrum& spectrum);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  /// Mutable access; drops the spectral cache.
  std::span<double> mutable_samples();
  double operator[](std::size_t i) const noexcept { return samples_[i]; }

  /// Exact discrete transform of the samples (computed once, then shared).
  const Spectrum& spectrum() const;
  bool has_spectrum() const noexcept;

  double mean() const noexcept;
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<Spectrum> value;
  };
  Grid grid_;
  std::vector<double> samples_;
  mutable std::shared_ptr<Cache> cache_;
};

/// n-component field on an n-dimensional grid.
class VectorField {
 public:
  explicit VectorField(Grid grid);
  VectorField(Grid grid, std::vector<ScalarField> components, bool divergence_free = false);

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim(); }
  const ScalarField& operator[](int c) const noexcept { return components_[c]; }
  ScalarField& component(int c);
  const std::vector<ScalarField>& components() const noexcept { return components_; }

  bool divergence_free() const noexcept { return divergence_free_; }
  void set_divergence_free(bool flag) noexcept { divergence_free_ = flag; }

  /// Sample vector at a lattice index.
  Vec at(std::size_t i) const noexcept;
  /// max over the lattice of |v(x)|.
  double max_norm() const noexcept;
  Vec mean() const noexcept;
  bool all_finite() const noexcept;

 private:
  Grid grid_;
  std::vector<ScalarField> components_;
  bool divergence_free_ = false;
};

/// Gradients of each component: jacobian[i][j] = d u_i / d x_j.
using Jacobian = std::vector<VectorField>;

}  // namespace holderlab
