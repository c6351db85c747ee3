#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "holderlab/grid.hpp"

namespace holderlab {

using Complex = std::complex<double>;

/// Precomputed wavenumber tables and transform plans for one grid shape.
///
/// The spectral array is the real-to-complex half spectrum: N^(n-1) x (N/2+1),
/// row-major. Coefficients are normalized so that a unit-amplitude cosine
/// mode reads 1/2 at +k and its mirror.
class SpectralLayout {
 public:
  /// Shared layout for a grid; built once per grid shape, safe to call from
  /// any thread.
  static std::shared_ptr<const SpectralLayout> for_grid(const Grid& grid);

  explicit SpectralLayout(const Grid& grid);
  ~SpectralLayout();
  SpectralLayout(const SpectralLayout&) = delete;
  SpectralLayout& operator=(const SpectralLayout&) = delete;

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return size_; }

  /// Integer mode number of spectral entry s along an axis (signed).
  int mode(std::size_t s, int axis) const noexcept { return modes_[axis][s]; }
  /// Derivative wavenumber: 2*pi*m/L, zero on the Nyquist plane of that axis.
  double kd(std::size_t s, int axis) const noexcept { return kd_[axis][s]; }
  /// |k|^2 with the Nyquist component kept (exact Laplacian symbol).
  double ksq(std::size_t s) const noexcept { return ksq_[s]; }
  /// |kd|^2.
  double kdsq(std::size_t s) const noexcept { return kdsq_[s]; }
  /// True when every |m| is inside the 2/3 band.
  bool retained(std::size_t s) const noexcept { return keep_[s] != 0; }
  /// Number of full-spectrum modes represented by entry s (1 or 2).
  double multiplicity(std::size_t s) const noexcept { return mult_[s]; }
  /// Largest retained |m| under the 2/3 rule.
  int dealias_cutoff() const noexcept { return cutoff_; }

  void forward(std::span<const double> samples, std::span<Complex> coeffs) const;
  void inverse(std::span<const Complex> coeffs, std::span<double> samples) const;

 private:
  Grid grid_;
  std::size_t size_;
  int cutoff_;
  std::array<std::vector<int>, 3> modes_;
  std::array<std::vector<double>, 3> kd_;
  std::vector<double> ksq_;
  std::vector<double> kdsq_;
  std::vector<std::uint8_t> keep_;
  std::vector<double> mult_;
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
};

/// Normalized half-spectrum of a real field.
struct Spectrum {
  std::shared_ptr<const SpectralLayout> layout;
  std::vector<Complex> coeffs;

  const Grid& grid() const noexcept { return layout->grid(); }
  std::size_t size() const noexcept { return coeffs.size(); }
  Complex& operator[](std::size_t s) noexcept { return coeffs[s]; }
  const Complex& operator[](std::size_t s) const noexcept { return coeffs[s]; }

  static Spectrum zeros(const Grid& grid);
  /// Zeroes every mode outside the 2/3 band.
  void dealias();
};

}  // namespace holderlab
