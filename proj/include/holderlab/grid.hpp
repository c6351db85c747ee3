#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace holderlab {

/// Integer lattice coordinates; unused trailing axes are zero.
using LatticePoint = std::array<int, 3>;

/// Small fixed-size real vector; entries past the grid dimension are zero.
using Vec = std::array<double, 3>;

/// Periodic n-torus [0,L)^n sampled on N points per axis, row-major with
/// axis 0 slowest.
class Grid {
 public:
  Grid(int dim, int points_per_axis, double side_length);

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return n_; }
  double side_length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / n_; }
  /// 2*pi/L, the fundamental wavenumber.
  double wavenumber_unit() const noexcept;
  std::size_t size() const noexcept { return size_; }

  std::size_t index(const LatticePoint& p) const noexcept;
  LatticePoint point(std::size_t index) const noexcept;
  Vec coords(const LatticePoint& p) const noexcept;
  /// Wraps an arbitrary integer coordinate onto [0, N).
  int wrap(int i) const noexcept {
    int m = i % n_;
    return m < 0 ? m + n_ : m;
  }
  /// Linear index of p + offset with periodic wrap.
  std::size_t shifted(const LatticePoint& p, const LatticePoint& offset) const noexcept;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
};

/// Throws InvalidInput unless both grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace holderlab
