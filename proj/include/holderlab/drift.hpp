#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holderlab/field.hpp"
#include "holderlab/generators.hpp"
#include "holderlab/ladder.hpp"

namespace holderlab {

enum class DriftKind { none, static_stream, time_modulated, mollified, self_coupled };

const char* to_string(DriftKind k) noexcept;
DriftKind drift_kind_from_string(const std::string& s);

/// Target seminorm g(t) of the drift.
struct Envelope {
  enum class Shape { constant, square, sine };
  Shape shape = Shape::constant;
  double level = 0.0;   ///< value (constant) or high value (square) or mean (sine)
  double low = 0.0;     ///< low value of the square wave; sine amplitude
  double period = 1.0;

  double operator()(double t) const noexcept;
};

struct DriftSpec {
  DriftKind kind = DriftKind::none;
  /// Template modes; when empty a random template is drawn from `seed`.
  std::vector<StreamMode> modes;
  int random_kmax = 3;
  double random_slope = 1.0;
  std::uint64_t seed = 1;
  Envelope envelope;
  double mollify_eps = 0.0;
  double coupling_exponent = -0.25;
  SeminormSpec seminorm;
};

/// Divergence-free drift at time t whose seminorm scan matches
/// envelope(t) within 2% (secant iteration on the amplitude, at most five
/// rescans). Rejects self-coupled specs and zero templates with a nonzero
/// target.
VectorField make_drift(const DriftSpec& spec, const Grid& grid, double t, const ScaleLadder& ladder);

/// Drift source for time stepping: builds and scans the template once, then
/// uses the exact homogeneity of every seminorm case (scan(a b) = |a| scan(b)).
class DriftGenerator {
 public:
  DriftGenerator(DriftSpec spec, const ScaleLadder& ladder);

  const DriftSpec& spec() const noexcept { return spec_; }
  bool depends_on_solution() const noexcept { return spec_.kind == DriftKind::self_coupled; }
  /// Drift at time t; `u` is only read for self-coupled drifts.
  VectorField at(double t, const VectorField& u) const;
  /// Seminorm of the unit-amplitude template (0 for none / self-coupled).
  double template_seminorm() const noexcept { return template_scan_; }

 private:
  DriftSpec spec_;
  Grid grid_;
  std::optional<VectorField> template_;
  double template_scan_ = 0.0;
};

/// Convolution with the mass-one bump of radius eps (spectral multiply).
/// Requires h <= eps <= L/2.
VectorField mollify_drift(const VectorField& b, double eps);

/// (-Laplacian)^{s} u componentwise (s = -1/4 by default); u must have zero mean.
VectorField self_coupled_drift(const VectorField& u, double exponent = -0.25);

/// u_r(x) = r u(r x) on the torus for dyadic r = 2^m, by remapping Fourier
/// modes k -> k / r. Rejects non-dyadic r and fields whose modes do not map
/// onto the grid band.
VectorField rescale(const VectorField& u, double r);

}  // namespace holderlab
