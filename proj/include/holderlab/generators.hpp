#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "holderlab/field.hpp"

namespace holderlab {

/// One Fourier mode of a stream function (2D) or vector potential (3D):
/// amplitude * cos(2 pi k.x / L + phase), times `direction` in 3D.
struct StreamMode {
  LatticePoint k{1, 0, 0};
  double amplitude = 1.0;
  double phase = 0.0;
  Vec direction{0.0, 0.0, 1.0};
};

/// Divergence-free field sampled exactly from its modes: b = grad^perp psi in
/// 2D, b = curl A in 3D. Rejects modes outside the resolvable band.
VectorField stream_field(const Grid& grid, std::span<const StreamMode> modes);

/// Random modes with 0 < max|k_a| <= kmax, Gaussian amplitudes decaying as
/// |k|^{-slope}, uniform phases, random unit directions.
std::vector<StreamMode> random_modes(int dim, int kmax, double slope, std::uint64_t seed);

/// Random band-limited divergence-free field rescaled to unit max norm times
/// `amplitude`.
VectorField random_solenoidal(const Grid& grid, int kmax, double slope, std::uint64_t seed,
                              double amplitude = 1.0);

/// u = (0, amplitude * sin(2 pi m x_1 / L)[, 0]).
VectorField sine_mode(const Grid& grid, int m, double amplitude = 1.0);

/// u = (0, amplitude * |sin(2 pi x_1 / L)|^power[, 0]); only Hoelder-`power`
/// regular at the zeros of the sine.
VectorField abs_sine_power(const Grid& grid, double power, double amplitude = 1.0);

/// 2D: (sin x cos y, -cos x sin y); 3D: (sin x cos y cos z, -cos x sin y cos z, 0),
/// in units of 2 pi / L.
VectorField taylor_green(const Grid& grid, double amplitude = 1.0);

}  // namespace holderlab
