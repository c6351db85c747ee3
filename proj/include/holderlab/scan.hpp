#pragma once

#include <cstddef>
#include <vector>

#include "holderlab/campanato.hpp"
#include "holderlab/ladder.hpp"

namespace holderlab {

enum class ScanMode { campanato_sqrt, morrey_case };

struct RadiusSup {
  double r = 0.0;
  double value = 0.0;
  std::size_t argmax_index = 0;
};

/// sup over lattice x and ladder r of r^{-exponent} q(x, r), with
/// q = sqrt(I) or M. Ties resolve to the smallest lattice index, then the
/// largest radius, independent of the thread count.
struct ScanResult {
  double value = 0.0;
  std::size_t argmax_index = 0;
  LatticePoint argmax{0, 0, 0};
  double argmax_r = 0.0;
  std::vector<RadiusSup> per_radius;
  /// Same supremum restricted to radii < 1 (NaN when the ladder has none).
  double value_below_unit = 0.0;
};

ScanResult seminorm_scan(const VectorField& field, double exponent, ScanMode mode,
                         const ScaleLadder& ladder, SeminormCase kind = SeminormCase::holder);

/// sup r^{-beta} M over the ladder for the case selected by `spec`.
ScanResult morrey_scan(const VectorField& b, const SeminormSpec& spec, const ScaleLadder& ladder);

/// Campanato constant A = sup r^{-alpha} sqrt(I); alpha must lie in (0, 1).
double holder_from_campanato(const VectorField& u, double alpha, const ScaleLadder& ladder);

/// Brute-force sup |u(x) - u(y)| / |x - y|^alpha over pairs of a subsampled
/// lattice (about `samples_per_axis` points per axis) with periodic distance
/// at most `max_distance`.
double sampled_holder_quotient(const VectorField& u, double alpha, double max_distance,
                               int samples_per_axis = 64);

}  // namespace holderlab
