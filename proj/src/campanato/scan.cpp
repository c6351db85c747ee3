#include "holderlab/scan.hpp"

#include <cmath>
#include <limits>

#include "holderlab/errors.hpp"
#include "holderlab/parallel.hpp"

namespace holderlab {

namespace {

// Candidate (value, index, radius) ordering: larger value first, then smaller
// lattice index, then larger radius.
bool better(double v, std::size_t i, double r, double best_v, std::size_t best_i, double best_r) {
  if (v != best_v) return v > best_v;
  if (i != best_i) return i < best_i;
  return r > best_r;
}

}  // namespace

ScanResult seminorm_scan(const VectorField& field, double exponent, ScanMode mode,
                         const ScaleLadder& ladder, SeminormCase kind) {
  if (ladder.empty()) throw InvalidInput("seminorm_scan: empty scale ladder");
  require_same_grid(field.grid(), ladder.grid(), "seminorm_scan");
  if (!std::isfinite(exponent)) throw InvalidInput("seminorm_scan: exponent must be finite");

  ScanResult result;
  result.value = -1.0;
  result.value_below_unit = std::numeric_limits<double>::quiet_NaN();
  bool have_below = false;
  std::size_t below_index = 0;
  double below_r = 0.0;

  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const double r = ladder.radius(k);
    std::vector<double> q = mode == ScanMode::campanato_sqrt
                                ? campanato_map(field, ladder.weighted(k))
                                : morrey_map(field, ladder.ball(k), kind);
    const double scale = std::pow(r, -exponent);
    RadiusSup sup{r, -1.0, 0};
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double v = scale * (mode == ScanMode::campanato_sqrt ? std::sqrt(std::max(q[i], 0.0)) : q[i]);
      if (v > sup.value) {
        sup.value = v;
        sup.argmax_index = i;
      }
    }
    result.per_radius.push_back(sup);
    if (better(sup.value, sup.argmax_index, r, result.value, result.argmax_index, result.argmax_r)) {
      result.value = sup.value;
      result.argmax_index = sup.argmax_index;
      result.argmax_r = r;
    }
    if (r < 1.0 &&
        (!have_below || better(sup.value, sup.argmax_index, r, result.value_below_unit, below_index, below_r))) {
      have_below = true;
      result.value_below_unit = sup.value;
      below_index = sup.argmax_index;
      below_r = r;
    }
  }
  result.argmax = field.grid().point(result.argmax_index);
  return result;
}

ScanResult morrey_scan(const VectorField& b, const SeminormSpec& spec, const ScaleLadder& ladder) {
  return seminorm_scan(b, spec.beta, ScanMode::morrey_case, ladder, spec.kind);
}

double holder_from_campanato(const VectorField& u, double alpha, const ScaleLadder& ladder) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  return seminorm_scan(u, alpha, ScanMode::campanato_sqrt, ladder).value;
}

double sampled_holder_quotient(const VectorField& u, double alpha, double max_distance,
                               int samples_per_axis) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in (0, 1]");
  const Grid& grid = u.grid();
  const int n = grid.points_per_axis();
  const int stride = std::max(1, n / std::max(1, samples_per_axis));
  const int dim = grid.dim();
  const double h = grid.spacing();
  const double period = grid.side_length();

  std::vector<LatticePoint> pts;
  for (int i = 0; i < n; i += stride)
    for (int j = 0; j < n; j += stride) {
      if (dim == 2) {
        pts.push_back({i, j, 0});
      } else {
        for (int k = 0; k < n; k += stride) pts.push_back({i, j, k});
      }
    }
  std::vector<Vec> values(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p) values[p] = u.at(grid.index(pts[p]));

  const std::size_t chunks = thread_count();
  std::vector<double> best(chunks, 0.0);
  parallel_chunks(pts.size(), chunks, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    double local = 0.0;
    for (std::size_t a = begin; a < end; ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        double dist2 = 0.0;
        for (int c = 0; c < dim; ++c) {
          double d = std::abs(pts[a][c] - pts[b][c]) * h;
          d = std::min(d, period - d);
          dist2 += d * d;
        }
        const double dist = std::sqrt(dist2);
        if (dist > max_distance || dist == 0.0) continue;
        double diff2 = 0.0;
        for (int c = 0; c < dim; ++c) {
          const double d = values[a][c] - values[b][c];
          diff2 += d * d;
        }
        local = std::max(local, std::sqrt(diff2) / std::pow(dist, alpha));
      }
    best[chunk] = local;
  });
  double q = 0.0;
  for (double v : best) q = std::max(q, v);
  return q;
}

}  // namespace holderlab
