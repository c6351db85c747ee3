#include "holderlab/campanato.hpp"

#include <cmath>
#include <limits>

#include "holderlab/errors.hpp"
#include "holderlab/operators.hpp"
#include "holderlab/parallel.hpp"

namespace holderlab {

namespace {

// Wrapped linear indices of x + offset for every stencil offset.
class Neighbors {
 public:
  explicit Neighbors(const Grid& grid) : grid_(grid), n_(grid.points_per_axis()) {
    wrap_.resize(3 * static_cast<std::size_t>(n_));
    for (int i = 0; i < 3 * n_; ++i) wrap_[i] = i % n_;
  }

  const std::vector<std::size_t>& of(LatticePoint x, const std::vector<LatticePoint>& offsets) {
    for (int a = 0; a < grid_.dim(); ++a) x[a] = grid_.wrap(x[a]);
    idx_.resize(offsets.size());
    const int dim = grid_.dim();
    const std::size_t n = static_cast<std::size_t>(n_);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      const auto& d = offsets[k];
      std::size_t i = static_cast<std::size_t>(wrap_[x[0] + d[0] + n_]);
      i = i * n + static_cast<std::size_t>(wrap_[x[1] + d[1] + n_]);
      if (dim == 3) i = i * n + static_cast<std::size_t>(wrap_[x[2] + d[2] + n_]);
      idx_[k] = i;
    }
    return idx_;
  }

 private:
  const Grid& grid_;
  int n_;
  std::vector<int> wrap_;
  std::vector<std::size_t> idx_;
};

void require_stencil_grid(const VectorField& u, const WeightedStencil& st) {
  if (st.offsets.empty()) throw InvalidInput("empty stencil");
  if (!(st.radius >= kMinimumStencilCells * u.grid().spacing() * (1.0 - 1e-12)))
    throw InvalidInput("stencil radius below the minimum scale");
}

Vec mean_at(const VectorField& u, const std::vector<std::size_t>& idx, const std::vector<double>& w) {
  Vec m{0.0, 0.0, 0.0};
  for (int c = 0; c < u.dim(); ++c) {
    const auto s = u[c].samples();
    double acc = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) acc += w[k] * s[idx[k]];
    m[c] = acc;
  }
  return m;
}

double oscillation_at(const VectorField& u, const std::vector<std::size_t>& idx,
                      const std::vector<double>& w) {
  double total = 0.0;
  for (int c = 0; c < u.dim(); ++c) {
    const auto s = u[c].samples();
    double mean = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) mean += w[k] * s[idx[k]];
    double acc = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const double d = s[idx[k]] - mean;
      acc += w[k] * d * d;
    }
    total += acc;
  }
  return total;
}

double morrey_at(const VectorField& b, const std::vector<std::size_t>& idx, std::size_t center,
                 SeminormCase kind, double unit_measure) {
  const int dim = b.dim();
  Vec ref{0.0, 0.0, 0.0};
  switch (kind) {
    case SeminormCase::morrey: break;
    case SeminormCase::bmo:
      for (int c = 0; c < dim; ++c) {
        const auto s = b[c].samples();
        double acc = 0.0;
        for (std::size_t i : idx) acc += s[i];
        ref[c] = acc / static_cast<double>(idx.size());
      }
      break;
    case SeminormCase::holder: ref = b.at(center); break;
    default: throw InvalidInput("unknown seminorm case");
  }
  double acc = 0.0;
  for (std::size_t i : idx) {
    double s2 = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double d = b[c][i] - ref[c];
      s2 += d * d;
    }
    acc += std::sqrt(s2);
  }
  return unit_measure * acc / static_cast<double>(idx.size());
}

}  // namespace

Vec local_mean(const VectorField& u, const LatticePoint& x, const WeightedStencil& st) {
  require_stencil_grid(u, st);
  Neighbors nb(u.grid());
  return mean_at(u, nb.of(x, st.offsets), st.weights);
}

double campanato_I(const VectorField& u, const LatticePoint& x, const WeightedStencil& st) {
  require_stencil_grid(u, st);
  Neighbors nb(u.grid());
  return oscillation_at(u, nb.of(x, st.offsets), st.weights);
}

double double_diff_form(const VectorField& u, const LatticePoint& x, const WeightedStencil& st) {
  require_stencil_grid(u, st);
  Neighbors nb(u.grid());
  const auto& idx = nb.of(x, st.offsets);
  long double total = 0.0L;
  for (int c = 0; c < u.dim(); ++c) {
    const auto s = u[c].samples();
    long double first = 0.0L, second = 0.0L;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const long double v = s[idx[k]];
      first += st.weights[k] * v;
      second += st.weights[k] * v * v;
    }
    total += second - first * first;
  }
  return static_cast<double>(2.0L * total);
}

double morrey_M(const VectorField& b, const LatticePoint& x, const BallStencil& ball,
                SeminormCase kind) {
  if (ball.offsets.empty()) throw InvalidInput("empty ball stencil");
  Neighbors nb(b.grid());
  return morrey_at(b, nb.of(x, ball.offsets), b.grid().index(x), kind, ball.unit_ball_measure);
}

double dissipation_D(const Jacobian& grad_u, const LatticePoint& x, const WeightedStencil& st) {
  if (grad_u.empty()) throw InvalidInput("dissipation_D: empty jacobian");
  require_stencil_grid(grad_u.front(), st);
  Neighbors nb(grad_u.front().grid());
  const auto& idx = nb.of(x, st.offsets);
  double total = 0.0;
  for (const auto& gi : grad_u) total += oscillation_at(gi, idx, st.weights);
  return -2.0 * total;
}

double dissipation_D(const VectorField& u, const LatticePoint& x, const WeightedStencil& st) {
  return dissipation_D(jacobian(u), x, st);
}

double dI_dr(const VectorField& u, const Jacobian& grad_u, const LatticePoint& x,
             const WeightedStencil& st) {
  require_stencil_grid(u, st);
  if (static_cast<int>(grad_u.size()) != u.dim()) throw InvalidInput("dI_dr: jacobian size mismatch");
  Neighbors nb(u.grid());
  const auto& idx = nb.of(x, st.offsets);
  const Vec mean = mean_at(u, idx, st.weights);
  const int dim = u.dim();
  double acc = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    double dot = 0.0;
    for (int c = 0; c < dim; ++c) {
      double directional = 0.0;
      for (int a = 0; a < dim; ++a) directional += st.y[k][a] * grad_u[c][a][i];
      dot += (u[c][i] - mean[c]) * directional;
    }
    acc += st.weights[k] * dot;
  }
  return 2.0 * acc;
}

double InequalityGap::ratio() const noexcept {
  if (lhs <= 0.0) return 0.0;
  const double rhs = rhs_factor_I * rhs_factor_E;
  return rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
}

double InequalityGap::ratio_doubled_coupling() const noexcept {
  if (lhs_doubled_coupling <= 0.0) return 0.0;
  const double rhs = rhs_factor_I * rhs_factor_E;
  return rhs > 0.0 ? lhs_doubled_coupling / rhs : std::numeric_limits<double>::infinity();
}

InequalityGap functional_inequality_gap(const VectorField& u, const Jacobian& grad_u,
                                        const LatticePoint& x, const WeightedStencil& st) {
  const double I = campanato_I(u, x, st);
  const double rIr = st.radius * dI_dr(u, grad_u, x, st);
  const double D = dissipation_D(grad_u, x, st);
  InequalityGap gap;
  gap.lhs = 2.0 * I - rIr;
  gap.lhs_doubled_coupling = 2.0 * I - 2.0 * rIr;
  gap.rhs_factor_I = std::sqrt(std::max(I, 0.0));
  gap.rhs_factor_E = std::sqrt(std::max(-st.radius * st.radius * D, 0.0));
  return gap;
}

std::vector<double> campanato_map(const VectorField& u, const WeightedStencil& st) {
  require_stencil_grid(u, st);
  const Grid& grid = u.grid();
  std::vector<double> out(grid.size());
  parallel_chunks(grid.size(), thread_count(), [&](std::size_t, std::size_t begin, std::size_t end) {
    Neighbors nb(grid);
    for (std::size_t i = begin; i < end; ++i)
      out[i] = oscillation_at(u, nb.of(grid.point(i), st.offsets), st.weights);
  });
  return out;
}

std::vector<double> morrey_map(const VectorField& b, const BallStencil& ball, SeminormCase kind) {
  if (ball.offsets.empty()) throw InvalidInput("empty ball stencil");
  const Grid& grid = b.grid();
  std::vector<double> out(grid.size());
  parallel_chunks(grid.size(), thread_count(), [&](std::size_t, std::size_t begin, std::size_t end) {
    Neighbors nb(grid);
    for (std::size_t i = begin; i < end; ++i)
      out[i] = morrey_at(b, nb.of(grid.point(i), ball.offsets), i, kind, ball.unit_ball_measure);
  });
  return out;
}

}  // namespace holderlab
