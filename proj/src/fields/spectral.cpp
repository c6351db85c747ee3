#include "holderlab/spectral.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>
#include <tuple>

namespace holderlab {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::shared_ptr<const SpectralLayout> SpectralLayout::for_grid(const Grid& grid) {
  using Key = std::tuple<int, int, double>;
  static std::mutex registry_mutex;
  static std::map<Key, std::shared_ptr<const SpectralLayout>> registry;
  std::lock_guard lock(registry_mutex);
  Key key{grid.dim(), grid.points_per_axis(), grid.side_length()};
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto layout = std::make_shared<const SpectralLayout>(grid);
  registry.emplace(key, layout);
  return layout;
}

SpectralLayout::SpectralLayout(const Grid& grid) : grid_(grid) {
  const int n = grid.points_per_axis();
  const int dim = grid.dim();
  const int half = n / 2 + 1;
  size_ = static_cast<std::size_t>(half);
  for (int a = 0; a < dim - 1; ++a) size_ *= static_cast<std::size_t>(n);
  cutoff_ = (n - 1) / 3;
  const double unit = grid.wavenumber_unit();

  for (int a = 0; a < 3; ++a) {
    modes_[a].assign(size_, 0);
    kd_[a].assign(size_, 0.0);
  }
  ksq_.assign(size_, 0.0);
  kdsq_.assign(size_, 0.0);
  keep_.assign(size_, 1);
  mult_.assign(size_, 1.0);

  for (std::size_t s = 0; s < size_; ++s) {
    std::size_t rest = s;
    std::array<int, 3> idx{0, 0, 0};
    idx[dim - 1] = static_cast<int>(rest % half);
    rest /= half;
    for (int a = dim - 2; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % n);
      rest /= n;
    }
    double ksq = 0.0, kdsq = 0.0;
    bool keep = true;
    for (int a = 0; a < dim; ++a) {
      int m = (a == dim - 1) ? idx[a] : (idx[a] <= n / 2 ? idx[a] : idx[a] - n);
      modes_[a][s] = m;
      const double k = unit * m;
      const double kd = (std::abs(m) == n / 2) ? 0.0 : k;
      kd_[a][s] = kd;
      ksq += k * k;
      kdsq += kd * kd;
      if (std::abs(m) > cutoff_) keep = false;
    }
    ksq_[s] = ksq;
    kdsq_[s] = kdsq;
    keep_[s] = keep ? 1 : 0;
    const int last = idx[dim - 1];
    mult_[s] = (last == 0 || last == n / 2) ? 1.0 : 2.0;
  }

  std::array<int, 3> dims{n, n, n};
  std::lock_guard lock(planner_mutex());
  double* real_buf = fftw_alloc_real(grid.size());
  fftw_complex* cplx_buf = fftw_alloc_complex(size_);
  plan_r2c_ = fftw_plan_dft_r2c(dim, dims.data(), real_buf, cplx_buf,
                                FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
  plan_c2r_ = fftw_plan_dft_c2r(dim, dims.data(), cplx_buf, real_buf,
                                FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
  fftw_free(real_buf);
  fftw_free(cplx_buf);
}

SpectralLayout::~SpectralLayout() {
  std::lock_guard lock(planner_mutex());
  if (plan_r2c_) fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  if (plan_c2r_) fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

void SpectralLayout::forward(std::span<const double> samples, std::span<Complex> coeffs) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), const_cast<double*>(samples.data()),
                       reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : coeffs) c *= scale;
}

void SpectralLayout::inverse(std::span<const Complex> coeffs, std::span<double> samples) const {
  std::vector<Complex> scratch(coeffs.begin(), coeffs.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), samples.data());
}

Spectrum Spectrum::zeros(const Grid& grid) {
  auto layout = SpectralLayout::for_grid(grid);
  const std::size_t n = layout->size();
  return Spectrum{std::move(layout), std::vector<Complex>(n)};
}

void Spectrum::dealias() {
  for (std::size_t s = 0; s < coeffs.size(); ++s)
    if (!layout->retained(s)) coeffs[s] = 0.0;
}

}  // namespace holderlab
