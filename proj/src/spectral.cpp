#include "exl/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace exl::spectral {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(int n) : n_(n) {
  const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
  const std::size_t complex_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  RealBuffer real(real_size);
  ComplexBuffer spec(complex_size);
  auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
  // Caller holds planner_mutex().
  r2c_ = fftw_plan_dft_r2c_3d(n, n, n, real.data(), cplx, FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_3d(n, n, n, cplx, real.data(), FFTW_ESTIMATE);
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_));
}

std::shared_ptr<const FftPlan> FftPlan::get(int n) {
  // Mutex first so it outlives the cache during static destruction.
  std::mutex& m = planner_mutex();
  static std::map<int, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const FftPlan> plan(new FftPlan(n), [](const FftPlan* p) { delete p; });
  cache.emplace(n, plan);
  return plan;
}

void FftPlan::forward(const double* in, Complex* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void FftPlan::inverse(Complex* in, double* out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_), reinterpret_cast<fftw_complex*>(in), out);
  const std::size_t total = static_cast<std::size_t>(n_) * n_ * n_;
  const double scale = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i) out[i] *= scale;
}

ComplexBuffer forward(const ScalarField& f) {
  const Grid3& g = f.grid();
  ComplexBuffer out(g.spectral_size());
  FftPlan::get(g.n())->forward(f.buffer().data(), out.data());
  return out;
}

ScalarField inverse(const Grid3& grid, ComplexBuffer spectrum) {
  RealBuffer out(grid.size());
  FftPlan::get(grid.n())->inverse(spectrum.data(), out.data());
  return ScalarField(grid, std::move(out));
}

std::vector<Complex> axis_phases(const Grid3& grid, double offset) {
  const int n = grid.n();
  const double k0 = grid.base_wavenumber();
  std::vector<Complex> p(n);
  for (int j = 0; j < n; ++j) {
    const double arg = k0 * mode(j, n) * offset;
    p[j] = is_nyquist(j, n) ? Complex(std::cos(arg), 0.0) : Complex(std::cos(arg), std::sin(arg));
  }
  return p;
}

void apply_shift(const Grid3& grid, const std::vector<Complex>& px, const std::vector<Complex>& py,
                 const std::vector<Complex>& pz, const Complex* in, Complex* out) {
  const int n = grid.n();
  const int nh = n / 2 + 1;
  std::size_t idx = 0;
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      const Complex pyz = py[ky] * pz[kz];
      for (int kx = 0; kx < nh; ++kx, ++idx) out[idx] = in[idx] * (px[kx] * pyz);
    }
  }
}

}  // namespace exl::spectral
