#include "exl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "exl/spectral.hpp"

namespace exl {

Grid3::Grid3(int n, double length) : n_(n), length_(length) {
  if (n % 2 != 0) throw std::invalid_argument("n must be even");
  if (n < 8) throw std::invalid_argument("n must be at least 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("length must be positive");
}

Grid3 make_grid(int n, double length) { return Grid3(n, length); }

ScalarField::ScalarField(const Grid3& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid3& grid, RealBuffer values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("value count does not match grid");
}

VectorField3::VectorField3(const Grid3& grid)
    : grid_(grid), comp_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField3::VectorField3(ScalarField x, ScalarField y, ScalarField z)
    : grid_(x.grid()), comp_{std::move(x), std::move(y), std::move(z)} {
  if (!(comp_[1].grid() == grid_) || !(comp_[2].grid() == grid_))
    throw std::invalid_argument("components live on different grids");
}

void require_same_grid(const Grid3& a, const Grid3& b) {
  if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

VectorField3 axpby(double a, const VectorField3& u, double b, const VectorField3& w) {
  require_same_grid(u.grid(), w.grid());
  VectorField3 out(u.grid());
  for (int c = 0; c < 3; ++c) {
    auto o = out[c].values();
    auto x = u[c].values();
    auto y = w[c].values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = a * x[i] + b * y[i];
  }
  return out;
}

VectorField3 scaled(double a, const VectorField3& u) {
  VectorField3 out(u.grid());
  for (int c = 0; c < 3; ++c) {
    auto o = out[c].values();
    auto x = u[c].values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = a * x[i];
  }
  return out;
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const VectorField3& u) {
  return std::max({max_abs(u[0]), max_abs(u[1]), max_abs(u[2])});
}

double max_abs_diff(const VectorField3& u, const VectorField3& w) {
  require_same_grid(u.grid(), w.grid());
  double m = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto x = u[c].values();
    auto y = w[c].values();
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  }
  return m;
}

double volume_mean(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s / static_cast<double>(f.grid().size());
}

double inner_mean(const VectorField3& u, const VectorField3& w) {
  require_same_grid(u.grid(), w.grid());
  const std::size_t n = u.grid().size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += dot(u.at(i), w.at(i));
  return s / static_cast<double>(n);
}

double rms(const VectorField3& u) { return std::sqrt(inner_mean(u, u)); }

namespace {

// Derivative wavenumbers for one axis, Nyquist zeroed.
std::vector<double> deriv_wavenumbers(const Grid3& g) {
  const int n = g.n();
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) k[j] = spectral::is_nyquist(j, n) ? 0.0 : g.base_wavenumber() * spectral::mode(j, n);
  return k;
}

struct Spectra {
  std::array<ComplexBuffer, 3> c;
};

Spectra forward3(const VectorField3& v) {
  return {{spectral::forward(v[0]), spectral::forward(v[1]), spectral::forward(v[2])}};
}

// Calls fn(idx, kvec) over the half-spectrum.
template <class Fn>
void for_each_mode(const Grid3& g, Fn&& fn) {
  const int n = g.n();
  const int nh = n / 2 + 1;
  const auto k = deriv_wavenumbers(g);
  std::size_t idx = 0;
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < nh; ++kx, ++idx) fn(idx, Vec3{k[kx], k[ky], k[kz]});
}

}  // namespace

VectorField3 curl(const VectorField3& v) {
  const Grid3& g = v.grid();
  Spectra s = forward3(v);
  std::array<ComplexBuffer, 3> out;
  for (auto& o : out) o.resize(g.spectral_size());
  const Complex I(0.0, 1.0);
  for_each_mode(g, [&](std::size_t i, const Vec3& k) {
    const Complex a = s.c[0][i], b = s.c[1][i], c = s.c[2][i];
    out[0][i] = I * (k[1] * c - k[2] * b);
    out[1][i] = I * (k[2] * a - k[0] * c);
    out[2][i] = I * (k[0] * b - k[1] * a);
  });
  return VectorField3(spectral::inverse(g, std::move(out[0])), spectral::inverse(g, std::move(out[1])),
                      spectral::inverse(g, std::move(out[2])));
}

ScalarField divergence(const VectorField3& v) {
  const Grid3& g = v.grid();
  Spectra s = forward3(v);
  ComplexBuffer out(g.spectral_size());
  const Complex I(0.0, 1.0);
  for_each_mode(g, [&](std::size_t i, const Vec3& k) {
    out[i] = I * (k[0] * s.c[0][i] + k[1] * s.c[1][i] + k[2] * s.c[2][i]);
  });
  return spectral::inverse(g, std::move(out));
}

VectorField3 gradient(const ScalarField& f) {
  const Grid3& g = f.grid();
  ComplexBuffer s = spectral::forward(f);
  std::array<ComplexBuffer, 3> out;
  for (auto& o : out) o.resize(g.spectral_size());
  const Complex I(0.0, 1.0);
  for_each_mode(g, [&](std::size_t i, const Vec3& k) {
    for (int c = 0; c < 3; ++c) out[c][i] = I * k[c] * s[i];
  });
  return VectorField3(spectral::inverse(g, std::move(out[0])), spectral::inverse(g, std::move(out[1])),
                      spectral::inverse(g, std::move(out[2])));
}

VectorField3 project_solenoidal(const VectorField3& v) {
  const Grid3& g = v.grid();
  Spectra s = forward3(v);
  for_each_mode(g, [&](std::size_t i, const Vec3& k) {
    const double k2 = dot(k, k);
    // Mean and pure-Nyquist modes have zero derivative wavenumber and are already divergence-free.
    if (k2 == 0.0) return;
    const Complex kv = k[0] * s.c[0][i] + k[1] * s.c[1][i] + k[2] * s.c[2][i];
    for (int c = 0; c < 3; ++c) s.c[c][i] -= (k[c] / k2) * kv;
  });
  return VectorField3(spectral::inverse(g, std::move(s.c[0])), spectral::inverse(g, std::move(s.c[1])),
                      spectral::inverse(g, std::move(s.c[2])));
}

namespace {

ComplexBuffer shifted_spectrum(const ScalarField& u, const std::vector<Complex>& px,
                               const std::vector<Complex>& py, const std::vector<Complex>& pz) {
  const Grid3& g = u.grid();
  ComplexBuffer s = spectral::forward(u);
  spectral::apply_shift(g, px, py, pz, s.data(), s.data());
  return s;
}

}  // namespace

ScalarField shift(const ScalarField& u, const Vec3& offset) {
  const Grid3& g = u.grid();
  const auto px = spectral::axis_phases(g, offset[0]);
  const auto py = spectral::axis_phases(g, offset[1]);
  const auto pz = spectral::axis_phases(g, offset[2]);
  return spectral::inverse(g, shifted_spectrum(u, px, py, pz));
}

VectorField3 shift(const VectorField3& u, const Vec3& offset) {
  const Grid3& g = u.grid();
  const auto px = spectral::axis_phases(g, offset[0]);
  const auto py = spectral::axis_phases(g, offset[1]);
  const auto pz = spectral::axis_phases(g, offset[2]);
  return VectorField3(spectral::inverse(g, shifted_spectrum(u[0], px, py, pz)),
                      spectral::inverse(g, shifted_spectrum(u[1], px, py, pz)),
                      spectral::inverse(g, shifted_spectrum(u[2], px, py, pz)));
}

ScalarField reflect(const ScalarField& u, double sign) {
  const Grid3& g = u.grid();
  const int n = g.n();
  ScalarField out(g);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        out[g.index(i, j, k)] = sign * u.at((n - i) % n, (n - j) % n, (n - k) % n);
  return out;
}

VectorField3 reflect(const VectorField3& u, double sign) {
  return VectorField3(reflect(u[0], sign), reflect(u[1], sign), reflect(u[2], sign));
}

}  // namespace exl
