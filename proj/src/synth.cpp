#include "exl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "exl/rng.hpp"
#include "exl/spectral.hpp"

namespace exl {

void validate(const SpectrumSpec& spec, const Grid3& grid) {
  if (spec.kmin < 1 || spec.kmax < spec.kmin)
    throw std::invalid_argument("spectrum band must satisfy 1 <= kmin <= kmax");
  if (3 * spec.kmax > grid.n())
    throw std::invalid_argument("band exceeds resolved wavenumbers: kmax " + std::to_string(spec.kmax) +
                                " > n/3 for n=" + std::to_string(grid.n()));
  if (!(spec.rms > 0.0) || !std::isfinite(spec.rms)) throw std::invalid_argument("rms must be positive");
  if (!std::isfinite(spec.slope)) throw std::invalid_argument("slope must be finite");
}

VectorField3 abc_flow(const Grid3& grid, double A, double B, double C, const Vec3& phase) {
  VectorField3 v(grid);
  const int n = grid.n();
  const double k0 = grid.base_wavenumber();
  for (int k = 0; k < n; ++k) {
    const double z = k0 * (grid.coord(k) + phase[2]);
    for (int j = 0; j < n; ++j) {
      const double y = k0 * (grid.coord(j) + phase[1]);
      for (int i = 0; i < n; ++i) {
        const double x = k0 * (grid.coord(i) + phase[0]);
        v.set(grid.index(i, j, k), {A * std::sin(z) + C * std::cos(y), B * std::sin(x) + A * std::cos(z),
                                    C * std::sin(y) + B * std::cos(x)});
      }
    }
  }
  return v;
}

VectorField3 taylor_green(const Grid3& grid) {
  VectorField3 v(grid);
  const int n = grid.n();
  const double k0 = grid.base_wavenumber();
  for (int k = 0; k < n; ++k) {
    const double z = k0 * grid.coord(k);
    for (int j = 0; j < n; ++j) {
      const double y = k0 * grid.coord(j);
      for (int i = 0; i < n; ++i) {
        const double x = k0 * grid.coord(i);
        v.set(grid.index(i, j, k),
              {std::sin(x) * std::cos(y) * std::cos(z), -std::cos(x) * std::sin(y) * std::cos(z), 0.0});
      }
    }
  }
  return v;
}

namespace {

int shell_of(int mx, int my, int mz) {
  return static_cast<int>(std::lround(std::sqrt(static_cast<double>(mx * mx + my * my + mz * mz))));
}

}  // namespace

VectorField3 random_solenoidal(const Grid3& grid, const SpectrumSpec& spec) {
  validate(spec, grid);
  const int n = grid.n();
  const int nh = n / 2 + 1;
  // Draws are keyed by the signed mode triple, so a spec gives the same function on every grid.
  const auto mode_key = [](int mx, int my, int mz) -> std::uint64_t {
    constexpr std::uint64_t span = 2049;
    const auto w = [](int m) { return static_cast<std::uint64_t>(m + 1024); };
    return (w(mz) * span + w(my)) * span + w(mx);
  };
  // Mode counts per shell over the full lattice, so expected shell energy is exactly shell^slope.
  std::vector<double> count(spec.kmax + 1, 0.0);
  for (int mz = -spec.kmax; mz <= spec.kmax; ++mz)
    for (int my = -spec.kmax; my <= spec.kmax; ++my)
      for (int mx = -spec.kmax; mx <= spec.kmax; ++mx) {
        const int s = shell_of(mx, my, mz);
        if (s >= spec.kmin && s <= spec.kmax) count[s] += 1.0;
      }

  const CounterRng rng(spec.seed);
  std::array<ComplexBuffer, 3> c;
  for (auto& b : c) b.assign(grid.spectral_size(), Complex(0.0, 0.0));

  std::size_t idx = 0;
  for (int kz = 0; kz < n; ++kz) {
    for (int ky = 0; ky < n; ++ky) {
      for (int kx = 0; kx < nh; ++kx, ++idx) {
        const int mx = spectral::mode(kx, n), my = spectral::mode(ky, n), mz = spectral::mode(kz, n);
        const int s = shell_of(mx, my, mz);
        if (s < spec.kmin || s > spec.kmax) continue;
        // Draw on the canonical member of {k, -k}; the partner gets the conjugate.
        const std::uint64_t a = mode_key(mx, my, mz);
        const std::uint64_t b = mode_key(-mx, -my, -mz);
        const std::uint64_t canon = std::min(a, b);
        const double sign = (a == canon) ? 1.0 : -1.0;
        const Vec3 kv{static_cast<double>(mx), static_cast<double>(my), static_cast<double>(mz)};
        std::array<Complex, 3> z;
        for (int d = 0; d < 3; ++d) {
          const std::uint64_t base = (canon * 3 + d) * 2;
          z[d] = Complex(rng.normal(base), sign * rng.normal(base + 1));
        }
        const double k2 = dot(kv, kv);
        const Complex k_dot_z = kv[0] * z[0] + kv[1] * z[1] + kv[2] * z[2];
        const double amp = std::sqrt(std::pow(static_cast<double>(s), spec.slope) / count[s]);
        for (int d = 0; d < 3; ++d) c[d][idx] = amp * (z[d] - (kv[d] / k2) * k_dot_z);
      }
    }
  }
  VectorField3 v(spectral::inverse(grid, std::move(c[0])), spectral::inverse(grid, std::move(c[1])),
                 spectral::inverse(grid, std::move(c[2])));
  const double r = rms(v);
  return r > 0.0 ? scaled(spec.rms / r, v) : v;
}

std::vector<double> shell_spectrum(const VectorField3& u) {
  const Grid3& g = u.grid();
  const int n = g.n();
  const int nh = n / 2 + 1;
  const double norm = 1.0 / static_cast<double>(g.size());
  std::vector<double> e(static_cast<std::size_t>(std::ceil(std::sqrt(3.0) * (n / 2))) + 2, 0.0);
  for (int c = 0; c < 3; ++c) {
    const ComplexBuffer s = spectral::forward(u[c]);
    std::size_t idx = 0;
    for (int kz = 0; kz < n; ++kz)
      for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < nh; ++kx, ++idx) {
          // Interior half-spectrum columns stand for two modes each.
          const double mult = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
          const int sh = shell_of(spectral::mode(kx, n), spectral::mode(ky, n), spectral::mode(kz, n));
          e[sh] += 0.5 * mult * std::norm(s[idx] * norm);
        }
  }
  return e;
}

FieldPair mhd_test_pair(const Grid3& grid, std::uint64_t seed) {
  if (seed == 0) return {abc_flow(grid), abc_flow(grid, 1.0, 1.0, 1.0, {0.5, 1.0, 1.5})};
  const CounterRng root(seed);
  SpectrumSpec sv;
  sv.kmin = 1;
  sv.kmax = std::min(3, grid.n() / 3);
  sv.seed = root.child(1).key();
  SpectrumSpec sh = sv;
  sh.seed = root.child(2).key();
  return {random_solenoidal(grid, sv), random_solenoidal(grid, sh)};
}

}  // namespace exl
