#pragma once

#include <cstdint>
#include <utility>

#include "exl/grid.hpp"

namespace exl {

/// Shell energy E(k) ~ k^slope on the integer band [kmin, kmax], zero elsewhere.
struct SpectrumSpec {
  double slope = -5.0 / 3.0;
  int kmin = 1;
  int kmax = 4;
  double rms = 1.0;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument unless 1 <= kmin <= kmax, 3*kmax <= n and rms > 0.
void validate(const SpectrumSpec& spec, const Grid3& grid);

/// (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x), in grid coordinates
/// scaled to a 2*pi period.
VectorField3 abc_flow(const Grid3& grid, double A = 1.0, double B = 1.0, double C = 1.0,
                      const Vec3& phase = {0.0, 0.0, 0.0});

/// (sin x cos y cos z, -cos x sin y cos z, 0).
VectorField3 taylor_green(const Grid3& grid);

/// Gaussian solenoidal field; see SpectrumSpec. Same (grid, spec) gives the same bits.
VectorField3 random_solenoidal(const Grid3& grid, const SpectrumSpec& spec);

/// Shell-summed spectrum 0.5 * sum |u_k|^2 / N^6 indexed by round(|k|).
std::vector<double> shell_spectrum(const VectorField3& u);

struct FieldPair {
  VectorField3 v;
  VectorField3 h;
};

/// seed 0: ABC(1,1,1) and ABC(1,1,1) translated by (0.5, 1.0, 1.5).
/// Other seeds: two independent random_solenoidal fields (slope -5/3, band [1, min(3, n/3)], rms 1).
FieldPair mhd_test_pair(const Grid3& grid, std::uint64_t seed);

}  // namespace exl
