#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "exl/vec3.hpp"

namespace exl {

// 64-byte aligned storage so FFT plans made on one buffer are valid on any other.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using Complex = std::complex<double>;
using RealBuffer = std::vector<double, AlignedAllocator<double>>;
using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Uniform periodic grid with the same number of points on each axis.
///
/// Points sit at x_i = i * spacing, i = 0..n-1. Storage order is x-fastest:
/// index(i, j, k) = (k * n + j) * n + i.
class Grid3 {
 public:
  /// Throws std::invalid_argument for odd n, n < 8, or non-positive length.
  Grid3(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  /// Number of complex coefficients in the half-spectrum (n * n * (n/2 + 1)).
  std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * n_ * (n_ / 2 + 1); }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * n_ + j) * n_ + i;
  }
  double coord(int i) const { return i * spacing(); }

  /// 2*pi / length: converts integer mode numbers to angular wavenumbers.
  double base_wavenumber() const { return kTwoPi / length_; }

  bool operator==(const Grid3&) const = default;

 private:
  int n_;
  double length_;
};

Grid3 make_grid(int n, double length = kTwoPi);

class ScalarField {
 public:
  explicit ScalarField(const Grid3& grid);
  ScalarField(const Grid3& grid, RealBuffer values);

  const Grid3& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double at(int i, int j, int k) const { return values_[grid_.index(i, j, k)]; }

  const RealBuffer& buffer() const { return values_; }

 private:
  Grid3 grid_;
  RealBuffer values_;
};

class VectorField3 {
 public:
  explicit VectorField3(const Grid3& grid);
  /// Throws std::invalid_argument if the components live on different grids.
  VectorField3(ScalarField x, ScalarField y, ScalarField z);

  const Grid3& grid() const { return grid_; }
  const ScalarField& operator[](int c) const { return comp_[c]; }
  ScalarField& operator[](int c) { return comp_[c]; }

  Vec3 at(std::size_t idx) const { return {comp_[0][idx], comp_[1][idx], comp_[2][idx]}; }
  void set(std::size_t idx, const Vec3& v) {
    comp_[0][idx] = v[0];
    comp_[1][idx] = v[1];
    comp_[2][idx] = v[2];
  }

 private:
  Grid3 grid_;
  std::array<ScalarField, 3> comp_;
};

void require_same_grid(const Grid3& a, const Grid3& b);

// Linear combinations used throughout (a*u + b*w).
VectorField3 axpby(double a, const VectorField3& u, double b, const VectorField3& w);
VectorField3 scaled(double a, const VectorField3& u);

/// Largest absolute entry over all components.
double max_abs(const ScalarField& f);
double max_abs(const VectorField3& u);
double max_abs_diff(const VectorField3& u, const VectorField3& w);

/// sqrt(<|u|^2>), the root-mean-square magnitude.
double rms(const VectorField3& u);

double volume_mean(const ScalarField& f);
/// Mean over the grid of u . w.
double inner_mean(const VectorField3& u, const VectorField3& w);

// Spectral operators. Forward transforms are unnormalized; the inverse carries 1/n^3.
// Derivative wavenumbers have the Nyquist mode zeroed.

VectorField3 curl(const VectorField3& v);
ScalarField divergence(const VectorField3& v);
VectorField3 gradient(const ScalarField& f);
VectorField3 project_solenoidal(const VectorField3& v);

/// Returns u(. + offset) by spectral phase modulation. Exact for band-limited
/// fields; a lattice offset reproduces an index roll.
ScalarField shift(const ScalarField& u, const Vec3& offset);
VectorField3 shift(const VectorField3& u, const Vec3& offset);

/// Point reflection u(x) -> sign * u(-x), exact on the lattice.
ScalarField reflect(const ScalarField& u, double sign = 1.0);
VectorField3 reflect(const VectorField3& u, double sign = 1.0);

}  // namespace exl
