#pragma once

#include <memory>
#include <vector>

#include "exl/grid.hpp"

namespace exl::spectral {

/// Real-to-complex / complex-to-real plan pair for one grid size.
///
/// Plans are created once per n under a lock and shared; execution is
/// thread-safe as long as every buffer comes from AlignedAllocator.
class FftPlan {
 public:
  static std::shared_ptr<const FftPlan> get(int n);

  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  int n() const { return n_; }

  /// Unnormalized forward transform into the half-spectrum.
  void forward(const double* in, Complex* out) const;
  /// Inverse transform including the 1/n^3 factor. `in` is overwritten.
  void inverse(Complex* in, double* out) const;

 private:
  explicit FftPlan(int n);

  int n_;
  void* r2c_ = nullptr;
  void* c2r_ = nullptr;
};

/// Signed mode number for storage index j on a full axis of length n.
inline int mode(int j, int n) { return j <= n / 2 ? j : j - n; }
inline bool is_nyquist(int j, int n) { return j == n / 2; }

/// Half-spectrum of one real component.
ComplexBuffer forward(const ScalarField& f);
ScalarField inverse(const Grid3& grid, ComplexBuffer spectrum);

/// Per-axis shift phases. Index j holds exp(i k_j a) for regular modes and
/// cos(k_nyq a) for the Nyquist mode, which keeps shifted fields real.
std::vector<Complex> axis_phases(const Grid3& grid, double offset);

/// Multiplies a half-spectrum by the separable phase exp(i k . offset).
void apply_shift(const Grid3& grid, const std::vector<Complex>& px, const std::vector<Complex>& py,
                 const std::vector<Complex>& pz, const Complex* in, Complex* out);

}  // namespace exl::spectral
