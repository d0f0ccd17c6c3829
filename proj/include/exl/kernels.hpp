#pragma once

#include <array>
#include <span>
#include <vector>

#include "exl/grid.hpp"

namespace exl {

// Volume means of the cubic increment moments, for one separation ell = r n.
// Notation: a = dv, w = dw (second helicity field), b = dh; p_x = n . x.
enum Moment : int {
  kHelLongV,   // p_a (p_a p_w)
  kHelLongW,   // p_w (p_a p_a)
  kHelTransV,  // p_a (a.w - p_a p_w)
  kHelTransW,  // p_w (a.a - p_a p_a)
  kHelFluxW,   // p_w (a.a)
  kHelFluxV,   // p_a (a.w)
  kELongV,     // p_a (p_a^2 + p_b^2)
  kELongH,     // p_b (p_a p_b)
  kETransV,    // p_a ((a.a - p_a^2) + (b.b - p_b^2))
  kETransH,    // p_b (a.b - p_a p_b)
  kEFluxV,     // p_a (b.b)
  kEFluxH,     // p_b (a.b)
  kCLongV,     // p_a (p_b p_a)
  kCLongH,     // p_b (p_b^2 + p_a^2)
  kCTransV,    // p_a (a.b - p_b p_a)
  kCTransH,    // p_b ((b.b - p_b^2) + (a.a - p_a^2))
  kCFluxH,     // p_b (a.a)
  kCFluxV,     // p_a (a.b)
  kDrFull,     // p_a (a.a)
  kDrLong,     // p_a (p_a p_a)
  kNumMoments
};

using MomentRow = std::array<double, kNumMoments>;

/// Fields entering the moments. Null pointers stand for identically zero fields.
struct FieldSet {
  const VectorField3* v = nullptr;
  const VectorField3* w = nullptr;
  const VectorField3* h = nullptr;
};

struct Separation {
  double r;
  Vec3 n;
};

/// One row per separation. Spectral shifts, OpenMP-parallel over separations;
/// each row is computed serially with a fixed summation order, so results do not
/// depend on the thread count.
std::vector<MomentRow> increment_moments(const FieldSet& fields, std::span<const Separation> seps);

/// Serial reference built from shift/increment/split_long_trans and vector formulas.
std::vector<MomentRow> increment_moments_reference(const FieldSet& fields, std::span<const Separation> seps);

/// All (r_i, n_j) pairs, radius-major.
std::vector<Separation> separations(std::span<const double> radii, std::span<const Vec3> dirs);

}  // namespace exl
