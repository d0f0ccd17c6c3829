#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exl/grid.hpp"

namespace exl {

/// Unit directions with weights approximating the normalized sphere average.
struct DirectionSet {
  std::vector<Vec3> directions;
  std::vector<double> weights;
  std::string descriptor;

  std::size_t size() const { return directions.size(); }
};

/// Subdivided icosahedron, level 0..5 (12, 42, 162, 642, 2562, 10242 points).
/// Stored as antipodal pairs (d, -d) with equal weights.
DirectionSet direction_set_icosa(int level);

/// m/2 uniform directions followed by their antipodes; m even, m >= 2.
DirectionSet direction_set_random(int m, std::uint64_t seed);

/// Parses "icosa:L" or "random:M:SEED".
DirectionSet parse_direction_set(const std::string& descriptor);

/// Sum of weights, |sum w n| and max |sum w n n^T - I/3|.
struct DirectionMoments {
  double weight_sum;
  double first_moment;
  double second_moment_error;
};
DirectionMoments direction_moments(const DirectionSet& dirs);

/// Throws std::invalid_argument if any invariant of DirectionSet fails
/// (unit length, positive weights summing to 1, antipodal closure).
void validate(const DirectionSet& dirs);

/// shift(u, ell) - u.
VectorField3 increment(const VectorField3& u, const Vec3& ell);

struct IncrementPair {
  VectorField3 longitudinal;
  VectorField3 transverse;
};

/// longitudinal = n (n . du), transverse = du - longitudinal. n must be a unit vector.
IncrementPair split_long_trans(const VectorField3& du, const Vec3& n);

/// d n_i / d ell_k = (delta_ik - n_i n_k) / |ell|.
Mat3 dndl(const Vec3& ell);

struct IdentitySides {
  double lhs;
  double rhs;
};

/// lhs = sum_ijk [d_k(n_i n_j) - (d_j n_i + d_i n_j) n_k] A_k B_i C_j,
/// rhs = n . [C (A.B) + B (A.C) - 2 A (B.C)] / |ell|.
IdentitySides identity227(const Vec3& ell, const Vec3& A, const Vec3& B, const Vec3& C);

/// |X x (Y x X) - (Y (X.X) - X (Y.X))|.
double triple_product_check(const Vec3& X, const Vec3& Y);

}  // namespace exl
