#include "exl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "exl/rng.hpp"

namespace exl {

namespace {

Vec3 normalized(const Vec3& v) { return (1.0 / norm(v)) * v; }

// First coordinate that is clearly nonzero is positive.
bool upper_hemisphere(const Vec3& v) {
  for (double c : v)
    if (std::abs(c) > 1e-9) return c > 0.0;
  return true;
}

DirectionSet paired(const std::vector<Vec3>& reps, std::string descriptor) {
  DirectionSet s;
  s.descriptor = std::move(descriptor);
  const double w = 1.0 / static_cast<double>(2 * reps.size());
  for (const Vec3& d : reps) {
    s.directions.push_back(d);
    s.directions.push_back(-d);
    s.weights.push_back(w);
    s.weights.push_back(w);
  }
  return s;
}

}  // namespace

DirectionSet direction_set_icosa(int level) {
  if (level < 0 || level > 5) throw std::invalid_argument("icosa level must be in 0..5");
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                             {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  for (auto& v : verts) v = normalized(v);
  std::vector<std::array<int, 3>> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      verts.push_back(normalized(verts[a] + verts[b]));
      const int idx = static_cast<int>(verts.size()) - 1;
      mid.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }
  // The vertex set is centrally symmetric; keep one of each pair and emit exact antipodes.
  std::vector<Vec3> reps;
  for (const auto& v : verts)
    if (upper_hemisphere(v)) reps.push_back(v);
  if (2 * reps.size() != verts.size()) throw std::logic_error("icosahedral vertex set is not antipodal");
  return paired(reps, "icosa:" + std::to_string(level));
}

DirectionSet direction_set_random(int m, std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("random direction count must be even and >= 2");
  const CounterRng rng = CounterRng(seed).child(0xd1);
  std::vector<Vec3> reps;
  std::uint64_t draw = 0;
  while (static_cast<int>(reps.size()) < m / 2) {
    Vec3 g{rng.normal(draw), rng.normal(draw + 1), rng.normal(draw + 2)};
    draw += 3;
    const double r = norm(g);
    if (r < 1e-12) continue;
    reps.push_back((1.0 / r) * g);
  }
  return paired(reps, "random:" + std::to_string(m) + ":" + std::to_string(seed));
}

DirectionSet parse_direction_set(const std::string& descriptor) {
  const std::invalid_argument bad("bad direction set descriptor '" + descriptor + "'");
  // Strict integer parse of the whole token.
  const auto to_u64 = [&](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw bad;
    try {
      return static_cast<std::uint64_t>(std::stoull(t));
    } catch (const std::exception&) {
      throw bad;
    }
  };
  if (descriptor.rfind("icosa:", 0) == 0) {
    const auto level = to_u64(descriptor.substr(6));
    return direction_set_icosa(level > 100 ? 100 : static_cast<int>(level));
  }
  if (descriptor.rfind("random:", 0) == 0) {
    const std::string rest = descriptor.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw bad;
    const auto m = to_u64(rest.substr(0, colon));
    const auto seed = to_u64(rest.substr(colon + 1));
    if (m > (1u << 24)) throw std::invalid_argument("random direction count too large");
    return direction_set_random(static_cast<int>(m), seed);
  }
  throw bad;
}

DirectionMoments direction_moments(const DirectionSet& dirs) {
  long double wsum = 0.0L;
  Vec3 first{0, 0, 0};
  Mat3 second{};
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double w = dirs.weights[i];
    const Vec3& n = dirs.directions[i];
    wsum += w;
    first = first + w * n;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) second[a][b] += w * n[a] * n[b];
  }
  double err = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) err = std::max(err, std::abs(second[a][b] - (a == b ? 1.0 / 3.0 : 0.0)));
  return {static_cast<double>(wsum), norm(first), err};
}

void validate(const DirectionSet& dirs) {
  if (dirs.directions.empty() || dirs.directions.size() != dirs.weights.size())
    throw std::invalid_argument("direction set is empty or inconsistent");
  long double wsum = 0.0L;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (std::abs(norm(dirs.directions[i]) - 1.0) > 1e-14) throw std::invalid_argument("direction is not unit length");
    if (!(dirs.weights[i] > 0.0)) throw std::invalid_argument("direction weight is not positive");
    wsum += dirs.weights[i];
  }
  if (std::abs(static_cast<double>(wsum) - 1.0) > 1e-14) throw std::invalid_argument("direction weights do not sum to 1");
  // Antipodal closure: each direction has an exact partner with equal weight.
  std::map<Vec3, double> lookup;
  for (std::size_t i = 0; i < dirs.size(); ++i) lookup[dirs.directions[i]] = dirs.weights[i];
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    auto it = lookup.find(-dirs.directions[i]);
    if (it == lookup.end() || it->second != dirs.weights[i])
      throw std::invalid_argument("direction set is not antipodally closed");
  }
}

VectorField3 increment(const VectorField3& u, const Vec3& ell) {
  if (ell == Vec3{0, 0, 0}) return VectorField3(u.grid());
  return axpby(1.0, shift(u, ell), -1.0, u);
}

IncrementPair split_long_trans(const VectorField3& du, const Vec3& n) {
  if (std::abs(norm(n) - 1.0) > 1e-12) throw std::invalid_argument("projection direction must be a unit vector");
  const Grid3& g = du.grid();
  VectorField3 L(g), T(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 d = du.at(i);
    const Vec3 l = dot(n, d) * n;
    L.set(i, l);
    T.set(i, d - l);
  }
  return {std::move(L), std::move(T)};
}

Mat3 dndl(const Vec3& ell) {
  const double r = norm(ell);
  if (!(r > 0.0)) throw std::invalid_argument("separation must be nonzero");
  const Vec3 n = (1.0 / r) * ell;
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m[i][k] = ((i == k ? 1.0 : 0.0) - n[i] * n[k]) / r;
  return m;
}

IdentitySides identity227(const Vec3& ell, const Vec3& A, const Vec3& B, const Vec3& C) {
  const Mat3 D = dndl(ell);
  const double r = norm(ell);
  const Vec3 n = (1.0 / r) * ell;
  double lhs = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double d_nn = D[i][k] * n[j] + n[i] * D[j][k];
        const double sym = (D[i][j] + D[j][i]) * n[k];
        lhs += (d_nn - sym) * A[k] * B[i] * C[j];
      }
  const Vec3 v = dot(A, B) * C + dot(A, C) * B - (2.0 * dot(B, C)) * A;
  return {lhs, dot(n, v) / r};
}

double triple_product_check(const Vec3& X, const Vec3& Y) {
  const Vec3 lhs = cross(X, cross(Y, X));
  const Vec3 rhs = dot(X, X) * Y - dot(Y, X) * X;
  return norm(lhs - rhs);
}

}  // namespace exl
