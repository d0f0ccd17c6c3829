#include <doctest.h>

#include <cmath>
#include <cstring>

#include "exl/synth.hpp"
#include "exl/verify.hpp"
#include "test_util.hpp"

using namespace exl;

namespace {

bool identical(const VectorField3& a, const VectorField3& b) {
  if (!(a.grid() == b.grid())) return false;
  for (int c = 0; c < 3; ++c)
    if (std::memcmp(a[c].values().data(), b[c].values().data(), a.grid().size() * sizeof(double)) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("abc_flow") {
  const Grid3 g = make_grid(32, kTwoPi);
  const VectorField3 v = abc_flow(g);
  CHECK(max_abs(divergence(v)) <= 1e-12);
  CHECK(max_abs_diff(curl(v), v) <= 1e-10);
  CHECK(max_abs(abc_flow(g, 0, 0, 0)) == 0.0);
  // Point (x, y, z) = (pi/2, 0, 0): (A*0 + C, B + A, 0 + B*0)
  const int q = 8;
  const Vec3 p = v.at(g.index(q, 0, 0));
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(2.0));
  CHECK(std::abs(p[2]) <= 1e-15);
}

TEST_CASE("taylor_green") {
  const Grid3 g = make_grid(32, kTwoPi);
  const VectorField3 v = taylor_green(g);
  CHECK(max_abs(divergence(v)) <= 1e-12);
  CHECK(std::abs(inner_mean(v, curl(v))) <= 1e-12);
  CHECK(max_abs(v[2]) == 0.0);
}

TEST_CASE("random_solenoidal") {
  const Grid3 g = make_grid(32, kTwoPi);
  SpectrumSpec s;
  s.kmin = 1;
  s.kmax = 8;
  s.seed = 11;
  s.rms = 2.0;
  const VectorField3 a = random_solenoidal(g, s);
  CHECK(max_abs(divergence(a)) <= 1e-11 * rms(a));
  CHECK(rms(a) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(identical(a, random_solenoidal(g, s)));
  s.seed = 12;
  CHECK(!identical(a, random_solenoidal(g, s)));

  // No energy outside the band.
  const auto e = shell_spectrum(a);
  double outside = 0.0, total = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    total += e[k];
    if (k < 1 || k > 8) outside += e[k];
  }
  CHECK(outside <= 1e-20 * total);
}

TEST_CASE("random_solenoidal spectrum slope") {
  const Grid3 g = make_grid(64, kTwoPi);
  SpectrumSpec s;
  s.slope = -5.0 / 3.0;
  s.kmin = 2;
  s.kmax = 16;
  s.seed = 7;
  const auto e = shell_spectrum(random_solenoidal(g, s));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int k = 2; k <= 16; ++k) {
    const double x = std::log(k), y = std::log(e[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(std::abs(slope + 5.0 / 3.0) <= 0.2);
}

TEST_CASE("random_solenoidal is the same function on every grid") {
  SpectrumSpec s;
  s.kmax = 3;
  s.seed = 5;
  const VectorField3 coarse = random_solenoidal(make_grid(16, kTwoPi), s);
  const VectorField3 fine = random_solenoidal(make_grid(32, kTwoPi), s);
  double worst = 0.0;
  for (int k = 0; k < 16; ++k)
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i)
        worst = std::max(worst, norm(coarse.at(coarse.grid().index(i, j, k)) -
                                     fine.at(fine.grid().index(2 * i, 2 * j, 2 * k))));
  CHECK(worst <= 1e-12);
}

TEST_CASE("spectrum validation") {
  const Grid3 g = make_grid(16, kTwoPi);
  SpectrumSpec s;
  s.kmax = 6;
  CHECK_THROWS_AS(random_solenoidal(g, s), std::invalid_argument);
  s.kmax = 4;
  s.kmin = 0;
  CHECK_THROWS_AS(validate(s, g), std::invalid_argument);
  s.kmin = 3;
  s.kmax = 2;
  CHECK_THROWS_AS(validate(s, g), std::invalid_argument);
  s.kmin = 1;
  s.rms = 0.0;
  CHECK_THROWS_AS(validate(s, g), std::invalid_argument);
}

TEST_CASE("mhd_test_pair") {
  const Grid3 g = make_grid(32, kTwoPi);
  const FieldPair p = mhd_test_pair(g, 0);
  CHECK(max_abs(divergence(p.v)) <= 1e-12);
  CHECK(max_abs(divergence(p.h)) <= 1e-12);
  CHECK(max_abs_diff(p.v, p.h) > 0.1 * rms(p.v));
  const FieldPair q = mhd_test_pair(g, 0);
  CHECK(identical(p.v, q.v));
  CHECK(identical(p.h, q.h));

  const FieldPair r = mhd_test_pair(g, 7);
  CHECK(max_abs(divergence(r.v)) <= 1e-11 * rms(r.v));
  CHECK(max_abs(divergence(r.h)) <= 1e-11 * rms(r.h));
  CHECK(max_abs_diff(r.v, r.h) > 0.1 * rms(r.v));
  CHECK(identical(r.v, mhd_test_pair(g, 7).v));
}

TEST_CASE("smooth_pair") {
  const Grid3 g = make_grid(16, kTwoPi);
  const FieldPair p = smooth_pair(g, 7);
  CHECK(max_abs(divergence(p.v)) <= 1e-12);
  CHECK(max_abs_diff(p.v, p.h) > 0.1);
  const auto e = shell_spectrum(p.v);
  for (std::size_t k = 3; k < e.size(); ++k) CHECK(e[k] <= 1e-25);
}
