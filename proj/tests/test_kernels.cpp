#include <doctest.h>
#include <omp.h>

#include <cmath>

#include "exl/geometry.hpp"
#include "exl/kernels.hpp"
#include "exl/synth.hpp"

using namespace exl;

namespace {

struct Fixture {
  Grid3 g{16, kTwoPi};
  VectorField3 v, w, h;
  std::vector<Separation> seps;
  Fixture() : v(g), w(g), h(g) {
    SpectrumSpec s;
    s.kmax = 5;
    s.seed = 1;
    v = random_solenoidal(g, s);
    s.seed = 2;
    w = random_solenoidal(g, s);
    s.seed = 3;
    h = random_solenoidal(g, s);
    const std::vector<double> radii{0.1, 0.37, 1.2};
    seps = separations(radii, direction_set_icosa(0).directions);
  }
};

bool same_bits(const std::vector<MomentRow>& a, const std::vector<MomentRow>& b) { return a == b; }

}  // namespace

TEST_CASE("separations are radius-major") {
  const std::vector<double> radii{0.5, 1.0};
  const std::vector<Vec3> dirs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto s = separations(radii, dirs);
  REQUIRE(s.size() == 6);
  CHECK(s[1].r == 0.5);
  CHECK(s[1].n == dirs[1]);
  CHECK(s[3].r == 1.0);
  CHECK(s[3].n == dirs[0]);
}

TEST_CASE("fused kernel matches the serial reference") {
  Fixture f;
  const auto fast = increment_moments({&f.v, &f.w, &f.h}, f.seps);
  const auto ref = increment_moments_reference({&f.v, &f.w, &f.h}, f.seps);
  REQUIRE(fast.size() == ref.size());
  double worst = 0.0, scale = 0.0;
  for (std::size_t s = 0; s < fast.size(); ++s)
    for (int m = 0; m < kNumMoments; ++m) {
      worst = std::max(worst, std::abs(fast[s][m] - ref[s][m]));
      scale = std::max(scale, std::abs(ref[s][m]));
    }
  CHECK(scale > 0.0);
  CHECK(worst <= 1e-13 * scale);
}

TEST_CASE("null slots are zero fields") {
  Fixture f;
  const VectorField3 zero(f.g);
  CHECK(same_bits(increment_moments({&f.v, nullptr, nullptr}, f.seps),
                  increment_moments({&f.v, &zero, &zero}, f.seps)));
  const auto rows = increment_moments({&f.v, nullptr, nullptr}, f.seps);
  for (const auto& r : rows) {
    CHECK(r[kELongH] == 0.0);
    CHECK(r[kCFluxH] == 0.0);
    CHECK(r[kHelLongW] == 0.0);
  }
}

TEST_CASE("aliased slots give the same bits as copies") {
  Fixture f;
  const VectorField3 copy1 = f.v, copy2 = f.v;
  CHECK(same_bits(increment_moments({&f.v, &f.v, &f.v}, f.seps), increment_moments({&f.v, &copy1, &copy2}, f.seps)));
  const VectorField3 wcopy = f.w;
  CHECK(same_bits(increment_moments({&f.v, &f.w, &f.w}, f.seps), increment_moments({&f.v, &f.w, &wcopy}, f.seps)));
}

TEST_CASE("degenerate inputs cancel bitwise") {
  Fixture f;
  const auto rows = increment_moments({&f.v, &f.v, &f.v}, f.seps);
  for (const auto& m : rows) {
    CHECK(m[kHelLongV] == m[kHelLongW]);
    CHECK(m[kHelTransV] == m[kHelTransW]);
    CHECK(m[kHelFluxW] == m[kHelFluxV]);
    CHECK(m[kEFluxV] == m[kEFluxH]);
    CHECK(m[kCFluxH] == m[kCFluxV]);
    CHECK(m[kELongV] == 2.0 * m[kELongH]);
    CHECK(m[kCLongH] == 2.0 * m[kCLongV]);
  }
}

TEST_CASE("result does not depend on the thread count") {
  Fixture f;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = increment_moments({&f.v, &f.w, &f.h}, f.seps);
  omp_set_num_threads(4);
  const auto four = increment_moments({&f.v, &f.w, &f.h}, f.seps);
  omp_set_num_threads(saved);
  CHECK(same_bits(one, four));
}

TEST_CASE("cubic homogeneity") {
  Fixture f;
  const double a = 1.7;
  const VectorField3 v2 = scaled(a, f.v), w2 = scaled(a, f.w), h2 = scaled(a, f.h);
  const auto base = increment_moments({&f.v, &f.w, &f.h}, f.seps);
  const auto sc = increment_moments({&v2, &w2, &h2}, f.seps);
  for (std::size_t s = 0; s < base.size(); ++s)
    for (int m = 0; m < kNumMoments; ++m) CHECK(std::abs(sc[s][m] - a * a * a * base[s][m]) <= 1e-12 * (1e-3 + std::abs(sc[s][m])));
}

TEST_CASE("constant field gives zero moments") {
  const Grid3 g(8, 1.0);
  VectorField3 c(g);
  for (std::size_t i = 0; i < g.size(); ++i) c.set(i, {1.0, -2.0, 0.5});
  const std::vector<double> radii{0.2};
  const auto rows = increment_moments({&c, &c, &c}, separations(radii, direction_set_icosa(0).directions));
  for (const auto& r : rows)
    for (double x : r) CHECK(std::abs(x) <= 1e-28);
}

TEST_CASE("kernel input errors") {
  Fixture f;
  const VectorField3 other(Grid3(8, kTwoPi));
  CHECK_THROWS_AS(increment_moments({nullptr, nullptr, nullptr}, f.seps), std::invalid_argument);
  CHECK_THROWS_AS(increment_moments({&f.v, &other, nullptr}, f.seps), std::invalid_argument);
  const std::vector<Separation> bad{{0.0, {1, 0, 0}}};
  CHECK_THROWS_AS(increment_moments({&f.v, nullptr, nullptr}, bad), std::invalid_argument);
  CHECK_THROWS_AS(increment_moments_reference({&f.v, nullptr, nullptr}, bad), std::invalid_argument);
}
