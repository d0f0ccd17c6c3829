#include <doctest.h>

#include <cmath>

#include "exl/mollifier.hpp"
#include "exl/synth.hpp"
#include "exl/verify.hpp"

using namespace exl;

namespace {

const Mollifier& M() { return Mollifier::bump(); }

double rel(double a, double b) { return std::abs(a - b) / (std::abs(b) + 1e-300); }

RawCombos constant(LawKind law, double r, double L, double T, double F) { return {law, r, L, T, F}; }

}  // namespace

TEST_CASE("bump mollifier") {
  const MollifierMoments mm = mollifier_moments(M());
  CHECK(std::abs(mm.unit - 1.0) <= 1e-10);
  CHECK(std::abs(mm.third + 3.0) <= 1e-8);
  CHECK(M().phi(1.0) == 0.0);
  CHECK(M().phi(1.5) == 0.0);
  CHECK(M().dphi(0.0) == 0.0);
  CHECK(M().phi(0.0) == doctest::Approx(M().constant() * std::exp(-1.0)));
  CHECK(M().name() == "bump");
  // dphi against a central difference
  for (double rho : {0.1, 0.5, 0.9}) {
    const double h = 1e-6;
    CHECK(std::abs((M().phi(rho + h) - M().phi(rho - h)) / (2 * h) - M().dphi(rho)) <= 1e-6);
  }
  // Scaled copy keeps unit mass.
  const double eps = 0.3;
  CHECK(M().phi_eps(0.15, eps) == doctest::Approx(M().phi(0.5) / (eps * eps * eps)));
}

TEST_CASE("Gauss-Legendre moments") {
  for (double eps : {0.2, 0.8}) {
    const MollifierMoments g = mollifier_moments_gl(M(), eps, 64);
    CHECK(std::abs(g.unit - 1.0) <= 1e-10);
    CHECK(std::abs(g.third + 3.0) <= 1e-8);
  }
  const RadialRule r = gauss_legendre(5, 2.0);
  REQUIRE(r.r.size() == 5);
  double ws = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    ws += r.w[i];
    CHECK(r.r[i] > 0.0);
    CHECK(r.r[i] < 2.0);
    if (i) CHECK(r.r[i] > r.r[i - 1]);
  }
  CHECK(ws == doctest::Approx(2.0).epsilon(1e-14));
  // Exact for degree 9 on [0, 2]: int x^9 = 2^10 / 10
  double p9 = 0.0;
  for (std::size_t i = 0; i < 5; ++i) p9 += r.w[i] * std::pow(r.r[i], 9);
  CHECK(p9 == doctest::Approx(102.4).epsilon(1e-13));
  CHECK_THROWS_AS(gauss_legendre(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(8, 0.0), std::invalid_argument);
}

TEST_CASE("phi_T and phi_L") {
  CHECK(phi_T(M(), 1.0) == 0.0);
  CHECK(phi_T(M(), 2.0) == 0.0);
  CHECK(phi_T(M(), 0.5) > 0.0);
  CHECK(std::abs(phi_L(M(), 0.5) + phi_T(M(), 0.5) - M().phi(0.5)) <= 1e-10);
  // 5-point difference of phi_L against the analytic gradient.
  for (double rho : {0.1, 0.35, 0.55, 0.75, 0.9}) {
    const double h = 1e-4;
    const double fd =
        (-phi_L(M(), rho + 2 * h) + 8 * phi_L(M(), rho + h) - 8 * phi_L(M(), rho - h) + phi_L(M(), rho - 2 * h)) / (12 * h);
    CHECK(std::abs(fd - dphi_L(M(), rho)) <= 1e-7);
  }
  CHECK_THROWS_WITH_AS(phi_T(M(), 0.0), doctest::Contains("singular at zero"), std::domain_error);
  CHECK_THROWS_WITH_AS(phi_L(M(), 0.0), doctest::Contains("singular at zero"), std::domain_error);
  CHECK_THROWS_AS(dphi_L(M(), -0.1), std::domain_error);
}

TEST_CASE("parts") {
  CHECK(parse_part("L") == Part::L);
  CHECK(parse_part("T") == Part::T);
  CHECK(to_string(Part::T) == "T");
  CHECK_THROWS_AS(parse_part("both"), std::invalid_argument);
}

TEST_CASE("shell form with constant profiles") {
  const auto prof = [](double L, double T, double F) {
    return [=](double r) { return constant(LawKind::Helicity, r, L, T, F); };
  };
  CHECK(std::abs(d_shell(LawKind::Helicity, Part::L, prof(1, 0, 0), M(), 1.0, 128) + 2.25) <= 1e-8);
  CHECK(std::abs(d_shell(LawKind::Helicity, Part::T, prof(0, 1, 0), M(), 1.0, 128) + 1.875) <= 1e-8);
  CHECK(std::abs(d_shell(LawKind::Helicity, Part::T, prof(0, 0, 1), M(), 1.0, 128) + 0.75) <= 1e-8);
  // Constant profiles give eps-independent values.
  CHECK(d_shell(LawKind::Helicity, Part::L, prof(1, 0, 0), M(), 0.3, 128) ==
        doctest::Approx(d_shell(LawKind::Helicity, Part::L, prof(1, 0, 0), M(), 1.0, 128)).epsilon(1e-12));
}

TEST_CASE("coefficient oracle") {
  const CoefficientTable h = coefficient_oracle(LawKind::Helicity);
  CHECK(std::abs(h.L[0] + 2.25) <= 1e-8);
  CHECK(std::abs(h.L[1] - 1.5) <= 1e-8);
  CHECK(std::abs(h.L[2] - 1.5) <= 1e-8);
  CHECK(std::abs(h.T[0]) <= 1e-8);
  CHECK(std::abs(h.T[1] + 1.875) <= 1e-8);
  CHECK(std::abs(h.T[2] + 0.75) <= 1e-8);
  CHECK(std::abs(h.factor_L + 1.25) <= 1e-8);
  CHECK(std::abs(h.factor_T + 1.875) <= 1e-8);
  for (LawKind law : {LawKind::Helicity, LawKind::MhdEnergy, LawKind::CrossHelicity}) {
    const CoefficientTable t = coefficient_oracle(law);
    const FluxCoefficients f = flux_coefficients(law);
    CHECK(std::abs(t.flux_L - f.longitudinal) <= 1e-8);
    CHECK(std::abs(t.flux_T - f.transverse) <= 1e-8);
    CHECK(std::abs(t.ratio_L + 0.8) <= 1e-8);
    CHECK(std::abs(t.ratio_T + 8.0 / 15.0) <= 1e-8);
  }
  // The stated energy convention disagrees with the solve.
  const FluxCoefficients stated = flux_coefficients(LawKind::MhdEnergy, EnergyConvention::Stated);
  CHECK(std::abs(coefficient_oracle(LawKind::MhdEnergy).flux_L - stated.longitudinal) > 1.0);
}

TEST_CASE("ball equals shell on a shared table") {
  const Grid3 g(16, kTwoPi);
  const FieldPair p = mhd_test_pair(g, 3);
  const VectorField3 w = curl(p.v);
  const DirectionSet dirs = direction_set_icosa(1);
  const std::vector<double> eps{0.3, 0.6};
  const LadderTable t = build_ladder_table({&p.v, &w, &p.h}, eps, 12, dirs);
  for (LawKind law : {LawKind::Helicity, LawKind::MhdEnergy, LawKind::CrossHelicity})
    for (Part part : {Part::L, Part::T})
      for (std::size_t e = 0; e < eps.size(); ++e) {
        const BallShell bs = ball_shell(t, e, law, part);
        CAPTURE(to_string(law));
        CHECK(bs.ball != 0.0);
        CHECK(rel_mismatch(bs.ball, bs.shell) <= 1e-10);
      }
  // The standalone entry point agrees with the shared table.
  const double direct = d_ball(LawKind::MhdEnergy, Part::L, p.v, &p.h, M(), 0.3, 12, dirs);
  CHECK(direct == ball_shell(t, 0, LawKind::MhdEnergy, Part::L).ball);
}

TEST_CASE("d_ball degeneracies") {
  const Grid3 g(16, kTwoPi);
  SpectrumSpec s;
  s.kmax = 4;
  s.seed = 12;
  const VectorField3 v = random_solenoidal(g, s);
  const VectorField3 zero(g);
  const DirectionSet dirs = direction_set_icosa(1);
  const double scale = std::pow(rms(v), 3);
  for (Part part : {Part::L, Part::T}) {
    CHECK(std::abs(d_ball(LawKind::MhdEnergy, part, v, &v, M(), 0.4, 12, dirs)) <= 1e-12 * scale);
    CHECK(std::abs(d_ball(LawKind::CrossHelicity, part, v, &v, M(), 0.4, 12, dirs)) <= 1e-12 * scale);
    CHECK(d_ball(LawKind::CrossHelicity, part, v, &zero, M(), 0.4, 12, dirs) == 0.0);
    CHECK(d_ball(LawKind::Helicity, part, zero, &zero, M(), 0.4, 12, dirs) == 0.0);
  }
  const double hel = d_ball(LawKind::Helicity, Part::L, v, &v, M(), 0.4, 12, dirs);
  const double en = d_ball(LawKind::MhdEnergy, Part::L, v, &zero, M(), 0.4, 12, dirs);
  CHECK(hel != 0.0);
  CHECK(rel(hel, 0.5 * en) <= 1e-12);
  CHECK(d_ball(LawKind::HydroEnergy, Part::T, v, nullptr, M(), 0.4, 12, dirs) ==
        d_ball(LawKind::MhdEnergy, Part::T, v, &zero, M(), 0.4, 12, dirs));
  CHECK_THROWS_WITH(d_ball(LawKind::MhdEnergy, Part::L, v, nullptr, M(), 0.4, 12, dirs), "magnetic field required");
  CHECK_THROWS_AS(d_ball(LawKind::Helicity, Part::L, v, nullptr, M(), 2.0, 12, dirs), std::invalid_argument);
  CHECK_THROWS_AS(d_ball(LawKind::Helicity, Part::L, v, nullptr, M(), 0.4, 1, dirs), std::invalid_argument);
}

TEST_CASE("Duchon-Robert kernels") {
  CHECK(std::abs(dr_dissipation_oracle(M(), 0.5, 64) + 0.75) <= 1e-8);
  const Grid3 g(16, kTwoPi);
  const VectorField3 zero(g);
  const DirectionSet dirs = direction_set_icosa(1);
  CHECK(dr_dissipation(zero, M(), 0.4, DrKernel::Full, 12, dirs) == 0.0);
  CHECK(dr_dissipation(zero, M(), 0.4, DrKernel::Long, 12, dirs) == 0.0);
  CHECK(parse_dr_kernel("long") == DrKernel::Long);
  CHECK_THROWS_AS(parse_dr_kernel("x"), std::invalid_argument);

  // Full kernel equals the radial quadrature of the 4/3 profile.
  SpectrumSpec s;
  s.kmax = 3;
  s.seed = 6;
  const VectorField3 v = random_solenoidal(g, s);
  const double eps = 0.5;
  const RadialRule rule = gauss_legendre(12, eps);
  double want = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const double r = rule.r[i];
    want += 4 * kPi * rule.w[i] * r * r * 0.25 * M().dphi_eps(r, eps) * r * dr_fourthirds(v, r, dirs);
  }
  CHECK(rel(dr_dissipation(v, M(), eps, DrKernel::Full, 12, dirs), want) <= 1e-12);
}

TEST_CASE("extrapolate_eps2") {
  const std::vector<double> eps{0.1, 0.2, 0.4, 0.8};
  std::vector<double> d;
  for (double e : eps) d.push_back(0.25 - 3.0 * e * e + (e > 0.5 ? 1.0 : 0.0));
  const Extrapolation ex = extrapolate_eps2(eps, d);
  CHECK(ex.points == 3);
  CHECK(ex.d0 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(ex.slope == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(ex.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sweep_dissipation") {
  const Grid3 g(16, kTwoPi);
  const DirectionSet dirs = direction_set_icosa(0);
  const VectorField3 zero(g);
  const std::vector<double> eps{0.2, 0.4, 0.8};
  const Part parts[] = {Part::L, Part::T};
  const DissipationReport z = sweep_dissipation(LawKind::Helicity, parts, zero, nullptr, M(), eps, 8, dirs);
  REQUIRE(z.parts.size() == 2);
  for (const auto& p : z.parts)
    for (std::size_t i = 0; i < eps.size(); ++i) {
      CHECK(p.d_ball[i] == 0.0);
      CHECK(p.d_shell[i] == 0.0);
    }

  // Smooth field: both parts vanish with eps and their gap closes.
  const FieldPair sp = smooth_pair(Grid3(32, kTwoPi), 7);
  const std::vector<double> small{0.05, 0.1, 0.2};
  const DissipationReport r = sweep_dissipation(LawKind::Helicity, parts, sp.v, nullptr, M(), small, 16,
                                                direction_set_icosa(1));
  const auto& L = r.parts[0].d_ball;
  const auto& T = r.parts[1].d_ball;
  for (std::size_t i = 0; i + 1 < small.size(); ++i) {
    CHECK(std::abs(L[i]) < std::abs(L[i + 1]));
    CHECK(std::abs(T[i]) < std::abs(T[i + 1]));
    CHECK(std::abs(L[i] - T[i]) < std::abs(L[i + 1] - T[i + 1]));
  }
  for (const auto& p : r.parts)
    for (std::size_t i = 0; i < small.size(); ++i) CHECK(rel_mismatch(p.d_ball[i], p.d_shell[i]) <= 1e-10);

  const std::vector<double> bad{0.4, 0.2};
  CHECK_THROWS_AS(sweep_dissipation(LawKind::Helicity, parts, zero, nullptr, M(), bad, 8, dirs), std::invalid_argument);
  const std::vector<double> big{0.2, 2.0};
  CHECK_THROWS_AS(sweep_dissipation(LawKind::Helicity, parts, zero, nullptr, M(), big, 8, dirs), std::invalid_argument);
}
