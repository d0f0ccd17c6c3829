#include "exl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "exl/field_io.hpp"
#include "exl/rng.hpp"
#include "exl/synth.hpp"

namespace exl {

namespace {

constexpr LawKind kLaws[] = {LawKind::Helicity, LawKind::MhdEnergy, LawKind::CrossHelicity};
constexpr Part kParts[] = {Part::L, Part::T};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string eps_tag(double eps) { return "eps=" + fmt("%.6g", eps); }

Check below(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

Check at_least(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, measured >= threshold, std::move(detail)};
}

void check_ladder(const std::vector<double>& xs, double length, const char* what, std::size_t min_count) {
  if (xs.size() < min_count)
    throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(min_count) + " values");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || xs[i] > length / 4.0 * (1.0 + 1e-12))
      throw std::invalid_argument(std::string(what) + " must lie in (0, length/4]");
    if (i > 0 && !(xs[i] > xs[i - 1])) throw std::invalid_argument(std::string(what) + " must be ascending");
  }
}

Grid3 config_grid(const VerifyConfig& cfg) { return Grid3(cfg.n, cfg.length); }

}  // namespace

void validate(const VerifyConfig& cfg) {
  if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end())
    throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  const Tolerances& t = cfg.tol;
  for (double x : {t.identity_tol, t.quad_match_tol, t.degeneracy_tol, t.slope_min, t.coefficient_tol, t.flux_tol})
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("tolerances must be positive");
  const Grid3 g = config_grid(cfg);
  check_ladder(cfg.epsilons, g.length(), "eps ladder", 1);
  check_ladder(cfg.scales, g.length(), "scale ladder", 3);
  check_ladder(cfg.smooth_epsilons, g.length(), "smooth eps ladder", 3);
  if (cfg.radial_nodes < 2) throw std::invalid_argument("radial node count must be >= 2");
  if (cfg.identity_samples < 1) throw std::invalid_argument("identity sample count must be positive");
  validate(parse_direction_set(cfg.dirs));
  if (cfg.h_path && !cfg.v_path) throw std::invalid_argument("--h given without --v");
}

Json to_json(const VerifyConfig& cfg) {
  const Tolerances& t = cfg.tol;
  Json j = {{"suite", cfg.suite},
            {"n", cfg.n},
            {"length", cfg.length},
            {"seed", cfg.seed},
            {"dirs", cfg.dirs},
            {"radial_nodes", cfg.radial_nodes},
            {"epsilons", cfg.epsilons},
            {"scales", cfg.scales},
            {"smooth_epsilons", cfg.smooth_epsilons},
            {"identity_samples", cfg.identity_samples},
            {"energy_convention", to_string(cfg.convention)},
            {"tolerances",
             {{"identity_tol", t.identity_tol},
              {"quad_match_tol", t.quad_match_tol},
              {"degeneracy_tol", t.degeneracy_tol},
              {"slope_min", t.slope_min},
              {"coefficient_tol", t.coefficient_tol},
              {"flux_tol", t.flux_tol}}}};
  if (cfg.v_path) j["v"] = *cfg.v_path;
  if (cfg.h_path) j["h"] = *cfg.h_path;
  return j;
}

LadderTable build_ladder_table(const FieldSet& fields, std::span<const double> epsilons, int radial_nodes,
                               const DirectionSet& dirs) {
  LadderTable t{{epsilons.begin(), epsilons.end()}, {}, dirs, {}};
  std::vector<double> radii;
  for (double eps : epsilons) {
    t.rules.push_back(gauss_legendre(radial_nodes, eps));
    radii.insert(radii.end(), t.rules.back().r.begin(), t.rules.back().r.end());
  }
  t.rows = increment_moments(fields, separations(radii, dirs.directions));
  return t;
}

BallShell ball_shell(const LadderTable& t, std::size_t e, LawKind law, Part part) {
  const Mollifier& m = Mollifier::bump();
  const RadialRule& rule = t.rules.at(e);
  const std::size_t nd = t.dirs.size();
  const std::size_t block = rule.r.size() * nd;
  const auto table = std::span(t.rows).subspan(e * block, block);
  const ProfileFn profiles = [&](double r) {
    const auto it = std::find(rule.r.begin(), rule.r.end(), r);
    if (it == rule.r.end()) throw std::logic_error("profile requested off the table radii");
    const std::size_t i = static_cast<std::size_t>(it - rule.r.begin());
    return raw_from_moments(law, r, table.subspan(i * nd, nd), t.dirs);
  };
  return {d_ball_from_table(law, part, table, rule, t.dirs, m, t.epsilons[e]),
          d_shell(law, part, profiles, m, t.epsilons[e], static_cast<int>(rule.r.size()))};
}

std::vector<std::vector<RawCombos>> scale_profiles(const FieldSet& fields, std::span<const LawKind> laws,
                                                   std::span<const double> scales, const DirectionSet& dirs) {
  const auto rows = increment_moments(fields, separations(scales, dirs.directions));
  const std::size_t nd = dirs.size();
  std::vector<std::vector<RawCombos>> out;
  for (LawKind law : laws) {
    auto& v = out.emplace_back();
    for (std::size_t i = 0; i < scales.size(); ++i)
      v.push_back(raw_from_moments(law, scales[i], std::span(rows).subspan(i * nd, nd), dirs));
  }
  return out;
}

double rel_mismatch(double a, double b) { return std::abs(a - b) / (std::abs(a) + 1e-30); }

FieldPair smooth_pair(const Grid3& grid, std::uint64_t seed) {
  const CounterRng root(seed);
  SpectrumSpec s;
  s.kmin = 1;
  s.kmax = 2;
  s.seed = root.child(1).key();
  SpectrumSpec t = s;
  t.seed = root.child(2).key();
  return {random_solenoidal(grid, s), random_solenoidal(grid, t)};
}

void verify_identity(const VerifyConfig& cfg, Verdict& out) {
  const CounterRng rng = CounterRng(cfg.seed).child(0x1d);
  double worst = 0.0, worst_equal = 0.0;
  for (int s = 0; s < cfg.identity_samples; ++s) {
    const std::uint64_t base = static_cast<std::uint64_t>(s) * 16;
    Vec3 dir{rng.normal(base), rng.normal(base + 1), rng.normal(base + 2)};
    dir = (1.0 / norm(dir)) * dir;
    // |ell| log-uniform on [0.1, 1]
    const double r = std::pow(10.0, -rng.uniform(2 * (base + 3)));
    const Vec3 ell = r * dir;
    const Vec3 A{rng.normal(base + 4), rng.normal(base + 5), rng.normal(base + 6)};
    const Vec3 B{rng.normal(base + 7), rng.normal(base + 8), rng.normal(base + 9)};
    const Vec3 C{rng.normal(base + 10), rng.normal(base + 11), rng.normal(base + 12)};
    const IdentitySides id = identity227(ell, A, B, C);
    worst = std::max(worst, std::abs(id.lhs - id.rhs) / (1.0 + std::abs(id.rhs)));
    worst_equal = std::max(worst_equal, std::abs(identity227(ell, A, A, A).lhs));
  }
  const std::string n = std::to_string(cfg.identity_samples) + " samples";
  out.add(below("identity/lhs-rhs", worst, cfg.tol.identity_tol, "max |lhs-rhs|/(1+|rhs|) over " + n));
  out.add(below("identity/A=B=C", worst_equal, cfg.tol.degeneracy_tol, "max |lhs| over " + n));
}

void verify_coefficients(const VerifyConfig& cfg, Verdict& out) {
  struct Expected {
    LawKind law;
    double L[3];
    double T[3];
    double flux_L;
  };
  // (S_L, S_T, S_F) weights of each shell functional.
  const Expected table[] = {
      {LawKind::Helicity, {-2.25, 1.5, 1.5}, {0.0, -1.875, -0.75}, -0.4},
      {LawKind::MhdEnergy, {-2.25, 1.5, -3.0}, {0.0, -1.875, 1.5}, 0.8},
      {LawKind::CrossHelicity, {-2.25, 1.5, 3.0}, {0.0, -1.875, -1.5}, -0.8},
  };
  const double tol = cfg.tol.coefficient_tol;
  const char* cols[] = {"S_L", "S_T", "S_F"};
  for (const auto& e : table) {
    const CoefficientTable c = coefficient_oracle(e.law);
    const std::string law = to_string(e.law);
    for (int j = 0; j < 3; ++j) {
      out.add(below("coefficients/" + law + "/L/" + cols[j], std::abs(c.L[j] - e.L[j]), tol,
                    "oracle " + fmt("%.15g", c.L[j]) + " expected " + fmt("%.15g", e.L[j])));
      out.add(below("coefficients/" + law + "/T/" + cols[j], std::abs(c.T[j] - e.T[j]), tol,
                    "oracle " + fmt("%.15g", c.T[j]) + " expected " + fmt("%.15g", e.T[j])));
    }
    out.add(below("coefficients/" + law + "/factor", std::abs(c.factor_L + 1.25), tol,
                  "oracle " + fmt("%.15g", c.factor_L) + " expected -1.25"));
    out.add(below("coefficients/" + law + "/flux", std::abs(c.flux_L - e.flux_L), tol,
                  "oracle " + fmt("%.15g", c.flux_L) + " expected " + fmt("%.15g", e.flux_L)));
    out.add(below("coefficients/" + law + "/ratio_L", std::abs(c.ratio_L + 0.8), tol,
                  "oracle " + fmt("%.15g", c.ratio_L) + " expected -0.8"));
    out.add(below("coefficients/" + law + "/ratio_T", std::abs(c.ratio_T + 8.0 / 15.0), tol,
                  "oracle " + fmt("%.15g", c.ratio_T) + " expected -8/15"));
  }
}

void verify_equivalence(const VerifyConfig& cfg, Verdict& out) {
  const DirectionSet dirs = parse_direction_set(cfg.dirs);
  std::optional<FieldPair> pair;
  if (cfg.v_path) {
    VectorField3 v = read_field(*cfg.v_path);
    VectorField3 h = cfg.h_path ? read_field(*cfg.h_path) : v;
    require_same_grid(v.grid(), h.grid());
    pair = FieldPair{std::move(v), std::move(h)};
  } else {
    pair = mhd_test_pair(config_grid(cfg), cfg.seed);
  }
  const VectorField3 w = curl(pair->v);
  const LadderTable t = build_ladder_table({&pair->v, &w, &pair->h}, cfg.epsilons, cfg.radial_nodes, dirs);
  for (LawKind law : kLaws)
    for (Part part : kParts)
      for (std::size_t e = 0; e < t.epsilons.size(); ++e) {
        const BallShell bs = ball_shell(t, e, law, part);
        out.add(below("equivalence/" + to_string(law) + "/" + to_string(part) + "/" + eps_tag(t.epsilons[e]),
                      rel_mismatch(bs.ball, bs.shell), cfg.tol.quad_match_tol,
                      "ball " + fmt("%.17g", bs.ball) + " shell " + fmt("%.17g", bs.shell)));
      }
}

void verify_degeneracy(const VerifyConfig& cfg, Verdict& out) {
  const Grid3 g = config_grid(cfg);
  const DirectionSet dirs = parse_direction_set(cfg.dirs);
  const VectorField3 v = abc_flow(g);
  const double rms3 = std::pow(rms(v), 3);
  const double tol = cfg.tol.degeneracy_tol;

  const LadderTable same = build_ladder_table({&v, &v, &v}, cfg.epsilons, cfg.radial_nodes, dirs);
  const LadderTable zero = build_ladder_table({&v, nullptr, nullptr}, cfg.epsilons, cfg.radial_nodes, dirs);
  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    const std::string tag = eps_tag(cfg.epsilons[e]);
    for (LawKind law : {LawKind::MhdEnergy, LawKind::CrossHelicity})
      for (Part part : kParts) {
        const double d = ball_shell(same, e, law, part).ball;
        out.add(below("degeneracy/aligned/" + to_string(law) + "/" + to_string(part) + "/" + tag, std::abs(d) / rms3,
                      tol, "D(v,v) = " + fmt("%.17g", d) + ", scaled by rms^3"));
      }
    const double hel = ball_shell(same, e, LawKind::Helicity, Part::L).ball;
    const double en = ball_shell(zero, e, LawKind::MhdEnergy, Part::L).ball;
    out.add(below("degeneracy/beltrami/" + tag, rel_mismatch(0.5 * en, hel), tol,
                  "D_HL(v,v) " + fmt("%.17g", hel) + " vs D_EL(v,0)/2 " + fmt("%.17g", 0.5 * en)));
    const double cross = ball_shell(zero, e, LawKind::CrossHelicity, Part::L).ball;
    out.add({"degeneracy/cross-h0/" + tag, std::abs(cross), 0.0, cross == 0.0, "D_CHL(v,0) must be exactly zero"});
  }

  const double eps0 = cfg.epsilons.front();
  const double hydro = d_ball(LawKind::HydroEnergy, Part::L, v, nullptr, Mollifier::bump(), eps0, cfg.radial_nodes, dirs);
  const double mhd0 = ball_shell(zero, 0, LawKind::MhdEnergy, Part::L).ball;
  out.add({"degeneracy/hydro-equals-mhd-h0/" + eps_tag(eps0), std::abs(hydro - mhd0), 0.0, hydro == mhd0,
           "hydro " + fmt("%.17g", hydro) + " mhd(h=0) " + fmt("%.17g", mhd0)});

  const LawKind flux_laws[] = {LawKind::Helicity, LawKind::CrossHelicity};
  const auto prof = scale_profiles({&v, &v, &v}, flux_laws, cfg.scales, dirs);
  for (std::size_t l = 0; l < 2; ++l) {
    double worst = 0.0;
    for (const auto& rc : prof[l]) worst = std::max(worst, std::abs(rc.raw_flux));
    out.add(below("degeneracy/flux(v,v)/" + to_string(flux_laws[l]), worst, cfg.tol.flux_tol,
                  "max |raw_flux| over the scale ladder"));
  }
}

void verify_smooth(const VerifyConfig& cfg, Verdict& out) {
  const Grid3 g = config_grid(cfg);
  const DirectionSet dirs = parse_direction_set(cfg.dirs);
  const FieldPair f = smooth_pair(g, cfg.seed);
  const VectorField3 w = curl(f.v);
  const FieldSet fs{&f.v, &w, &f.h};
  const double slope_min = cfg.tol.slope_min;

  const auto prof = scale_profiles(fs, kLaws, cfg.scales, dirs);
  for (std::size_t l = 0; l < std::size(kLaws); ++l) {
    std::vector<double> S_L, S_T;
    for (const auto& rc : prof[l]) {
      const Combined c = combine(kLaws[l], rc, cfg.convention);
      S_L.push_back(c.S_L);
      S_T.push_back(c.S_T);
    }
    for (Part part : kParts) {
      const auto& y = part == Part::L ? S_L : S_T;
      const PowerLawFit fit = power_law_fit(cfg.scales, y, cfg.scales.front(), cfg.scales.back());
      out.add(at_least("smooth/S/" + to_string(kLaws[l]) + "/" + to_string(part), fit.slope, slope_min,
                       "fit of |S| over r in [" + fmt("%g", cfg.scales.front()) + ", " +
                           fmt("%g", cfg.scales.back()) + "], r^2 " + fmt("%.6f", fit.r_squared)));
    }
  }

  const LadderTable t = build_ladder_table(fs, cfg.smooth_epsilons, cfg.radial_nodes, dirs);
  const auto& eps = cfg.smooth_epsilons;
  for (LawKind law : kLaws) {
    std::vector<double> dL, dT;
    for (std::size_t e = 0; e < eps.size(); ++e) {
      dL.push_back(ball_shell(t, e, law, Part::L).ball);
      dT.push_back(ball_shell(t, e, law, Part::T).ball);
    }
    for (Part part : kParts) {
      const auto& d = part == Part::L ? dL : dT;
      const PowerLawFit fit = power_law_fit(eps, d, eps.front(), eps.back());
      out.add(at_least("smooth/D/" + to_string(law) + "/" + to_string(part), fit.slope, slope_min,
                       "fit of |D| over eps in [" + fmt("%g", eps.front()) + ", " + fmt("%g", eps.back()) + "]"));
    }
    // Gap must shrink as eps decreases: worst ratio gap(eps_i) / gap(eps_{i+1}) below 1.
    double worst = 0.0;
    for (std::size_t e = 0; e + 1 < eps.size(); ++e)
      worst = std::max(worst, std::abs(dL[e] - dT[e]) / (std::abs(dL[e + 1] - dT[e + 1]) + 1e-300));
    out.add({"smooth/LT-gap/" + to_string(law), worst, 1.0, worst < 1.0,
             "max |D_L-D_T|(eps_i) / |D_L-D_T|(eps_i+1), ascending eps"});
  }
}

void verify_crosscheck(const VerifyConfig& cfg, Verdict& out) {
  for (LawKind law : kLaws) {
    const CoefficientTable c = coefficient_oracle(law);
    const FluxCoefficients f = flux_coefficients(law, cfg.convention);
    const double err = std::max(std::abs(f.longitudinal - c.flux_L), std::abs(f.transverse - c.flux_T));
    out.add(below("crosscheck/" + to_string(law), err, cfg.tol.coefficient_tol,
                  "combine (" + fmt("%.6g", f.longitudinal) + ", " + fmt("%.6g", f.transverse) + ") oracle (" +
                      fmt("%.6g", c.flux_L) + ", " + fmt("%.6g", c.flux_T) + "), convention " +
                      to_string(cfg.convention)));
  }
}

Verdict run_verify(const VerifyConfig& cfg) {
  validate(cfg);
  Verdict v;
  v.config = to_json(cfg);
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "identity") verify_identity(cfg, v);
  if (all || cfg.suite == "coefficients") verify_coefficients(cfg, v);
  if (all || cfg.suite == "crosscheck") verify_crosscheck(cfg, v);
  if (all || cfg.suite == "equivalence") verify_equivalence(cfg, v);
  if (all || cfg.suite == "degeneracy") verify_degeneracy(cfg, v);
  if (all || cfg.suite == "smooth") verify_smooth(cfg, v);
  return v;
}

Verdict run_selftest(const SelftestOptions& opts) {
  Verdict out;
  out.config = {{"corrupt_directions", opts.corrupt_directions}, {"identity_samples", opts.identity_samples}};
  const Mollifier& m = Mollifier::bump();

  const MollifierMoments mm = mollifier_moments(m);
  out.add(below("mollifier/unit", std::abs(mm.unit - 1.0), 1e-10, "4 pi int r^2 phi = " + fmt("%.17g", mm.unit)));
  out.add(below("mollifier/third", std::abs(mm.third + 3.0), 1e-8, "4 pi int r^3 phi' = " + fmt("%.17g", mm.third)));
  // phi_L' against a 5-point difference at interior points.
  double grad = 0.0;
  for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double h = 1e-4;
    const double fd = (-phi_L(m, rho + 2 * h) + 8 * phi_L(m, rho + h) - 8 * phi_L(m, rho - h) + phi_L(m, rho - 2 * h)) /
                      (12 * h);
    grad = std::max(grad, std::abs(fd - dphi_L(m, rho)));
  }
  out.add(below("mollifier/phi_L-gradient", grad, 1e-7, "max |5-point FD - analytic| at rho 0.1..0.9, h 1e-4"));

  DirectionSet dirs = direction_set_icosa(2);
  if (opts.corrupt_directions) dirs.weights[0] *= 1.5;
  const DirectionMoments dm = direction_moments(dirs);
  out.add(below("quadrature/weight-sum", std::abs(dm.weight_sum - 1.0), 1e-12, dirs.descriptor));
  out.add(below("quadrature/first-moment", dm.first_moment, 1e-12, dirs.descriptor));
  out.add(below("quadrature/second-moment", dm.second_moment_error, 1e-3, "max |sum w nn - I/3|, " + dirs.descriptor));

  VerifyConfig icfg;
  icfg.identity_samples = opts.identity_samples;
  icfg.seed = 1;
  verify_identity(icfg, out);

  const CounterRng rng = CounterRng(2).child(0x7b);
  double triple = 0.0;
  for (int s = 0; s < opts.identity_samples; ++s) {
    const std::uint64_t b = static_cast<std::uint64_t>(s) * 6;
    const Vec3 X{rng.normal(b), rng.normal(b + 1), rng.normal(b + 2)};
    const Vec3 Y{rng.normal(b + 3), rng.normal(b + 4), rng.normal(b + 5)};
    triple = std::max(triple, triple_product_check(X, Y) / (dot(X, X) * norm(Y)));
  }
  out.add(below("triple-product", triple, 1e-14, "max relative residual"));

  // Projection completeness: u = P u + grad part, with P idempotent and the remainder curl-free.
  const Grid3 g(16, kTwoPi);
  VectorField3 u(g);
  const CounterRng fr = CounterRng(3).child(0x9a);
  for (std::size_t i = 0; i < g.size(); ++i) u.set(i, {fr.normal(3 * i), fr.normal(3 * i + 1), fr.normal(3 * i + 2)});
  // Band-limited pieces, so spectral derivatives act exactly.
  SpectrumSpec band;
  band.kmax = 5;
  band.seed = 4;
  const VectorField3 sol = random_solenoidal(g, band);
  ScalarField phi(g);
  for (int k = 0; k < 16; ++k)
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i)
        phi[g.index(i, j, k)] = std::sin(g.coord(i) + 2 * g.coord(j)) * std::cos(3 * g.coord(k));
  const VectorField3 mixed = axpby(1.0, sol, 1.0, gradient(phi));
  const VectorField3 p = project_solenoidal(mixed);
  const double scale = rms(mixed);
  out.add(below("projection/divergence", max_abs(divergence(p)) / scale, 1e-12, "max |div P u| / rms u"));
  out.add(below("projection/idempotent", max_abs_diff(project_solenoidal(p), p) / scale, 1e-12, "max |P P u - P u|"));
  out.add(below("projection/complement-curl-free", max_abs(curl(axpby(1.0, mixed, -1.0, p))) / scale, 1e-12,
                "max |curl(u - P u)|"));
  out.add(below("projection/recovers-solenoidal", max_abs_diff(p, sol) / scale, 1e-12, "max |P u - sol|"));
  out.add(below("projection/noise-divergence", max_abs(divergence(project_solenoidal(u))) / rms(u), 1e-12,
                "white-noise input"));
  return out;
}

}  // namespace exl
