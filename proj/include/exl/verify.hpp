#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exl/report.hpp"
#include "exl/synth.hpp"

namespace exl {

struct Tolerances {
  double identity_tol = 1e-10;
  double quad_match_tol = 1e-10;
  double degeneracy_tol = 1e-12;
  double slope_min = 1.9;
  double coefficient_tol = 1e-8;
  double flux_tol = 1e-13;
};

struct VerifyConfig {
  std::string suite = "all";
  int n = 32;
  double length = kTwoPi;
  std::uint64_t seed = 7;
  std::string dirs = "icosa:2";
  int radial_nodes = 32;
  std::vector<double> epsilons = geometric_ladder(0.2, 0.8, 3);
  std::vector<double> scales = geometric_ladder(0.05, 0.25, 5);  // companion band reaches |k| ~ 2.5
  std::vector<double> smooth_epsilons = geometric_ladder(0.05, 0.2, 3);
  int identity_samples = 100000;
  EnergyConvention convention = EnergyConvention::Derived;
  Tolerances tol;
  // Optional input fields for the equivalence suite; otherwise mhd_test_pair(grid, seed).
  std::optional<std::string> v_path;
  std::optional<std::string> h_path;
};

inline const std::vector<std::string> kSuites = {"all",        "identity",   "coefficients", "equivalence",
                                                 "degeneracy", "smooth",     "crosscheck"};

/// Throws std::invalid_argument on unknown suites, non-positive tolerances, or
/// ladders outside (0, length/4].
void validate(const VerifyConfig& cfg);
Json to_json(const VerifyConfig& cfg);

Verdict run_verify(const VerifyConfig& cfg);

// Individual suites; each appends its checks.
void verify_identity(const VerifyConfig& cfg, Verdict& out);
void verify_coefficients(const VerifyConfig& cfg, Verdict& out);
void verify_equivalence(const VerifyConfig& cfg, Verdict& out);
void verify_degeneracy(const VerifyConfig& cfg, Verdict& out);
void verify_smooth(const VerifyConfig& cfg, Verdict& out);
void verify_crosscheck(const VerifyConfig& cfg, Verdict& out);

/// Moment table over an eps ladder: for each eps, radial_nodes x dirs rows (node-major).
/// One table serves every law whose slots are filled in `fields`.
struct LadderTable {
  std::vector<double> epsilons;
  std::vector<RadialRule> rules;
  DirectionSet dirs;
  std::vector<MomentRow> rows;
};
LadderTable build_ladder_table(const FieldSet& fields, std::span<const double> epsilons, int radial_nodes,
                               const DirectionSet& dirs);

struct BallShell {
  double ball;
  double shell;
};
/// Both quadratures at epsilons[e] from the shared table.
BallShell ball_shell(const LadderTable& t, std::size_t e, LawKind law, Part part);

/// Raw combos per law (outer) and scale (inner) from one shared table.
std::vector<std::vector<RawCombos>> scale_profiles(const FieldSet& fields, std::span<const LawKind> laws,
                                                   std::span<const double> scales, const DirectionSet& dirs);

/// Relative mismatch |a - b| / (|a| + 1e-30).
double rel_mismatch(double a, double b);

/// Band-limited smooth test fields used by the vanishing-order checks: two
/// independent random_solenoidal fields on shells [1, 2], seeded from `seed`.
FieldPair smooth_pair(const Grid3& grid, std::uint64_t seed);

struct SelftestOptions {
  bool corrupt_directions = false;  // perturbs one direction weight before the quadrature check
  int identity_samples = 10000;
};
Verdict run_selftest(const SelftestOptions& opts);

}  // namespace exl
