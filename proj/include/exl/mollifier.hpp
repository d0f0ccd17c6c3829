#pragma once

#include <functional>
#include <string>
#include <vector>

#include "exl/geometry.hpp"
#include "exl/kernels.hpp"
#include "exl/laws.hpp"

namespace exl {

/// Radial bump phi(rho) = C exp(-1 / (1 - rho^2)) on [0, 1), zero outside,
/// normalized so that 4 pi int_0^1 rho^2 phi = 1. Scaled copies use
/// phi_eps(r) = eps^-3 phi(r / eps).
class Mollifier {
 public:
  /// Shared instance; the constant is computed once by adaptive quadrature.
  static const Mollifier& bump();

  double phi(double rho) const;
  double dphi(double rho) const;
  double phi_eps(double r, double eps) const;
  double dphi_eps(double r, double eps) const;

  double constant() const { return c_; }
  std::string name() const { return "bump"; }

 private:
  Mollifier();
  double c_;
};

/// phi_T(rho) = 2 int_rho^1 phi(s)/s ds. Throws std::domain_error at rho <= 0.
double phi_T(const Mollifier& m, double rho);
double phi_L(const Mollifier& m, double rho);
/// Analytic derivative of phi_L: phi' + 2 phi / rho.
double dphi_L(const Mollifier& m, double rho);

/// 4 pi int rho^2 phi and 4 pi int rho^3 phi', by adaptive quadrature.
struct MollifierMoments {
  double unit;
  double third;
};
MollifierMoments mollifier_moments(const Mollifier& m);
/// Same moments of phi_eps on (0, eps] with the Gauss-Legendre rule used by D.
MollifierMoments mollifier_moments_gl(const Mollifier& m, double eps, int nodes);

/// Gauss-Legendre rule mapped to (0, eps].
struct RadialRule {
  std::vector<double> r;
  std::vector<double> w;
};
RadialRule gauss_legendre(int nodes, double eps);

enum class Part { L, T };
std::string to_string(Part p);
Part parse_part(const std::string& s);

/// Shell-form weights: D = sum_i 4 pi W_i [r^3 phi'(aL S_L + aT S_T) + 2 r^2 phi beta S_T + r^2 phi gamma S_F].
struct ShellCoefficients {
  double alpha_L;
  double alpha_T;
  double beta;
  double gamma;
};
ShellCoefficients shell_coefficients(LawKind law, Part part);

/// Ball integrand for one separation given g = phi_eps'(r), ph = phi_eps(r).
double ball_integrand(LawKind law, Part part, const MomentRow& m, double g, double ph, double r);

/// Ball quadrature from a moment table laid out node-major (rule.r.size() * dirs.size() rows).
double d_ball_from_table(LawKind law, Part part, std::span<const MomentRow> rows, const RadialRule& rule,
                         const DirectionSet& dirs, const Mollifier& m, double eps);

/// Computes its own moment table. `second` as in raw_combos.
double d_ball(LawKind law, Part part, const VectorField3& v, const VectorField3* second, const Mollifier& m,
              double eps, int radial_nodes, const DirectionSet& dirs);

using ProfileFn = std::function<RawCombos(double r)>;

double d_shell(LawKind law, Part part, const ProfileFn& profiles, const Mollifier& m, double eps, int radial_nodes);

/// Shell values for unit constant profiles and the solved pair of relations.
struct CoefficientTable {
  LawKind law;
  double L[3];  // (S_L, S_T, S_F)
  double T[3];
  double factor_L;  // D = factor_L (S_L + flux_L S_F)
  double flux_L;
  double factor_T;  // D = factor_T (S_T + flux_T S_F)
  double flux_T;
  double ratio_L;  // S_L-combination / D
  double ratio_T;
};
CoefficientTable coefficient_oracle(LawKind law, int nodes = 128);

enum class DrKernel { Long, Full };
DrKernel parse_dr_kernel(const std::string& s);

double dr_dissipation(const VectorField3& v, const Mollifier& m, double eps, DrKernel kernel, int radial_nodes,
                      const DirectionSet& dirs);
/// Full kernel with the profile (1/r)<(n.dv)|dv|^2> replaced by 1.
double dr_dissipation_oracle(const Mollifier& m, double eps, int radial_nodes);

struct Extrapolation {
  double d0 = 0.0;     // intercept of D against eps^2
  double slope = 0.0;  // coefficient of eps^2
  double r_squared = 0.0;
  int points = 0;
};
/// Linear fit of D against eps^2 over the three smallest eps.
Extrapolation extrapolate_eps2(std::span<const double> eps, std::span<const double> d);

struct DissipationPart {
  Part part;
  std::vector<double> d_ball;
  std::vector<double> d_shell;
  Extrapolation extrapolation;
};

struct DissipationReport {
  LawKind law;
  std::vector<double> epsilons;
  int radial_nodes;
  std::string dirs;
  std::vector<DissipationPart> parts;
};

/// Epsilons ascending and <= length/4. Ball and shell share one moment table.
DissipationReport sweep_dissipation(LawKind law, std::span<const Part> parts, const VectorField3& v,
                                    const VectorField3* second, const Mollifier& m, std::span<const double> epsilons,
                                    int radial_nodes, const DirectionSet& dirs);

}  // namespace exl
