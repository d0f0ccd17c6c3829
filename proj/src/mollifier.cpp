#include "exl/mollifier.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace exl {

namespace {

using boost::math::quadrature::gauss_kronrod;

double raw_bump(double rho) {
  const double q = 1.0 - rho * rho;
  return (rho < 1.0 && q > 0.0) ? std::exp(-1.0 / q) : 0.0;
}

}  // namespace

Mollifier::Mollifier() : c_(1.0) {
  const double integral =
      gauss_kronrod<double, 61>::integrate([](double r) { return r * r * raw_bump(r); }, 0.0, 1.0, 15, 1e-15);
  c_ = 1.0 / (4.0 * kPi * integral);
}

const Mollifier& Mollifier::bump() {
  static const Mollifier m;
  return m;
}

double Mollifier::phi(double rho) const {
  rho = std::abs(rho);
  return c_ * raw_bump(rho);
}

double Mollifier::dphi(double rho) const {
  const double q = 1.0 - rho * rho;
  if (!(std::abs(rho) < 1.0) || q <= 0.0) return 0.0;
  return phi(rho) * (-2.0 * rho / (q * q));
}

double Mollifier::phi_eps(double r, double eps) const { return phi(r / eps) / (eps * eps * eps); }

double Mollifier::dphi_eps(double r, double eps) const { return dphi(r / eps) / (eps * eps * eps * eps); }

double phi_T(const Mollifier& m, double rho) {
  if (!(rho > 0.0)) throw std::domain_error("phi_T is singular at zero");
  if (rho >= 1.0) return 0.0;
  return 2.0 * gauss_kronrod<double, 61>::integrate([&](double s) { return m.phi(s) / s; }, rho, 1.0, 15, 1e-15);
}

double phi_L(const Mollifier& m, double rho) { return m.phi(rho) - phi_T(m, rho); }

double dphi_L(const Mollifier& m, double rho) {
  if (!(rho > 0.0)) throw std::domain_error("phi_L is singular at zero");
  return m.dphi(rho) + 2.0 * m.phi(rho) / rho;
}

MollifierMoments mollifier_moments(const Mollifier& m) {
  const double unit =
      gauss_kronrod<double, 61>::integrate([&](double r) { return r * r * m.phi(r); }, 0.0, 1.0, 15, 1e-15);
  const double third =
      gauss_kronrod<double, 61>::integrate([&](double r) { return r * r * r * m.dphi(r); }, 0.0, 1.0, 15, 1e-15);
  return {4.0 * kPi * unit, 4.0 * kPi * third};
}

RadialRule gauss_legendre(int nodes, double eps) {
  if (nodes < 2) throw std::invalid_argument("radial node count must be >= 2");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  // Reference nodes on [-1, 1] are cached per count.
  static std::mutex mtx;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::vector<double> x, w;
  {
    std::lock_guard lock(mtx);
    auto it = cache.find(nodes);
    if (it == cache.end()) {
      const auto zeros = boost::math::legendre_p_zeros<double>(nodes);  // nonnegative zeros, ascending
      std::vector<double> xs, ws;
      for (double z : zeros) {
        const double dp = boost::math::legendre_p_prime(nodes, z);
        const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
        xs.push_back(z);
        ws.push_back(wt);
        if (z != 0.0) {
          xs.push_back(-z);
          ws.push_back(wt);
        }
      }
      std::vector<std::size_t> order(xs.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
      std::vector<double> sx, sw;
      for (auto i : order) {
        sx.push_back(xs[i]);
        sw.push_back(ws[i]);
      }
      it = cache.emplace(nodes, std::make_pair(std::move(sx), std::move(sw))).first;
    }
    x = it->second.first;
    w = it->second.second;
  }
  RadialRule rule;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.r.push_back(0.5 * eps * (x[i] + 1.0));
    rule.w.push_back(0.5 * eps * w[i]);
  }
  return rule;
}

MollifierMoments mollifier_moments_gl(const Mollifier& m, double eps, int nodes) {
  const RadialRule rule = gauss_legendre(nodes, eps);
  double unit = 0.0, third = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const double r = rule.r[i];
    unit += rule.w[i] * r * r * m.phi_eps(r, eps);
    third += rule.w[i] * r * r * r * m.dphi_eps(r, eps);
  }
  return {4.0 * kPi * unit, 4.0 * kPi * third};
}

std::string to_string(Part p) { return p == Part::L ? "L" : "T"; }

Part parse_part(const std::string& s) {
  if (s == "L") return Part::L;
  if (s == "T") return Part::T;
  throw std::invalid_argument("part must be L or T, got '" + s + "'");
}

ShellCoefficients shell_coefficients(LawKind law, Part part) {
  const bool L = part == Part::L;
  switch (law) {
    case LawKind::Helicity: return L ? ShellCoefficients{0.75, 0.0, 0.75, 1.5} : ShellCoefficients{0.0, 0.375, -0.375, -0.75};
    case LawKind::HydroEnergy:
    case LawKind::MhdEnergy: return L ? ShellCoefficients{0.75, 0.0, 0.75, -3.0} : ShellCoefficients{0.0, 0.375, -0.375, 1.5};
    case LawKind::CrossHelicity:
      return L ? ShellCoefficients{0.75, 0.0, 0.75, 3.0} : ShellCoefficients{0.0, 0.375, -0.375, -1.5};
  }
  throw std::logic_error("unreachable");
}

double ball_integrand(LawKind law, Part part, const MomentRow& m, double g, double ph, double r) {
  const double i2 = 2.0 * ph / r;
  const double i1 = ph / r;
  switch (law) {
    case LawKind::Helicity: {
      const double flux = m[kHelFluxW] - m[kHelFluxV];
      if (part == Part::L)
        return 0.75 * (g * m[kHelLongV] + i2 * (m[kHelTransV] + flux)) - 0.375 * (g * m[kHelLongW] + i2 * m[kHelTransW]);
      return 0.375 * (g * m[kHelTransV] - i2 * (m[kHelTransV] + flux)) -
             0.1875 * (g * m[kHelTransW] - i2 * m[kHelTransW]);
    }
    case LawKind::HydroEnergy:
    case LawKind::MhdEnergy: {
      const double flux = m[kEFluxV] - m[kEFluxH];
      if (part == Part::L)
        return 0.75 * (g * m[kELongV] + i2 * m[kETransV]) - 1.5 * (g * m[kELongH] + i2 * m[kETransH]) -
               3.0 * i1 * flux;
      return 0.375 * (g * m[kETransV] - i2 * m[kETransV]) - 0.75 * (g * m[kETransH] - i2 * m[kETransH]) +
             1.5 * i1 * flux;
    }
    case LawKind::CrossHelicity: {
      const double flux = m[kCFluxH] - m[kCFluxV];
      if (part == Part::L)
        return 1.5 * (g * m[kCLongV] + i2 * m[kCTransV]) - 0.75 * (g * m[kCLongH] + i2 * m[kCTransH]) +
               1.5 * i2 * flux;
      return 0.75 * (g * m[kCTransV] - i2 * m[kCTransV]) - 0.375 * (g * m[kCTransH] - i2 * m[kCTransH]) -
             0.75 * i2 * flux;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
}

void check_eps_grid(double eps, const Grid3& g) {
  check_eps(eps);
  if (eps > g.length() / 4.0 * (1.0 + 1e-12)) throw std::invalid_argument("eps exceeds length/4");
}

const VectorField3* resolve_second(LawKind law, const VectorField3& v, const VectorField3* second,
                                   std::optional<VectorField3>& storage) {
  if (law == LawKind::Helicity && second == nullptr) return &storage.emplace(curl(v));
  if ((law == LawKind::MhdEnergy || law == LawKind::CrossHelicity) && second == nullptr)
    throw std::invalid_argument("magnetic field required");
  return second;
}

}  // namespace

double d_ball_from_table(LawKind law, Part part, std::span<const MomentRow> rows, const RadialRule& rule,
                         const DirectionSet& dirs, const Mollifier& m, double eps) {
  check_eps(eps);
  const std::size_t nd = dirs.size();
  if (rows.size() != rule.r.size() * nd) throw std::invalid_argument("moment table does not match quadrature");
  double total = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const double r = rule.r[i];
    const double g = m.dphi_eps(r, eps);
    const double ph = m.phi_eps(r, eps);
    const double radial = 4.0 * kPi * rule.w[i] * r * r;
    for (std::size_t d = 0; d < nd; ++d)
      total += (radial * dirs.weights[d]) * ball_integrand(law, part, rows[i * nd + d], g, ph, r);
  }
  return total;
}

double d_ball(LawKind law, Part part, const VectorField3& v, const VectorField3* second, const Mollifier& m,
              double eps, int radial_nodes, const DirectionSet& dirs) {
  check_eps_grid(eps, v.grid());
  std::optional<VectorField3> storage;
  second = resolve_second(law, v, second, storage);
  const RadialRule rule = gauss_legendre(radial_nodes, eps);
  const auto seps = separations(rule.r, dirs.directions);
  const auto rows = increment_moments(law_fields(law, v, second), seps);
  return d_ball_from_table(law, part, rows, rule, dirs, m, eps);
}

double d_shell(LawKind law, Part part, const ProfileFn& profiles, const Mollifier& m, double eps, int radial_nodes) {
  check_eps(eps);
  const RadialRule rule = gauss_legendre(radial_nodes, eps);
  const ShellCoefficients c = shell_coefficients(law, part);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const double r = rule.r[i];
    const RawCombos s = profiles(r);
    const double g = m.dphi_eps(r, eps);
    const double ph = m.phi_eps(r, eps);
    const double term = r * r * r * g * (c.alpha_L * s.raw_L + c.alpha_T * s.raw_T) +
                        2.0 * r * r * ph * c.beta * s.raw_T + r * r * ph * c.gamma * s.raw_flux;
    total += 4.0 * kPi * rule.w[i] * term;
  }
  return total;
}

CoefficientTable coefficient_oracle(LawKind law, int nodes) {
  const Mollifier& m = Mollifier::bump();
  const auto unit = [law](double L, double T, double F) {
    return [=](double r) { return RawCombos{law, r, L, T, F}; };
  };
  CoefficientTable t{};
  t.law = law;
  const double basis[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    const ProfileFn f = unit(basis[j][0], basis[j][1], basis[j][2]);
    t.L[j] = d_shell(law, Part::L, f, m, 1.0, nodes);
    t.T[j] = d_shell(law, Part::T, f, m, 1.0, nodes);
  }
  // Both parts tend to the same D; eliminate S_T from the L relation.
  const double q = t.L[1] / t.T[1];
  t.factor_L = t.L[0] / (1.0 - q);
  t.flux_L = (t.L[2] - q * t.T[2]) / t.L[0];
  t.factor_T = t.T[1];
  t.flux_T = t.T[2] / t.T[1];
  t.ratio_L = 1.0 / t.factor_L;
  t.ratio_T = 1.0 / t.factor_T;
  return t;
}

DrKernel parse_dr_kernel(const std::string& s) {
  if (s == "long") return DrKernel::Long;
  if (s == "full") return DrKernel::Full;
  throw std::invalid_argument("kernel must be long or full, got '" + s + "'");
}

double dr_dissipation(const VectorField3& v, const Mollifier& m, double eps, DrKernel kernel, int radial_nodes,
                      const DirectionSet& dirs) {
  check_eps_grid(eps, v.grid());
  const RadialRule rule = gauss_legendre(radial_nodes, eps);
  const auto seps = separations(rule.r, dirs.directions);
  const auto rows = increment_moments({&v, nullptr, nullptr}, seps);
  const int k = kernel == DrKernel::Full ? kDrFull : kDrLong;
  const std::size_t nd = dirs.size();
  double total = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const double r = rule.r[i];
    const double radial = 4.0 * kPi * rule.w[i] * r * r;
    const double g = m.dphi_eps(r, eps);
    for (std::size_t d = 0; d < nd; ++d) total += (radial * dirs.weights[d]) * (0.25 * g * rows[i * nd + d][k]);
  }
  return total;
}

double dr_dissipation_oracle(const Mollifier& m, double eps, int radial_nodes) {
  const RadialRule rule = gauss_legendre(radial_nodes, eps);
  double total = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const double r = rule.r[i];
    total += 4.0 * kPi * rule.w[i] * r * r * (0.25 * m.dphi_eps(r, eps) * r);
  }
  return total;
}

Extrapolation extrapolate_eps2(std::span<const double> eps, std::span<const double> d) {
  if (eps.size() != d.size()) throw std::invalid_argument("extrapolation arrays differ in length");
  std::vector<std::size_t> order(eps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps[a] < eps[b]; });
  const std::size_t m = std::min<std::size_t>(3, order.size());
  Extrapolation ex;
  ex.points = static_cast<int>(m);
  if (m == 0) return ex;
  if (m == 1) {
    ex.d0 = d[order[0]];
    ex.r_squared = 1.0;
    return ex;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += eps[order[i]] * eps[order[i]];
    my += d[order[i]];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = eps[order[i]] * eps[order[i]] - mx;
    const double y = d[order[i]] - my;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  ex.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  ex.d0 = my - ex.slope * mx;
  ex.r_squared = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return ex;
}

DissipationReport sweep_dissipation(LawKind law, std::span<const Part> parts, const VectorField3& v,
                                    const VectorField3* second, const Mollifier& m, std::span<const double> epsilons,
                                    int radial_nodes, const DirectionSet& dirs) {
  if (epsilons.empty()) throw std::invalid_argument("epsilon list is empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    check_eps_grid(epsilons[i], v.grid());
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) throw std::invalid_argument("epsilons must be ascending");
  }
  if (radial_nodes < 2) throw std::invalid_argument("radial node count must be >= 2");
  std::optional<VectorField3> storage;
  second = resolve_second(law, v, second, storage);

  DissipationReport rep{law, {epsilons.begin(), epsilons.end()}, radial_nodes, dirs.descriptor, {}};
  for (Part p : parts) rep.parts.push_back({p, {}, {}, {}});

  // One table for every eps: node-major within each eps block.
  std::vector<RadialRule> rules;
  std::vector<double> radii;
  for (double eps : epsilons) {
    rules.push_back(gauss_legendre(radial_nodes, eps));
    radii.insert(radii.end(), rules.back().r.begin(), rules.back().r.end());
  }
  const auto seps = separations(radii, dirs.directions);
  const auto rows = increment_moments(law_fields(law, v, second), seps);

  const std::size_t nd = dirs.size();
  const std::size_t block = static_cast<std::size_t>(radial_nodes) * nd;
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    const auto table = std::span(rows).subspan(e * block, block);
    const RadialRule& rule = rules[e];
    const ProfileFn profiles = [&](double r) {
      const auto it = std::find(rule.r.begin(), rule.r.end(), r);
      if (it == rule.r.end()) throw std::logic_error("profile requested off the shared radial nodes");
      const std::size_t i = static_cast<std::size_t>(it - rule.r.begin());
      return raw_from_moments(law, r, table.subspan(i * nd, nd), dirs);
    };
    for (auto& part : rep.parts) {
      part.d_ball.push_back(d_ball_from_table(law, part.part, table, rule, dirs, m, epsilons[e]));
      part.d_shell.push_back(d_shell(law, part.part, profiles, m, epsilons[e], radial_nodes));
    }
  }
  for (auto& part : rep.parts) part.extrapolation = extrapolate_eps2(rep.epsilons, part.d_ball);
  return rep;
}

}  // namespace exl
