#include "exl/laws.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace exl {

std::string to_string(LawKind law) {
  switch (law) {
    case LawKind::HydroEnergy: return "hydro-energy";
    case LawKind::Helicity: return "helicity";
    case LawKind::MhdEnergy: return "mhd-energy";
    case LawKind::CrossHelicity: return "cross-helicity";
  }
  return "unknown";
}

LawKind parse_law(const std::string& name) {
  for (LawKind k : {LawKind::HydroEnergy, LawKind::Helicity, LawKind::MhdEnergy, LawKind::CrossHelicity})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown law '" + name + "'");
}

std::string to_string(EnergyConvention c) { return c == EnergyConvention::Derived ? "derived" : "stated"; }

EnergyConvention parse_convention(const std::string& name) {
  if (name == "derived") return EnergyConvention::Derived;
  if (name == "stated") return EnergyConvention::Stated;
  throw std::invalid_argument("unknown energy convention '" + name + "'");
}

FluxCoefficients flux_coefficients(LawKind law, EnergyConvention conv) {
  switch (law) {
    case LawKind::Helicity: return {-2.0 / 5.0, 2.0 / 5.0};
    case LawKind::CrossHelicity: return {-4.0 / 5.0, 4.0 / 5.0};
    case LawKind::HydroEnergy:
    case LawKind::MhdEnergy:
      return conv == EnergyConvention::Derived ? FluxCoefficients{4.0 / 5.0, -4.0 / 5.0}
                                               : FluxCoefficients{-4.0 / 5.0, 4.0 / 5.0};
  }
  throw std::logic_error("unreachable");
}

Combined combine(LawKind law, const RawCombos& rc, EnergyConvention conv) {
  if (rc.law != law) throw std::invalid_argument("raw combos belong to a different law");
  const FluxCoefficients c = flux_coefficients(law, conv);
  return {rc.raw_L + c.longitudinal * rc.raw_flux, rc.raw_T + c.transverse * rc.raw_flux};
}

FieldSet law_fields(LawKind law, const VectorField3& v, const VectorField3* second) {
  switch (law) {
    case LawKind::HydroEnergy: return {&v, nullptr, nullptr};
    case LawKind::Helicity: return {&v, second, nullptr};
    case LawKind::MhdEnergy:
    case LawKind::CrossHelicity: return {&v, nullptr, second};
  }
  throw std::logic_error("unreachable");
}

namespace {

void check_rows(std::span<const MomentRow> rows, const DirectionSet& dirs, double r) {
  if (rows.size() != dirs.size()) throw std::invalid_argument("one moment row per direction required");
  if (!(r > 0.0)) throw std::invalid_argument("scale must be positive");
}

}  // namespace

RawCombos raw_from_moments(LawKind law, double r, std::span<const MomentRow> rows, const DirectionSet& dirs) {
  check_rows(rows, dirs, r);
  double L = 0.0, T = 0.0, F = 0.0;
  for (std::size_t d = 0; d < rows.size(); ++d) {
    const MomentRow& m = rows[d];
    const double w = dirs.weights[d];
    switch (law) {
      case LawKind::Helicity:
        L += w * (m[kHelLongV] - 0.5 * m[kHelLongW]);
        T += w * (m[kHelTransV] - 0.5 * m[kHelTransW]);
        F += w * (m[kHelFluxW] - m[kHelFluxV]);
        break;
      case LawKind::HydroEnergy:
      case LawKind::MhdEnergy:
        L += w * (m[kELongV] - 2.0 * m[kELongH]);
        T += w * (m[kETransV] - 2.0 * m[kETransH]);
        F += w * (m[kEFluxV] - m[kEFluxH]);
        break;
      case LawKind::CrossHelicity:
        L += w * (2.0 * m[kCLongV] - m[kCLongH]);
        T += w * (2.0 * m[kCTransV] - m[kCTransH]);
        F += w * (m[kCFluxH] - m[kCFluxV]);
        break;
    }
  }
  return {law, r, L / r, T / r, F / r};
}

double yaglom_from_moments(double r, std::span<const MomentRow> rows, const DirectionSet& dirs) {
  check_rows(rows, dirs, r);
  double s = 0.0;
  for (std::size_t d = 0; d < rows.size(); ++d) s += dirs.weights[d] * (rows[d][kHelFluxV] - 0.5 * rows[d][kHelFluxW]);
  return s / r;
}

double dr_from_moments(double r, std::span<const MomentRow> rows, const DirectionSet& dirs) {
  check_rows(rows, dirs, r);
  double s = 0.0;
  for (std::size_t d = 0; d < rows.size(); ++d) s += dirs.weights[d] * rows[d][kDrFull];
  return s / r;
}

namespace {

std::vector<MomentRow> rows_at(const FieldSet& f, double r, const DirectionSet& dirs) {
  if (!(r > 0.0)) throw std::invalid_argument("scale must be positive");
  const double radius[1] = {r};
  const auto seps = separations(radius, dirs.directions);
  return increment_moments(f, seps);
}

}  // namespace

RawCombos raw_combos(LawKind law, const VectorField3& v, const VectorField3* second, double r,
                     const DirectionSet& dirs) {
  std::optional<VectorField3> omega;
  if (law == LawKind::Helicity && second == nullptr) second = &omega.emplace(curl(v));
  if ((law == LawKind::MhdEnergy || law == LawKind::CrossHelicity) && second == nullptr)
    throw std::invalid_argument("magnetic field required");
  const auto rows = rows_at(law_fields(law, v, second), r, dirs);
  return raw_from_moments(law, r, rows, dirs);
}

double yaglom_helicity(const VectorField3& v, const VectorField3& omega, double r, const DirectionSet& dirs) {
  return yaglom_from_moments(r, rows_at({&v, &omega, nullptr}, r, dirs), dirs);
}

double dr_fourthirds(const VectorField3& v, double r, const DirectionSet& dirs) {
  return dr_from_moments(r, rows_at({&v, nullptr, nullptr}, r, dirs), dirs);
}

void validate_scales(std::span<const double> scales, const Grid3& grid) {
  if (scales.empty()) throw std::invalid_argument("scale list is empty");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw std::invalid_argument("scales must be positive");
    if (scales[i] > grid.length() / 4.0 * (1.0 + 1e-12))
      throw std::invalid_argument("scale exceeds length/4 (periodic wrap-around)");
    if (i > 0 && !(scales[i] > scales[i - 1])) throw std::invalid_argument("scales must be ascending");
  }
}

StructureReport sweep_structure(LawKind law, const VectorField3& v, const VectorField3* second,
                                std::span<const double> scales, const DirectionSet& dirs, EnergyConvention conv) {
  validate_scales(scales, v.grid());
  StructureReport rep;
  rep.law = law;
  rep.convention = conv;
  rep.n = v.grid().n();
  rep.length = v.grid().length();
  rep.dirs = dirs.descriptor;

  std::optional<VectorField3> omega;
  if (law == LawKind::Helicity) {
    if (second == nullptr) {
      second = &omega.emplace(curl(v));
    } else {
      const double mismatch = max_abs_diff(*second, curl(v));
      if (mismatch > 1e-6 * rms(v)) {
        std::ostringstream os;
        os << "supplied vorticity differs from curl(v) by " << mismatch;
        rep.warnings.push_back(os.str());
      }
    }
  }
  if ((law == LawKind::MhdEnergy || law == LawKind::CrossHelicity) && second == nullptr)
    throw std::invalid_argument("magnetic field required");

  const auto seps = separations(scales, dirs.directions);
  const auto rows = increment_moments(law_fields(law, v, second), seps);
  const std::size_t nd = dirs.size();
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const RawCombos rc = raw_from_moments(law, scales[i], std::span(rows).subspan(i * nd, nd), dirs);
    rep.raws.push_back(rc);
    rep.combined.push_back(combine(law, rc, conv));
  }
  return rep;
}

Elsasser elsasser(const VectorField3& v, const VectorField3& h) {
  return {axpby(0.5, v, 0.5, h), axpby(0.5, v, -0.5, h)};
}

Elsasser elsasser_inverse(const VectorField3& zp, const VectorField3& zm) {
  return {axpby(1.0, zp, 1.0, zm), axpby(1.0, zp, -1.0, zm)};
}

PowerLawFit power_law_fit(std::span<const double> x, std::span<const double> y, double lo, double hi) {
  if (x.size() != y.size()) throw std::invalid_argument("fit arrays differ in length");
  std::vector<double> lx, ly;
  int pos = 0, neg = 0;
  const double tol = 1e-12 * std::max(std::abs(lo), std::abs(hi));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo - tol || x[i] > hi + tol || !(x[i] > 0.0) || y[i] == 0.0 || !std::isfinite(y[i])) continue;
    (y[i] > 0.0 ? pos : neg)++;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  const std::size_t m = lx.size();
  if (m < 3) throw std::invalid_argument("power-law fit needs at least 3 usable points in the window");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("power-law fit needs distinct abscissae");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.prefactor = std::exp(my - fit.slope * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.sign_consistent = (pos == 0 || neg == 0);
  fit.points = static_cast<int>(m);
  return fit;
}

PowerLawFit power_law_fit(const StructureReport& report, double lo, double hi, bool transverse) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < report.raws.size(); ++i) {
    x.push_back(report.raws[i].r);
    y.push_back(transverse ? report.combined[i].S_T : report.combined[i].S_L);
  }
  return power_law_fit(x, y, lo, hi);
}

std::vector<double> geometric_ladder(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("ladder count must be >= 1");
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("ladder needs 0 < lo <= hi");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = lo * std::exp(ratio * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> parse_ladder(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("ladder must be lo:hi:count, got '" + spec + "'");
  try {
    std::size_t p1 = 0, p2 = 0, p3 = 0;
    const std::string a = spec.substr(0, c1), b = spec.substr(c1 + 1, c2 - c1 - 1), c = spec.substr(c2 + 1);
    const double lo = std::stod(a, &p1);
    const double hi = std::stod(b, &p2);
    const int count = std::stoi(c, &p3);
    if (p1 != a.size() || p2 != b.size() || p3 != c.size()) throw std::invalid_argument("trailing characters");
    return geometric_ladder(lo, hi, count);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("bad ladder '" + spec + "': " + e.what());
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("bad ladder '" + spec + "'");
  }
}

}  // namespace exl
