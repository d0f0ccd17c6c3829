#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exl/geometry.hpp"
#include "exl/grid.hpp"
#include "exl/kernels.hpp"

namespace exl {

enum class LawKind { HydroEnergy, Helicity, MhdEnergy, CrossHelicity };

std::string to_string(LawKind law);
/// Accepts "hydro-energy", "helicity", "mhd-energy", "cross-helicity".
LawKind parse_law(const std::string& name);

/// Sign convention for the energy flux coefficient. Derived: (+4/5, -4/5), forced by
/// the coefficient system. Stated: (-4/5, +4/5).
enum class EnergyConvention { Derived, Stated };

std::string to_string(EnergyConvention c);
EnergyConvention parse_convention(const std::string& name);

struct RawCombos {
  LawKind law = LawKind::Helicity;
  double r = 0.0;
  double raw_L = 0.0;
  double raw_T = 0.0;
  double raw_flux = 0.0;
};

struct Combined {
  double S_L = 0.0;
  double S_T = 0.0;
};

struct FluxCoefficients {
  double longitudinal;
  double transverse;
};

FluxCoefficients flux_coefficients(LawKind law, EnergyConvention conv = EnergyConvention::Derived);

/// S_L = raw_L + c_L raw_flux, S_T = raw_T + c_T raw_flux. Throws on law mismatch.
Combined combine(LawKind law, const RawCombos& rc, EnergyConvention conv = EnergyConvention::Derived);

/// Maps the law's second field onto the kernel slots: omega for Helicity, h for the
/// MHD laws, nothing for HydroEnergy.
FieldSet law_fields(LawKind law, const VectorField3& v, const VectorField3* second);

/// Raw combos at radius r from one moment row per direction (same order as dirs).
RawCombos raw_from_moments(LawKind law, double r, std::span<const MomentRow> rows, const DirectionSet& dirs);

/// Helicity with second == nullptr uses curl(v). MHD laws require second.
RawCombos raw_combos(LawKind law, const VectorField3& v, const VectorField3* second, double r,
                     const DirectionSet& dirs);

double yaglom_from_moments(double r, std::span<const MomentRow> rows, const DirectionSet& dirs);
double dr_from_moments(double r, std::span<const MomentRow> rows, const DirectionSet& dirs);

/// (1/r) sphere/volume average of (n.dv)(dv.dw) - 1/2 (n.dw)|dv|^2.
double yaglom_helicity(const VectorField3& v, const VectorField3& omega, double r, const DirectionSet& dirs);
/// (1/r) sphere/volume average of (n.dv)|dv|^2.
double dr_fourthirds(const VectorField3& v, double r, const DirectionSet& dirs);

struct StructureReport {
  LawKind law = LawKind::Helicity;
  EnergyConvention convention = EnergyConvention::Derived;
  int n = 0;
  double length = 0.0;
  std::string dirs;
  std::vector<RawCombos> raws;
  std::vector<Combined> combined;
  std::vector<std::string> warnings;
};

/// Scales must be positive, ascending and at most length/4.
void validate_scales(std::span<const double> scales, const Grid3& grid);

StructureReport sweep_structure(LawKind law, const VectorField3& v, const VectorField3* second,
                                std::span<const double> scales, const DirectionSet& dirs,
                                EnergyConvention conv = EnergyConvention::Derived);

struct Elsasser {
  VectorField3 plus;
  VectorField3 minus;
};
Elsasser elsasser(const VectorField3& v, const VectorField3& h);
/// Returns (v, h) = (Z+ + Z-, Z+ - Z-) packed as {plus: v, minus: h}.
Elsasser elsasser_inverse(const VectorField3& zp, const VectorField3& zm);

struct PowerLawFit {
  double slope = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  bool sign_consistent = true;
  int points = 0;
};

/// Least squares of log|y| against log x over x in [lo, hi]. Zero values are skipped.
/// Throws if fewer than 3 usable points remain.
PowerLawFit power_law_fit(std::span<const double> x, std::span<const double> y, double lo, double hi);
/// Fits |S_L| (or |S_T| when transverse is true) from a report.
PowerLawFit power_law_fit(const StructureReport& report, double lo, double hi, bool transverse = false);

/// Geometric ladder lo..hi with count points (count >= 1; count == 1 gives {lo}).
std::vector<double> geometric_ladder(double lo, double hi, int count);
/// Parses "lo:hi:count".
std::vector<double> parse_ladder(const std::string& spec);

}  // namespace exl
