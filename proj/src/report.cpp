#include "exl/report.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exl {

namespace {

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map storage: keys already sorted
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isnan(x)) {
        out += "\"nan\"";
      } else if (std::isinf(x)) {
        out += x > 0 ? "\"inf\"" : "\"-inf\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
      }
      break;
    }
    default: out += j.dump();
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[digest[i] >> 4];
    s += hex[digest[i] & 15];
  }
  return s;
}

std::string canonical_hash(const Json& j) {
  if (j.is_object() && j.contains("provenance")) {
    Json copy = j;
    copy.erase("provenance");
    return sha256_hex(canonical_dump(copy));
  }
  return sha256_hex(canonical_dump(j));
}

bool Verdict::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json to_json(const RawCombos& rc, const Combined& s) {
  return {{"r", rc.r}, {"raw_L", rc.raw_L}, {"raw_T", rc.raw_T}, {"raw_flux", rc.raw_flux}, {"S_L", s.S_L}, {"S_T", s.S_T}};
}

Json to_json(const StructureReport& rep) {
  Json scales = Json::array();
  for (std::size_t i = 0; i < rep.raws.size(); ++i) scales.push_back(to_json(rep.raws[i], rep.combined[i]));
  Json conventions = Json::object();
  for (EnergyConvention c : {EnergyConvention::Derived, EnergyConvention::Stated}) {
    const FluxCoefficients f = flux_coefficients(rep.law, c);
    conventions[to_string(c)] = {f.longitudinal, f.transverse};
  }
  return {{"law", to_string(rep.law)},
          {"grid", {{"n", rep.n}, {"length", rep.length}}},
          {"dirs", rep.dirs},
          {"energy_convention", to_string(rep.convention)},
          {"flux_coefficients", conventions},
          {"scales", scales},
          {"warnings", rep.warnings}};
}

std::string to_csv(const StructureReport& rep) {
  std::ostringstream os;
  os << "r,raw_L,raw_T,raw_flux,S_L,S_T\n";
  char buf[256];
  for (std::size_t i = 0; i < rep.raws.size(); ++i) {
    const auto& r = rep.raws[i];
    const auto& s = rep.combined[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.r, r.raw_L, r.raw_T, r.raw_flux, s.S_L,
                  s.S_T);
    os << buf;
  }
  return os.str();
}

namespace {

Json part_json(const DissipationReport& rep, const DissipationPart& p) {
  return {{"law", to_string(rep.law)},
          {"part", to_string(p.part)},
          {"mollifier", Mollifier::bump().name()},
          {"epsilons", rep.epsilons},
          {"d_ball", p.d_ball},
          {"d_shell", p.d_shell},
          {"radial_nodes", rep.radial_nodes},
          {"dirs", rep.dirs},
          {"extrapolation",
           {{"fit", "linear in eps^2, three smallest eps"},
            {"d0", p.extrapolation.d0},
            {"slope_eps2", p.extrapolation.slope},
            {"r_squared", p.extrapolation.r_squared},
            {"points", p.extrapolation.points}}}};
}

}  // namespace

Json to_json(const DissipationReport& rep) {
  if (rep.parts.size() == 1) return part_json(rep, rep.parts.front());
  Json parts = Json::array();
  for (const auto& p : rep.parts) parts.push_back(part_json(rep, p));
  return {{"law", to_string(rep.law)}, {"mollifier", Mollifier::bump().name()}, {"parts", parts}};
}

std::string to_csv(const DissipationReport& rep) {
  std::ostringstream os;
  os << "part,eps,d_ball,d_shell\n";
  char buf[256];
  for (const auto& p : rep.parts)
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
      const double b = i < p.d_ball.size() ? p.d_ball[i] : NAN;
      const double s = i < p.d_shell.size() ? p.d_shell[i] : NAN;
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g\n", to_string(p.part).c_str(), rep.epsilons[i], b, s);
      os << buf;
    }
  return os.str();
}

Json to_json(const Verdict& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"threshold", c.threshold},
                      {"pass", c.pass},
                      {"detail", c.detail}});
  return {{"pass", v.pass()}, {"checks", checks}, {"config", v.config}};
}

void attach_provenance(Json& j) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char ts[64];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
  char host[256] = {};
  if (gethostname(host, sizeof host - 1) != 0) host[0] = '\0';
  j["provenance"] = {{"timestamp", ts}, {"host", host}, {"version", kVersion}};
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const Json& j, const std::filesystem::path& path) { write_text(canonical_dump(j) + "\n", path); }

}  // namespace exl
