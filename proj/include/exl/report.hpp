#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "exl/laws.hpp"
#include "exl/mollifier.hpp"

namespace exl {

using Json = nlohmann::json;

/// Compact JSON with sorted keys and doubles printed as %.17g.
/// Non-finite doubles become the strings "nan", "inf", "-inf".
std::string canonical_dump(const Json& j);

/// SHA-256 (hex) of canonical_dump with the top-level "provenance" key removed.
std::string canonical_hash(const Json& j);

std::string sha256_hex(const std::string& data);

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct Verdict {
  std::vector<Check> checks;
  Json config;

  bool pass() const;
  void add(Check c) { checks.push_back(std::move(c)); }
};

Json to_json(const RawCombos& rc, const Combined& s);
Json to_json(const StructureReport& rep);
std::string to_csv(const StructureReport& rep);

/// One part: {law, part, mollifier, epsilons, d_ball, d_shell, extrapolation, ...}.
/// Several parts: {law, mollifier, parts: [per-part objects]}.
Json to_json(const DissipationReport& rep);
std::string to_csv(const DissipationReport& rep);

Json to_json(const Verdict& v);

/// Adds {"provenance": {timestamp, host, version}}; excluded from canonical_hash.
void attach_provenance(Json& j);

/// Writes canonical_dump plus a trailing newline. Throws std::runtime_error on I/O failure.
void write_json(const Json& j, const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

inline constexpr const char* kVersion = "1.0.0";

}  // namespace exl
