#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "exl/report.hpp"
#include "test_util.hpp"

using namespace exl;

TEST_CASE("canonical_dump") {
  Json j = {{"b", 1}, {"a", {{"z", 0.1}, {"y", true}}}, {"c", Json::array({1.5, "s", nullptr})}};
  CHECK(canonical_dump(j) == R"({"a":{"y":true,"z":0.10000000000000001},"b":1,"c":[1.5,"s",null]})");
  CHECK(canonical_dump(Json(1.0 / 3.0)) == "0.33333333333333331");
  CHECK(canonical_dump(Json(std::numeric_limits<double>::quiet_NaN())) == "\"nan\"");
  CHECK(canonical_dump(Json(std::numeric_limits<double>::infinity())) == "\"inf\"");
  CHECK(canonical_dump(Json(-std::numeric_limits<double>::infinity())) == "\"-inf\"");
  // Round trip of the printed doubles is exact.
  const double x = 0.1 + 0.2;
  CHECK(Json::parse(canonical_dump(Json(x))).get<double>() == x);
}

TEST_CASE("sha256 and canonical_hash") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Json a = {{"x", 1.25}, {"y", {1, 2}}};
  Json b = a;
  attach_provenance(b);
  CHECK(b.contains("provenance"));
  CHECK(b["provenance"]["version"] == kVersion);
  CHECK(canonical_hash(a) == canonical_hash(b));
  CHECK(canonical_hash(a) == sha256_hex(canonical_dump(a)));
  Json c = a;
  c["x"] = 1.2500000000000002;
  CHECK(canonical_hash(a) != canonical_hash(c));
}

TEST_CASE("verdict") {
  Verdict v;
  CHECK(v.pass());
  v.add({"one", 0.1, 1.0, true, ""});
  CHECK(v.pass());
  v.add({"two", 2.0, 1.0, false, "too big"});
  CHECK_FALSE(v.pass());
  const Json j = to_json(v);
  CHECK(j["pass"] == false);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][1]["name"] == "two");
  CHECK(j["checks"][1]["detail"] == "too big");
  CHECK(j["checks"][0]["pass"] == true);
}

TEST_CASE("structure report shapes") {
  StructureReport rep;
  rep.law = LawKind::MhdEnergy;
  rep.n = 16;
  rep.length = 2.0;
  rep.dirs = "icosa:1";
  rep.raws = {{LawKind::MhdEnergy, 0.1, 1, 2, 3}, {LawKind::MhdEnergy, 0.2, 4, 5, 6}};
  rep.combined = {combine(LawKind::MhdEnergy, rep.raws[0]), combine(LawKind::MhdEnergy, rep.raws[1])};
  const Json j = to_json(rep);
  CHECK(j["law"] == "mhd-energy");
  CHECK(j["grid"]["n"] == 16);
  REQUIRE(j["scales"].size() == 2);
  CHECK(j["scales"][1]["raw_flux"] == 6.0);
  CHECK(j["scales"][0]["S_L"].get<double>() == rep.combined[0].S_L);
  CHECK(j["flux_coefficients"].contains("derived"));
  CHECK(j["flux_coefficients"].contains("stated"));

  std::istringstream csv(to_csv(rep));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "r,raw_L,raw_T,raw_flux,S_L,S_T");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(rows == 2);
}

TEST_CASE("dissipation report shapes") {
  DissipationReport rep;
  rep.law = LawKind::Helicity;
  rep.epsilons = {0.2, 0.4};
  rep.radial_nodes = 8;
  rep.dirs = "icosa:0";
  rep.parts.push_back({Part::L, {1.0, 2.0}, {1.0, 2.0}, {}});
  const Json one = to_json(rep);
  CHECK(one["part"] == "L");
  CHECK(one["mollifier"] == "bump");
  CHECK(one["d_shell"].size() == 2);
  rep.parts.push_back({Part::T, {3.0, 4.0}, {3.0, 4.0}, {}});
  const Json two = to_json(rep);
  REQUIRE(two["parts"].size() == 2);
  CHECK(two["parts"][1]["part"] == "T");
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("part,eps,d_ball,d_shell\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("write_json") {
  const auto dir = exl::test::scratch_dir("report");
  const Json j = {{"k", 2.5}};
  write_json(j, dir / "a.json");
  std::ifstream is(dir / "a.json");
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  CHECK(text == "{\"k\":2.5}\n");
  CHECK_THROWS_AS(write_json(j, dir / "missing" / "a.json"), std::runtime_error);
}
