#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "exl/report.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
};

const fs::path& dir() {
  static const fs::path d = exl::test::scratch_dir("cli");
  return d;
}

Run exl_run(const std::string& args) {
  const fs::path log = dir() / "stdout.txt";
  const std::string cmd = std::string("cd '") + dir().string() + "' && '" + EXL_CLI_PATH + "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream is(log);
  std::stringstream ss;
  ss << is.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

nlohmann::json load(const std::string& name) { return nlohmann::json::parse(slurp(dir() / name)); }

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(exl_run("--help").code == 0);
  CHECK(exl_run("").code == 2);
  CHECK(exl_run("frobnicate").code == 2);
  const Run odd = exl_run("gen --kind abc --n 7 --out odd.fld");
  CHECK(odd.code == 2);
  CHECK(odd.out.find("n must be even") != std::string::npos);
  CHECK(exl_run("gen --kind nope --n 8 --out x.fld").code == 2);
}

TEST_CASE("gen") {
  const Run r = exl_run("gen --kind abc --n 64 --out abc.fld");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir() / "abc.fld"));
  const auto side = load("abc.fld.json");
  CHECK(side["kind"] == "abc");
  CHECK(side.contains("provenance"));

  REQUIRE(exl_run("gen --kind random --n 16 --seed 5 --out r1.fld").code == 0);
  REQUIRE(exl_run("gen --kind random --n 16 --seed 5 --out r2.fld").code == 0);
  REQUIRE(exl_run("gen --kind random --n 16 --seed 6 --out r3.fld").code == 0);
  CHECK(slurp(dir() / "r1.fld") == slurp(dir() / "r2.fld"));
  CHECK(slurp(dir() / "r1.fld") != slurp(dir() / "r3.fld"));

  REQUIRE(exl_run("gen --kind mhd-pair --n 16 --out pair.fld").code == 0);
  CHECK(fs::exists(dir() / "pair.h.fld"));
}

TEST_CASE("analyze") {
  REQUIRE(exl_run("gen --kind mhd-pair --n 16 --out m.fld --h-out mh.fld").code == 0);
  const Run r = exl_run("analyze --law helicity --v m.fld --out a1.json");
  CHECK(r.code == 0);
  const auto j = load("a1.json");
  CHECK(j["scales"].size() == 12);
  CHECK(j["law"] == "helicity");
  CHECK(fs::exists(dir() / "a1.csv"));

  REQUIRE(exl_run("analyze --law helicity --v m.fld --out a2.json").code == 0);
  CHECK(exl::canonical_hash(j) == exl::canonical_hash(load("a2.json")));

  const Run nomag = exl_run("analyze --law mhd-energy --v m.fld --out a3.json");
  CHECK(nomag.code == 2);
  CHECK(nomag.out.find("magnetic field required") != std::string::npos);
  CHECK(exl_run("analyze --law cross-helicity --v m.fld --h mh.fld --scales 0.1:0.4:3 --out a4.json").code == 0);
  CHECK(load("a4.json")["scales"].size() == 3);
  CHECK(exl_run("analyze --law helicity --v m.fld --scales 0.1:5:3 --out a5.json").code == 2);
  CHECK(exl_run("analyze --law helicity --v missing.fld").code == 2);
}

TEST_CASE("dissipation") {
  REQUIRE(exl_run("gen --kind mhd-pair --n 16 --out d.fld --h-out dh.fld").code == 0);
  const Run both = exl_run("dissipation --law mhd-energy --v d.fld --h dh.fld --method both --part both --nodes 12 "
                           "--dirs icosa:1 --out d1.json");
  CHECK(both.code == 0);
  const auto j = load("d1.json");
  CHECK(j.contains("matches"));
  CHECK(j["pass"] == true);
  CHECK(fs::exists(dir() / "d1.csv"));

  const Run bad = exl_run("dissipation --law helicity --v d.fld --method both --nodes 12 --shell-nodes 3 "
                          "--dirs icosa:1 --out d2.json");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("mismatch at eps=") != std::string::npos);
  CHECK(fs::exists(dir() / "d2.json"));

  REQUIRE(exl_run("gen --kind abc --A 0 --B 0 --C 0 --n 16 --out zero.fld").code == 0);
  const Run z = exl_run("dissipation --law helicity --v zero.fld --method both --nodes 8 --out d3.json");
  CHECK(z.code == 0);
  CHECK(exl_run("gen --kind random --n 16 --rms 0 --out r0.fld").code == 2);
}

TEST_CASE("verify and selftest") {
  const Run id = exl_run("verify --suite identity --identity-samples 2000 --out v1.json");
  CHECK(id.code == 0);
  CHECK(id.out.find("canonical hash") != std::string::npos);
  CHECK(load("v1.json")["pass"] == true);

  CHECK(exl_run("verify --suite crosscheck --out v2.json").code == 0);
  const Run stated = exl_run("verify --suite crosscheck --convention stated --out v3.json");
  CHECK(stated.code == 1);
  CHECK(stated.out.find("FAIL") != std::string::npos);
  CHECK(exl_run("verify --suite bogus").code == 2);

  const Run st = exl_run("selftest --out s1.json");
  CHECK(st.code == 0);
  const Run bad = exl_run("selftest --corrupt-directions --out s2.json");
  CHECK(bad.code == 1);
  CHECK(load("s2.json")["pass"] == false);
}

TEST_CASE("config file") {
  {
    std::ofstream os(dir() / "cfg.json");
    os << R"({"suite": "crosscheck", "convention": "stated"})";
  }
  CHECK(exl_run("verify --config cfg.json --out c1.json").code == 1);
  {
    std::ofstream os(dir() / "cfg2.json");
    os << R"({"convention": "derived"})";
  }
  CHECK(exl_run("verify --suite crosscheck --config cfg2.json --out c2.json").code == 0);
  {
    std::ofstream os(dir() / "cfg3.json");
    os << R"({"nonsense": 1})";
  }
  CHECK(exl_run("verify --config cfg3.json").code == 2);
}
