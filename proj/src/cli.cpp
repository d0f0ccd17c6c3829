#include "exl/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "exl/field_io.hpp"
#include "exl/report.hpp"
#include "exl/synth.hpp"
#include "exl/verify.hpp"

namespace exl {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised after reports are written when a check fails.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Keys of the JSON object are long option names without dashes; values replace flag values.
void apply_config(CLI::App* app, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open config " + path);
  Json j;
  try {
    is >> j;
  } catch (const Json::exception& e) {
    throw UsageError("config " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "config") continue;
    CLI::Option* opt = app->get_option_no_throw("--" + it.key());
    if (opt == nullptr) throw UsageError("unknown config key '" + it.key() + "'");
    const Json& val = it.value();
    std::string text;
    if (val.is_string())
      text = val.get<std::string>();
    else if (val.is_number_float())
      text = canonical_dump(val);
    else
      text = val.dump();
    opt->clear();
    opt->add_result(text);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config key '" + it.key() + "': " + e.what());
    }
  }
}

std::filesystem::path sibling(const std::filesystem::path& p, const std::string& ext) {
  std::filesystem::path q = p;
  q.replace_extension(ext);
  return q;
}

void print_verdict(const Verdict& v, std::ostream& os) {
  for (const auto& c : v.checks) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-4s  %-12.4e  %-10.3g  ", c.pass ? "PASS" : "FAIL", c.measured, c.threshold);
    os << buf << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  std::size_t failed = 0;
  for (const auto& c : v.checks) failed += !c.pass;
  os << (v.pass() ? "PASS" : "FAIL") << ": " << v.checks.size() - failed << "/" << v.checks.size()
     << " checks passed\n";
}

VectorField3 load(const std::string& path) {
  try {
    return read_field(path);
  } catch (const FieldIoError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// ---- gen

struct GenArgs {
  std::string kind;
  int n = 0;
  double length = kTwoPi;
  double A = 1.0, B = 1.0, C = 1.0;
  SpectrumSpec spec;
  std::uint64_t seed = 0;
  std::string out;
  std::string h_out;
};

void cmd_gen(const GenArgs& a) {
  const Grid3 g(a.n, a.length);
  Json params = {{"kind", a.kind}, {"n", a.n}, {"length", a.length}};
  if (a.kind == "abc") {
    write_field(abc_flow(g, a.A, a.B, a.C), a.out);
    params["A"] = a.A;
    params["B"] = a.B;
    params["C"] = a.C;
  } else if (a.kind == "taylor-green") {
    write_field(taylor_green(g), a.out);
  } else if (a.kind == "random") {
    SpectrumSpec s = a.spec;
    s.seed = a.seed;
    write_field(random_solenoidal(g, s), a.out);
    params.update({{"slope", s.slope}, {"kmin", s.kmin}, {"kmax", s.kmax}, {"rms", s.rms}, {"seed", a.seed}});
  } else if (a.kind == "mhd-pair" || a.kind == "smooth-pair") {
    const std::string h_out = a.h_out.empty() ? sibling(a.out, ".h.fld").string() : a.h_out;
    const FieldPair p = a.kind == "mhd-pair" ? mhd_test_pair(g, a.seed) : smooth_pair(g, a.seed);
    write_field(p.v, a.out);
    write_field(p.h, h_out);
    params["seed"] = a.seed;
    params["h_out"] = h_out;
  } else {
    throw UsageError("unknown kind '" + a.kind + "'");
  }
  params["out"] = a.out;
  params["format"] = "EXL1";
  attach_provenance(params);
  write_json(params, a.out + ".json");
}

// ---- analyze

struct AnalyzeArgs {
  std::string law;
  std::string v, h, w;
  std::string scales = "0.05:0.8:12";
  std::string dirs = "icosa:2";
  std::string convention = "derived";
  std::string out = "structure.json";
  std::string csv;
};

// Second field for a law: --w (helicity) or --h (MHD).
std::optional<VectorField3> second_field(LawKind law, const std::string& h, const std::string& w) {
  if (law == LawKind::Helicity) {
    if (!h.empty()) throw UsageError("helicity takes --w, not --h");
    if (!w.empty()) return load(w);
    return std::nullopt;
  }
  if (!w.empty()) throw UsageError("--w applies to helicity only");
  if (law == LawKind::HydroEnergy) {
    if (!h.empty()) throw UsageError("hydro-energy takes no --h");
    return std::nullopt;
  }
  if (h.empty()) throw UsageError("magnetic field required");
  return load(h);
}

void cmd_analyze(const AnalyzeArgs& a) {
  const LawKind law = parse_law(a.law);
  const VectorField3 v = load(a.v);
  const auto second = second_field(law, a.h, a.w);
  const auto scales = parse_ladder(a.scales);
  const DirectionSet dirs = parse_direction_set(a.dirs);
  const StructureReport rep =
      sweep_structure(law, v, second ? &*second : nullptr, scales, dirs, parse_convention(a.convention));
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  Json j = to_json(rep);
  j["inputs"] = {{"v", a.v}, {"h", a.h}, {"w", a.w}};
  attach_provenance(j);
  write_json(j, a.out);
  write_text(to_csv(rep), a.csv.empty() ? sibling(a.out, ".csv") : std::filesystem::path(a.csv));
}

// ---- dissipation

struct DissipationArgs {
  std::string law;
  std::string v, h, w;
  std::string part = "both";
  std::string method = "both";
  std::string eps = "0.2:0.8:3";
  std::string dirs = "icosa:2";
  int nodes = 32;
  int shell_nodes = 0;  // 0: same as --nodes, sharing the ball's moment table
  double quad_match_tol = 1e-10;
  std::string out = "dissipation.json";
  std::string csv;
};

void cmd_dissipation(const DissipationArgs& a) {
  const LawKind law = parse_law(a.law);
  if (a.method != "ball" && a.method != "shell" && a.method != "both")
    throw UsageError("method must be ball, shell or both");
  if (!(a.quad_match_tol > 0.0)) throw UsageError("quad-match-tol must be positive");
  std::vector<Part> parts;
  if (a.part == "both")
    parts = {Part::L, Part::T};
  else
    parts = {parse_part(a.part)};
  const VectorField3 v = load(a.v);
  auto second = second_field(law, a.h, a.w);
  if (law == LawKind::Helicity && !second) second = curl(v);
  const VectorField3* sp = second ? &*second : nullptr;
  const auto eps = parse_ladder(a.eps);
  const DirectionSet dirs = parse_direction_set(a.dirs);
  const Mollifier& m = Mollifier::bump();

  DissipationReport rep = sweep_dissipation(law, parts, v, sp, m, eps, a.nodes, dirs);
  const int shell_nodes = a.shell_nodes > 0 ? a.shell_nodes : a.nodes;
  if (shell_nodes != a.nodes) {
    const ProfileFn prof = [&](double r) { return raw_combos(law, v, sp, r, dirs); };
    for (auto& p : rep.parts)
      for (std::size_t e = 0; e < eps.size(); ++e) p.d_shell[e] = d_shell(law, p.part, prof, m, eps[e], shell_nodes);
  }

  Json j = to_json(rep);
  Json matches = Json::array();
  std::vector<std::string> failures;
  if (a.method == "both") {
    for (const auto& p : rep.parts)
      for (std::size_t e = 0; e < eps.size(); ++e) {
        const double rel = rel_mismatch(p.d_ball[e], p.d_shell[e]);
        const bool ok = rel <= a.quad_match_tol;
        matches.push_back({{"part", to_string(p.part)},
                           {"eps", eps[e]},
                           {"d_ball", p.d_ball[e]},
                           {"d_shell", p.d_shell[e]},
                           {"rel_mismatch", rel},
                           {"pass", ok}});
        if (!ok) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "ball/shell mismatch at eps=%.6g part %s: %.3e > %.3e", eps[e],
                        to_string(p.part).c_str(), rel, a.quad_match_tol);
          failures.push_back(buf);
        }
      }
  }
  // Strip the quadrature that was not requested.
  const auto strip = [&](Json& obj) {
    if (a.method == "ball") obj.erase("d_shell");
    if (a.method == "shell") obj.erase("d_ball");
  };
  if (j.contains("parts"))
    for (auto& p : j["parts"]) strip(p);
  else
    strip(j);
  j["method"] = a.method;
  j["shell_nodes"] = shell_nodes;
  j["quad_match_tol"] = a.quad_match_tol;
  if (a.method == "both") {
    j["matches"] = matches;
    j["pass"] = failures.empty();
  }
  j["inputs"] = {{"v", a.v}, {"h", a.h}, {"w", a.w}};
  attach_provenance(j);
  write_json(j, a.out);
  write_text(to_csv(rep), a.csv.empty() ? sibling(a.out, ".csv") : std::filesystem::path(a.csv));
  if (!failures.empty()) {
    std::string msg;
    for (const auto& f : failures) msg += (msg.empty() ? "" : "\n") + f;
    throw CheckFailure(msg);
  }
}

// ---- verify / selftest

struct VerifyArgs {
  VerifyConfig cfg;
  std::string eps, scales, smooth_eps, convention = "derived";
  std::string v, h;
  std::string out = "verify.json";
  bool quiet = false;
};

void emit_verdict(const Verdict& v, const std::string& out, bool quiet) {
  Json j = to_json(v);
  attach_provenance(j);
  if (!out.empty()) write_json(j, out);
  if (!quiet) print_verdict(v, std::cout);
  std::cout << "canonical hash " << canonical_hash(j) << '\n';
  if (!v.pass()) throw CheckFailure("verdict: FAIL");
}

void cmd_verify(VerifyArgs a) {
  VerifyConfig& c = a.cfg;
  if (!a.eps.empty()) c.epsilons = parse_ladder(a.eps);
  if (!a.scales.empty()) c.scales = parse_ladder(a.scales);
  if (!a.smooth_eps.empty()) c.smooth_epsilons = parse_ladder(a.smooth_eps);
  c.convention = parse_convention(a.convention);
  if (!a.v.empty()) c.v_path = a.v;
  if (!a.h.empty()) c.h_path = a.h;
  validate(c);
  emit_verdict(run_verify(c), a.out, a.quiet);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Structure functions and mollified dissipation functionals on periodic 3D fields"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_help_flag("--help", "Print help");  // -h is taken by the magnetic-field flag
  app.require_subcommand(1);
  std::string config;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a field file (EXL1) with a JSON sidecar");
  g->add_option("--kind", gen.kind, "abc | taylor-green | random | mhd-pair | smooth-pair")->required();
  g->add_option("--n", gen.n, "Points per axis")->required();
  g->add_option("--length", gen.length, "Box length");
  g->add_option("--A", gen.A);
  g->add_option("--B", gen.B);
  g->add_option("--C", gen.C);
  g->add_option("--slope", gen.spec.slope, "Shell spectrum exponent");
  g->add_option("--kmin", gen.spec.kmin);
  g->add_option("--kmax", gen.spec.kmax);
  g->add_option("--rms", gen.spec.rms);
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "Output path")->required();
  g->add_option("--h-out", gen.h_out, "Second field path for pair kinds");

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "Structure-function sweep over a scale ladder");
  a->add_option("--law", an.law)->required();
  a->add_option("--v", an.v, "Velocity field")->required();
  a->add_option("--h", an.h, "Magnetic field (MHD laws)");
  a->add_option("--w", an.w, "Vorticity field (helicity; default curl v)");
  a->add_option("--scales", an.scales, "lo:hi:count");
  a->add_option("--dirs", an.dirs);
  a->add_option("--convention", an.convention, "derived | stated");
  a->add_option("--out", an.out);
  a->add_option("--csv", an.csv);

  DissipationArgs di;
  auto* d = app.add_subcommand("dissipation", "Mollified dissipation functionals over an eps ladder");
  d->add_option("--law", di.law)->required();
  d->add_option("--v", di.v)->required();
  d->add_option("--h", di.h);
  d->add_option("--w", di.w);
  d->add_option("--part", di.part, "L | T | both");
  d->add_option("--method", di.method, "ball | shell | both");
  d->add_option("--eps", di.eps, "lo:hi:count");
  d->add_option("--dirs", di.dirs);
  d->add_option("--nodes", di.nodes, "Radial Gauss-Legendre nodes");
  d->add_option("--shell-nodes", di.shell_nodes, "Radial nodes for the shell form (default --nodes)");
  d->add_option("--quad-match-tol", di.quad_match_tol);
  d->add_option("--out", di.out);
  d->add_option("--csv", di.csv);

  VerifyArgs ve;
  auto* v = app.add_subcommand("verify", "Run law verification suites");
  v->add_option("--suite", ve.cfg.suite, "all | identity | coefficients | equivalence | degeneracy | smooth | crosscheck");
  v->add_option("--n", ve.cfg.n);
  v->add_option("--length", ve.cfg.length);
  v->add_option("--seed", ve.cfg.seed);
  v->add_option("--dirs", ve.cfg.dirs);
  v->add_option("--nodes", ve.cfg.radial_nodes);
  v->add_option("--eps", ve.eps, "lo:hi:count");
  v->add_option("--scales", ve.scales, "lo:hi:count");
  v->add_option("--smooth-eps", ve.smooth_eps, "lo:hi:count");
  v->add_option("--identity-samples", ve.cfg.identity_samples);
  v->add_option("--convention", ve.convention, "derived | stated");
  v->add_option("--identity-tol", ve.cfg.tol.identity_tol);
  v->add_option("--quad-match-tol", ve.cfg.tol.quad_match_tol);
  v->add_option("--degeneracy-tol", ve.cfg.tol.degeneracy_tol);
  v->add_option("--slope-min", ve.cfg.tol.slope_min);
  v->add_option("--coefficient-tol", ve.cfg.tol.coefficient_tol);
  v->add_option("--flux-tol", ve.cfg.tol.flux_tol);
  v->add_option("--v", ve.v, "Velocity field for the equivalence suite");
  v->add_option("--h", ve.h, "Magnetic field for the equivalence suite");
  v->add_option("--out", ve.out);
  v->add_flag("--quiet", ve.quiet, "Only print the overall result");

  SelftestOptions st;
  std::string st_out;
  bool st_quiet = false;
  auto* s = app.add_subcommand("selftest", "Built-in consistency checks on small inputs");
  s->add_flag("--corrupt-directions", st.corrupt_directions, "Perturb one direction weight (test hook)");
  s->add_option("--identity-samples", st.identity_samples);
  s->add_option("--out", st_out);
  s->add_flag("--quiet", st_quiet);

  for (auto* sub : {g, a, d, v, s}) sub->add_option("--config", config, "JSON object of flag overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (auto* sub : {g, a, d, v, s})
      if (sub->parsed() && !config.empty()) apply_config(sub, config);
    if (g->parsed()) cmd_gen(gen);
    if (a->parsed()) cmd_analyze(an);
    if (d->parsed()) cmd_dissipation(di);
    if (v->parsed()) cmd_verify(ve);
    if (s->parsed()) emit_verdict(run_selftest(st), st_out, st_quiet);
  } catch (const CheckFailure& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace exl
