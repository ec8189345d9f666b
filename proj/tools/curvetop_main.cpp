// Command-line driver: braid monodromy, handle decompositions and Kirby
// diagrams of plane algebraic curve complements.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "curvetop/pipeline.hpp"

namespace fs = std::filesystem;
using namespace curvetop;

namespace {

struct CommonOpts {
  std::string curve;
  std::string curve_file;
  std::string config_file;
  std::string out = ".";
  std::string emit = "json";
  double tol = 1e-8;
  int seed = 0;
  bool no_shear = false;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--curve", o.curve, "curve polynomial f(x,y)");
  cmd->add_option("--curve-file", o.curve_file, "file containing the polynomial");
  cmd->add_option("--config", o.config_file, "flat key=value config file");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--emit", o.emit, "comma-separated outputs: json,svg,tikz");
  cmd->add_option("--tol", o.tol, "root certification tolerance");
  cmd->add_option("--seed", o.seed, "phase-candidate order seed");
  cmd->add_flag("--no-shear", o.no_shear, "fail instead of shearing a non-generic projection");
  cmd->add_flag("--verbose", o.verbose, "more progress output");
}

RunConfig make_config(const CommonOpts& o) {
  RunConfig cfg;
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw Error("cannot open config file: " + o.config_file);
    apply_config_keys(cfg, parse_config_file(in));
  }
  if (!o.curve_file.empty()) {
    std::ifstream in(o.curve_file);
    if (!in) throw Error("cannot open curve file: " + o.curve_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg.curve = ss.str();
  }
  if (!o.curve.empty()) cfg.curve = o.curve;
  if (cfg.curve.empty()) throw Error("no curve given (--curve or --curve-file)");
  cfg.tracking.tol = o.tol;
  cfg.seed = o.seed;
  cfg.allow_shear = !o.no_shear;
  cfg.out_dir = o.out;
  cfg.verbose = o.verbose;
  cfg.emit_json = o.emit.find("json") != std::string::npos;
  cfg.emit_svg = o.emit.find("svg") != std::string::npos;
  cfg.emit_tikz = o.emit.find("tikz") != std::string::npos;
  return cfg;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int cmd_analyze(const CommonOpts& o) {
  RunConfig cfg = make_config(o);
  AnalysisResult res = analyze_curve(cfg);
  fs::create_directories(cfg.out_dir);
  write_file(fs::path(cfg.out_dir) / "report.json", report_json_text(cfg, res));
  std::cout << "curve: " << to_string(res.model.f) << "\n";
  std::cout << "critical values: " << res.model.X.size() << ", degree n = " << res.md.n << "\n";
  std::cout << "handles: (1, " << res.hd.one_handles << ", " << res.hd.two_handle_count()
            << "), chi = " << euler_characteristic(res.hd) << "\n";
  std::cout << "H1: rank " << res.h1.rank << ", components " << res.components << "\n";
  if (cfg.verbose) std::cout << res.pi1.str() << "\n";
  for (auto& c : res.checks)
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name
              << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "report.json").string() << "\n";
  return res.all_checks_pass() ? 0 : 1;
}

int cmd_kirby(const CommonOpts& o) {
  RunConfig cfg = make_config(o);
  AnalysisResult res = analyze_curve(cfg);
  fs::create_directories(cfg.out_dir);
  if (cfg.emit_json) {
    write_file(fs::path(cfg.out_dir) / "kirby.json", kirby_json_text(cfg, res));
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "kirby.json").string() << "\n";
  }
  if (cfg.emit_svg) {
    write_file(fs::path(cfg.out_dir) / "kirby.svg", emit_svg(res.kd));
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "kirby.svg").string() << "\n";
  }
  if (cfg.emit_tikz) {
    write_file(fs::path(cfg.out_dir) / "kirby.tex", emit_tikz(res.kd));
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "kirby.tex").string() << "\n";
  }
  return 0;
}

int cmd_pi1(const CommonOpts& o) {
  RunConfig cfg = make_config(o);
  AnalysisResult res = analyze_curve(cfg);
  std::cout << res.pi1.str() << "\n";
  std::cout << "H1: rank " << res.h1.rank;
  if (!res.h1.torsion.empty()) {
    std::cout << ", torsion";
    for (long t : res.h1.torsion) std::cout << " Z/" << t;
  }
  std::cout << "\n";
  fs::create_directories(cfg.out_dir);
  write_file(fs::path(cfg.out_dir) / "pi1.json", pi1_to_json(res.pi1).dump(2) + "\n");
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "pi1.json").string() << "\n";
  return 0;
}

int cmd_check(const CommonOpts& o) {
  RunConfig cfg = make_config(o);
  try {
    BivariatePolynomial input = parse_polynomial(cfg.curve);
    if (!reducedness_check(input)) {
      std::cout << "[FAIL] reducedness (polynomial has a repeated factor)\n";
      return 1;
    }
    AnalysisResult res = analyze_curve(cfg);
    bool ok = true;
    for (auto& c : res.checks) {
      std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name
                << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
      ok = ok && c.pass;
    }
    bool stable = refinement_stable(cfg, res, 2.0);
    std::cout << (stable ? "[pass] " : "[FAIL] ") << "refinement_stability (step/2)\n";
    ok = ok && stable;
    return ok ? 0 : 1;
  } catch (const GenericityExhausted& e) {
    std::cout << "[FAIL] genericity (" << e.what() << ")\n";
    return 1;
  } catch (const Error& e) {
    std::cout << "[FAIL] " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"braid monodromy, handle decompositions and Kirby diagrams of plane curve "
               "complements"};
  app.require_subcommand(1);

  CommonOpts a, k, p, c;
  CLI::App* analyze = app.add_subcommand("analyze", "full pipeline report");
  add_common(analyze, a);
  CLI::App* kirby = app.add_subcommand("kirby", "emit the Kirby diagram");
  add_common(kirby, k);
  CLI::App* pi1 = app.add_subcommand("pi1", "fundamental group presentation");
  add_common(pi1, p);
  CLI::App* check = app.add_subcommand("check", "run the invariant suite");
  add_common(check, c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(a);
    if (kirby->parsed()) return cmd_kirby(k);
    if (pi1->parsed()) return cmd_pi1(p);
    if (check->parsed()) return cmd_check(c);
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
