#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "curvetop/diagram.hpp"
#include "curvetop/monodromy.hpp"
#include "curvetop/serialize.hpp"
#include "curvetop/topology.hpp"
#include "curvetop/version.hpp"

namespace curvetop {

struct RunConfig {
  std::string curve;
  TrackingConfig tracking;
  int shear_cap = 20;
  bool allow_shear = true;
  int seed = 0;
  bool mirror = false;  // orientation.mirror: flips every crossing sign
  bool emit_json = true;
  bool emit_svg = false;
  bool emit_tikz = false;
  std::string out_dir = ".";
  bool verbose = false;
};

/// Flat key-value config file: `key = value`, one per line, '#' comments.
inline std::map<std::string, std::string> parse_config_file(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t\r");
      std::size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

inline void apply_config_keys(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  auto get = [&](const char* key, double& slot) {
    auto it = kv.find(key);
    if (it != kv.end()) slot = std::stod(it->second);
  };
  get("step.initial", cfg.tracking.step_initial);
  get("step.min", cfg.tracking.step_min);
  get("corrector.tol", cfg.tracking.corrector_tol);
  get("separation.floor", cfg.tracking.separation_floor);
  get("cluster.ratio", cfg.tracking.cluster_ratio);
  get("tol", cfg.tracking.tol);
  if (auto it = kv.find("precision.extended"); it != kv.end())
    cfg.tracking.extended_precision = it->second == "1" || it->second == "true";
  if (auto it = kv.find("seed"); it != kv.end()) cfg.seed = std::stoi(it->second);
  if (auto it = kv.find("shear.cap"); it != kv.end()) cfg.shear_cap = std::stoi(it->second);
  if (auto it = kv.find("orientation.mirror"); it != kv.end())
    cfg.mirror = it->second == "1" || it->second == "true";
}

inline std::string config_canonical_text(const RunConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "step.initial=" << cfg.tracking.step_initial << "\n"
     << "step.min=" << cfg.tracking.step_min << "\n"
     << "corrector.tol=" << cfg.tracking.corrector_tol << "\n"
     << "separation.floor=" << cfg.tracking.separation_floor << "\n"
     << "cluster.ratio=" << cfg.tracking.cluster_ratio << "\n"
     << "tol=" << cfg.tracking.tol << "\n"
     << "precision.extended=" << (cfg.tracking.extended_precision ? 1 : 0) << "\n"
     << "seed=" << cfg.seed << "\n"
     << "shear.cap=" << cfg.shear_cap << "\n"
     << "orientation.mirror=" << (cfg.mirror ? 1 : 0) << "\n";
  return os.str();
}

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Braid mirrored(const Braid& b) {
  Braid r(b.n);
  for (int l : b.word) r.word.push_back(-l);
  return r;
}

/// Everything one run computes; commands pick from it.
struct AnalysisResult {
  BivariatePolynomial input;
  GenericModel model;
  MonodromyData md;
  HandleDecomposition hd;
  Presentation pi1;
  AbelianizationResult h1;
  int components = 0;
  KirbyDiagram kd;
  struct Check {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Check> checks;

  bool all_checks_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// parse -> genericity (with the shear ladder) -> monodromy -> topology ->
/// diagram, then the invariant suite over the computed data.
inline AnalysisResult analyze_curve(const RunConfig& cfg) {
  if (!(cfg.tracking.tol > 0) || !(cfg.tracking.step_initial > 0) ||
      !(cfg.tracking.step_min > 0) || !(cfg.tracking.corrector_tol > 0) ||
      !(cfg.tracking.separation_floor > 0) || !(cfg.tracking.cluster_ratio > 1))
    throw Error("configuration tolerances must be positive");
  AnalysisResult res;
  res.input = parse_polynomial(cfg.curve);
  res.model = prepare_generic(res.input, cfg.tracking.tol, cfg.tracking.cluster_ratio,
                              cfg.shear_cap, cfg.allow_shear);
  if (!res.model.report.pass())
    throw GenericityExhausted("projection is not generic and shearing is disabled");

  ArcSystem arcs = build_arc_system(res.model.X);
  res.md = assemble(res.model.f, res.model.X, arcs, cfg.tracking, cfg.seed);
  if (cfg.mirror) {
    for (LocalMonodromy& lm : res.md.locals) {
      lm.transport = mirrored(lm.transport);
      lm.local = mirrored(lm.local);
      lm.global = mirrored(lm.global);
    }
  }
  res.hd = handle_decomposition(res.md);
  res.pi1 = pi1_presentation(res.md);
  res.h1 = abelianization(res.pi1);
  res.components = component_count(res.md);
  res.kd = build_diagram(res.md);

  // Invariant suite.
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    res.checks.push_back({name, pass, detail});
  };

  {
    Braid total(res.md.n);
    for (const Block& b : res.kd.blocks) total = compose(total, b.braid);
    add("diagram_cycle_identity_permutation", is_identity_permutation(permutation(total)), "");
  }
  {
    int sum = 0;
    for (const Block& b : res.kd.blocks)
      if (b.kind != Block::Kind::closure) sum += exponent_sum(b.braid);
    int expected = 0;
    for (const LocalMonodromy& lm : res.md.locals) expected += exponent_sum(lm.local);
    add("writhe_bookkeeping", sum == expected,
        "blocks " + std::to_string(sum) + " vs locals " + std::to_string(expected));
  }
  add("relator_count_equals_two_handles",
      static_cast<int>(res.pi1.relators.size()) == res.hd.two_handle_count(), "");
  add("h1_rank_equals_component_count", res.h1.rank == res.components,
      "rank " + std::to_string(res.h1.rank) + " vs components " + std::to_string(res.components));
  {
    bool framings_zero = true;
    for (auto& c : res.hd.two_handles) framings_zero = framings_zero && c.framing == 0;
    for (auto& c : res.kd.attaching) framings_zero = framings_zero && c.framing == 0;
    add("all_framings_zero", framings_zero, "");
  }
  {
    int chi = euler_characteristic(res.hd);
    int expected = 1 - res.md.n + res.hd.two_handle_count();
    add("euler_characteristic_formula", chi == expected, "chi=" + std::to_string(chi));
  }
  if (transverse_at_infinity(res.model.f)) {
    Braid inf = monodromy_at_infinity(res.md);
    Braid ft = cfg.mirror ? mirrored(full_twist(res.md.n)) : full_twist(res.md.n);
    add("monodromy_at_infinity_full_twist", braids_equal(inf, ft), "");
  }
  {
    bool conj_ok = true;
    for (const LocalMonodromy& lm : res.md.locals) {
      Braid expect = compose(compose(lm.transport, lm.local), lm.transport.inverse());
      conj_ok = conj_ok && braids_equal(lm.global, expect);
    }
    add("global_braid_conjugation", conj_ok, "");
  }
  {
    bool sizes = true;
    for (const LocalMonodromy& lm : res.md.locals)
      sizes = sizes && static_cast<int>(lm.relator_labels.size()) == lm.m - 1;
    add("relator_index_sets", sizes, "");
  }
  return res;
}

/// Re-runs all tracking with the step cap divided by `factor` and compares
/// braid words letter-for-letter after free reduction.
inline bool refinement_stable(const RunConfig& cfg, const AnalysisResult& base, double factor) {
  RunConfig fine = cfg;
  fine.tracking.step_initial /= factor;
  AnalysisResult res = analyze_curve(fine);
  if (res.md.locals.size() != base.md.locals.size()) return false;
  for (std::size_t i = 0; i < res.md.locals.size(); ++i) {
    const LocalMonodromy& a = base.md.locals[i];
    const LocalMonodromy& b = res.md.locals[i];
    if (a.local.normalized().word != b.local.normalized().word) return false;
    if (a.transport.normalized().word != b.transport.normalized().word) return false;
    if (a.m != b.m || a.relator_labels != b.relator_labels) return false;
  }
  return true;
}

inline Json report_json(const RunConfig& cfg, const AnalysisResult& res) {
  Json j;
  j["schema"] = "report/1";
  j["version"] = kVersion;
  j["cfg_hash"] = fnv1a_hex(config_canonical_text(cfg));
  j["curve"] = Json{{"input", cfg.curve},
                    {"canonical", to_string(res.model.f)},
                    {"degree", res.model.f.degree()},
                    {"shear_t", to_string(res.model.shear_t)},
                    {"shear_attempts", res.model.attempts}};
  Json xs = Json::array();
  for (auto& p : res.model.X.points)
    xs.push_back(Json{{"z", complex_to_json(p.z)}, {"radius", p.radius}});
  j["critical_values"] = xs;
  j["genericity"] = Json{{"leading_ok", res.model.report.leading_ok},
                         {"distinct_ok", res.model.report.distinct_ok},
                         {"fibers_ok", res.model.report.fibers_ok()},
                         {"all_simple_tangencies", res.model.report.all_simple}};
  j["monodromy"] = monodromy_to_json(res.md);
  Json handles;
  handles["zero"] = res.hd.zero_handles;
  handles["one"] = res.hd.one_handles;
  handles["two"] = res.hd.two_handle_count();
  handles["euler_characteristic"] = euler_characteristic(res.hd);
  Json att = Json::array();
  for (auto& c : res.hd.two_handles)
    att.push_back(Json{{"i", c.critical_index}, {"k", c.k}, {"framing", c.framing},
                       {"placement", c.placement}});
  handles["attaching"] = att;
  j["handles"] = handles;
  j["pi1"] = pi1_to_json(res.pi1);
  Json h1;
  h1["rank"] = res.h1.rank;
  h1["torsion"] = res.h1.torsion;
  j["h1"] = h1;
  j["components"] = res.components;
  Json checks = Json::array();
  for (auto& c : res.checks)
    checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  return j;
}

inline std::string kirby_json_text(const RunConfig& cfg, const AnalysisResult& res) {
  return kirby_to_json(res.kd, to_string(res.model.f), cfg.seed,
                       fnv1a_hex(config_canonical_text(cfg)))
             .dump(2) +
         "\n";
}

inline std::string report_json_text(const RunConfig& cfg, const AnalysisResult& res) {
  return report_json(cfg, res).dump(2) + "\n";
}

}  // namespace curvetop
