#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "curvetop/diagram.hpp"
#include "curvetop/monodromy.hpp"
#include "curvetop/topology.hpp"
#include "curvetop/version.hpp"

namespace curvetop {

// Ordered JSON keeps the output byte-deterministic.
using Json = nlohmann::ordered_json;

inline Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json braid_to_json(const Braid& b) {
  Json a = Json::array();
  for (int l : b.word) a.push_back(l);
  return a;
}

inline Json arcs_to_json(const ArcSystem& sys) {
  Json arr = Json::array();
  for (const SystemArc& a : sys.arcs) {
    Json v = Json::array();
    v.push_back(complex_to_json(sys.p0));
    v.push_back(complex_to_json(a.waypoint));
    v.push_back(complex_to_json(a.endpoint));
    arr.push_back(Json{{"index", a.index}, {"vertices", v}, {"disk_radius", a.disk_radius}});
  }
  return arr;
}

/// schema "monodromy/1": critical values as [re, im] pairs, braids as
/// signed-integer arrays, arcs as vertex lists.
inline Json monodromy_to_json(const MonodromyData& md) {
  Json j;
  j["schema"] = "monodromy/1";
  j["n"] = md.n;
  j["base_point"] = complex_to_json(md.arcs.p0);
  Json xs = Json::array();
  for (auto& p : md.X.points) xs.push_back(complex_to_json(p.z));
  j["critical_values"] = xs;
  j["arcs"] = arcs_to_json(md.arcs);
  Json order = Json::array();
  for (int i : md.arcs.order) order.push_back(i);
  j["arc_order"] = order;
  Json locals = Json::array();
  for (const LocalMonodromy& lm : md.locals) {
    Json l;
    l["index"] = lm.index;
    l["local_braid"] = braid_to_json(lm.local);
    l["transport_braid"] = braid_to_json(lm.transport);
    l["global_braid"] = braid_to_json(lm.global);
    l["m"] = lm.m;
    l["collapse_labels"] = lm.collapse_base_labels;
    l["I"] = lm.relator_labels;
    locals.push_back(l);
  }
  j["locals"] = locals;
  return j;
}

/// schema "pi1/1".
inline Json pi1_to_json(const Presentation& p) {
  Json j;
  j["schema"] = "pi1/1";
  j["generators"] = p.generators;
  Json rs = Json::array();
  for (const Relator& r : p.relators) {
    Json e;
    e["critical_index"] = r.critical_index;
    e["label"] = r.label;
    e["raw"] = r.raw;
    e["word"] = r.word.letters();
    e["trivial"] = r.trivial;
    rs.push_back(e);
  }
  j["relators"] = rs;
  j["text"] = p.str();
  return j;
}

/// schema "kirby/1" with one extension: attaching records carry the absolute
/// lane of their strand pair so the document round-trips losslessly.
inline Json kirby_to_json(const KirbyDiagram& kd, const std::string& curve_text, int seed,
                          const std::string& cfg_hash) {
  Json j;
  j["schema"] = "kirby/1";
  j["n"] = kd.n;
  Json blocks = Json::array();
  for (const Block& b : kd.blocks) {
    Json e;
    e["kind"] = block_kind_name(b.kind);
    e["i"] = b.index;
    e["braid"] = braid_to_json(b.braid);
    blocks.push_back(e);
  }
  j["blocks"] = blocks;
  Json att = Json::array();
  for (const PlacedCircle& c : kd.attaching)
    att.push_back(Json{{"i", c.index},
                       {"k", c.k},
                       {"framing", c.framing},
                       {"lanes", Json::array({c.lane_a, c.lane_b})}});
  j["attaching"] = att;
  j["meta"] = Json{{"curve", curve_text}, {"seed", seed}, {"cfg-hash", cfg_hash}};
  return j;
}

inline KirbyDiagram kirby_from_json(const Json& j) {
  if (j.at("schema").get<std::string>() != "kirby/1") throw Error("not a kirby/1 document");
  KirbyDiagram kd;
  kd.n = j.at("n").get<int>();
  for (const Json& e : j.at("blocks")) {
    Block b;
    std::string kind = e.at("kind").get<std::string>();
    b.kind = kind == "transport_out"  ? Block::Kind::transport_out
             : kind == "local"        ? Block::Kind::local
             : kind == "transport_back" ? Block::Kind::transport_back
                                        : Block::Kind::closure;
    b.index = e.at("i").get<int>();
    b.braid = Braid(kd.n, e.at("braid").get<std::vector<int>>());
    kd.blocks.push_back(b);
  }
  for (const Json& e : j.at("attaching")) {
    PlacedCircle c;
    c.index = e.at("i").get<int>();
    c.k = e.at("k").get<int>();
    c.framing = e.at("framing").get<int>();
    c.lane_a = e.at("lanes").at(0).get<int>();
    c.lane_b = e.at("lanes").at(1).get<int>();
    kd.attaching.push_back(c);
  }
  return kd;
}

/// Structural validity of a kirby/1 document (used by tests and `check`).
inline bool validate_kirby_json(const Json& j) {
  if (!j.contains("schema") || j["schema"] != "kirby/1") return false;
  if (!j.contains("n") || !j["n"].is_number_integer()) return false;
  if (!j.contains("blocks") || !j["blocks"].is_array()) return false;
  if (!j.contains("attaching") || !j["attaching"].is_array()) return false;
  if (!j.contains("meta") || !j["meta"].contains("curve") || !j["meta"].contains("seed") ||
      !j["meta"].contains("cfg-hash"))
    return false;
  for (const Json& e : j["blocks"])
    if (!e.contains("kind") || !e.contains("i") || !e.contains("braid") || !e["braid"].is_array())
      return false;
  for (const Json& e : j["attaching"]) {
    if (!e.contains("i") || !e.contains("k") || !e.contains("framing")) return false;
    if (e["framing"].get<int>() != 0) return false;
  }
  return true;
}

}  // namespace curvetop
