#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"

using namespace curvetop;

namespace {

AnalysisResult analyze(const std::string& text) {
  return analyze_curve(testutil::config_for(text));
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int k = 0;
  std::size_t at = 0;
  while ((at = hay.find(needle, at)) != std::string::npos) {
    ++k;
    at += needle.size();
  }
  return k;
}

Braid cycle_product(const KirbyDiagram& kd) {
  Braid total(kd.n);
  for (const Block& b : kd.blocks) total = compose(total, b.braid);
  return total;
}

}  // namespace

TEST_CASE("node diagram structure") {
  auto res = analyze("x^2 - y^2");
  const KirbyDiagram& kd = res.kd;
  REQUIRE(kd.n == 2);
  REQUIRE(kd.blocks.size() == 4);
  REQUIRE(kd.blocks[0].kind == Block::Kind::transport_out);
  REQUIRE(kd.blocks[0].braid.word.empty());
  REQUIRE(kd.blocks[1].kind == Block::Kind::local);
  REQUIRE(kd.blocks[1].braid.word == std::vector<int>{1, 1});
  REQUIRE(kd.blocks[2].kind == Block::Kind::transport_back);
  REQUIRE(kd.blocks[2].braid.word.empty());
  REQUIRE(kd.blocks[3].kind == Block::Kind::closure);
  REQUIRE(kd.blocks[3].braid.word == std::vector<int>{-1, -1});
  REQUIRE(kd.attaching.size() == 1);
  REQUIRE(kd.attaching[0].framing == 0);
  REQUIRE(kd.attaching[0].lane_a == 0);
  REQUIRE(kd.attaching[0].lane_b == 1);
  REQUIRE(is_identity_permutation(permutation(cycle_product(kd))));
}

TEST_CASE("transport-back blocks invert transport-out blocks") {
  auto res = analyze("(x+y)*(x-y)*(y-1)");
  const KirbyDiagram& kd = res.kd;
  for (std::size_t i = 0; i < kd.blocks.size(); ++i)
    if (kd.blocks[i].kind == Block::Kind::transport_out) {
      REQUIRE(kd.blocks[i + 2].kind == Block::Kind::transport_back);
      REQUIRE(kd.blocks[i + 2].braid.word == kd.blocks[i].braid.inverse().word);
    }
}

TEST_CASE("three-lines diagram counts") {
  auto res = analyze("(x+y)*(x-y)*(y-1)");
  const KirbyDiagram& kd = res.kd;
  int locals = 0;
  for (auto& b : kd.blocks)
    if (b.kind == Block::Kind::local) {
      ++locals;
      REQUIRE(exponent_sum(b.braid) == 2);
    }
  REQUIRE(locals == 3);
  REQUIRE(kd.attaching.size() == 3);
  // the closing braid undoes the product of everything else
  Braid rest(kd.n);
  for (auto& b : kd.blocks)
    if (b.kind != Block::Kind::closure) rest = compose(rest, b.braid);
  REQUIRE(braids_equal(rest, kd.blocks.back().braid.inverse()));
  REQUIRE(is_identity_permutation(permutation(cycle_product(kd))));
}

TEST_CASE("Fermat cubic diagram has six attaching circles") {
  auto res = analyze("x^3 + y^3 - 1");
  REQUIRE(res.kd.attaching.size() == 6);
  std::set<std::pair<int, int>> seen;
  for (auto& c : res.kd.attaching) {
    REQUIRE(c.framing == 0);
    seen.insert({c.index, c.k});
  }
  REQUIRE(seen.size() == 6);
}

TEST_CASE("writhe bookkeeping") {
  for (const char* text : {"x^2 - y^2", "(x+y)*(x-y)*(y-1)", "x^2 - y^3"}) {
    auto res = analyze(text);
    Layout ly = layout_diagram(res.kd);
    int expected = 0;
    for (auto& lm : res.md.locals) expected += exponent_sum(lm.local);
    int non_closure = 0;
    for (auto& b : res.kd.blocks)
      if (b.kind != Block::Kind::closure) non_closure += exponent_sum(b.braid);
    REQUIRE(non_closure == expected);
    // with the closure included the total signed count cancels
    REQUIRE(layout_crossing_sign_sum(ly) == expected + exponent_sum(res.kd.blocks.back().braid));
  }
}

TEST_CASE("kirby json round trip") {
  for (const char* text : {"x^2 - y^2", "(x+y)*(x-y)*(y-1)", "x^3 + y^3 - 1"}) {
    auto res = analyze(text);
    Json doc = kirby_to_json(res.kd, text, 0, "deadbeef");
    REQUIRE(validate_kirby_json(doc));
    KirbyDiagram back = kirby_from_json(doc);
    REQUIRE(back == res.kd);
    Json doc2 = kirby_to_json(back, text, 0, "deadbeef");
    REQUIRE(doc.dump(2) == doc2.dump(2));
  }
}

TEST_CASE("svg rendering of an empty two-strand diagram") {
  KirbyDiagram kd;
  kd.n = 2;
  kd.blocks.push_back({Block::Kind::closure, -1, Braid(2)});
  std::string svg = emit_svg(kd);
  REQUIRE(svg.find("<svg") == 0);
  // two dotted closures: each lane contributes two cap paths and a return line
  REQUIRE(count_occurrences(svg, "class=\"lane\"") == 6);
  REQUIRE(count_occurrences(svg, "class=\"strand\"") == 0);
}

TEST_CASE("svg and tikz agree with the shared layout") {
  for (const char* text : {"x^2 - y^2", "(x+y)*(x-y)*(y-1)"}) {
    auto res = analyze(text);
    Layout ly = layout_diagram(res.kd);
    int crossings = 0, circles = 0;
    for (auto& it : ly.items) {
      if (it.kind == LayoutItem::Kind::crossing) ++crossings;
      if (it.kind == LayoutItem::Kind::circle) ++circles;
    }
    std::string svg = emit_svg(res.kd);
    std::string tikz = emit_tikz(res.kd);
    // every crossing renders an over-strand with white preaction in tikz
    REQUIRE(count_occurrences(tikz, "preaction={draw=white") == crossings);
    REQUIRE(count_occurrences(tikz, "ellipse (") == circles);
    REQUIRE(count_occurrences(svg, "<ellipse class=\"attach\"") == circles);
    REQUIRE(count_occurrences(svg, ">0</text>") == circles);
    // dotted closures: one per strand lane
    REQUIRE(count_occurrences(svg, "class=\"lane\"") == 3 * res.kd.n);
    REQUIRE(count_occurrences(tikz, "densely dashed") == 3 * res.kd.n);
    REQUIRE(svg.find("framing") == std::string::npos);  // labels are plain "0"
  }
}

TEST_CASE("deterministic rendering") {
  auto res = analyze("x^3 + y^3 - 1");
  REQUIRE(emit_svg(res.kd) == emit_svg(res.kd));
  REQUIRE(emit_tikz(res.kd) == emit_tikz(res.kd));
}

TEST_CASE("sign convention flips the crossing glyph") {
  KirbyDiagram pos, neg;
  pos.n = neg.n = 2;
  pos.blocks.push_back({Block::Kind::local, 0, Braid(2, {1})});
  pos.blocks.push_back({Block::Kind::closure, -1, Braid(2, {-1})});
  neg.blocks.push_back({Block::Kind::local, 0, Braid(2, {-1})});
  neg.blocks.push_back({Block::Kind::closure, -1, Braid(2, {1})});
  REQUIRE(emit_svg(pos) != emit_svg(neg));
  REQUIRE(emit_tikz(pos) != emit_tikz(neg));
}
