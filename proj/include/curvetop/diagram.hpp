#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "curvetop/braid.hpp"
#include "curvetop/errors.hpp"
#include "curvetop/monodromy.hpp"

namespace curvetop {

/// One braid block of the Kirby diagram cycle.
struct Block {
  enum class Kind { transport_out, local, transport_back, closure };
  Kind kind;
  int index = -1;  // critical value index; -1 for the closure block
  Braid braid;
};

inline std::string block_kind_name(Block::Kind k) {
  switch (k) {
    case Block::Kind::transport_out: return "transport_out";
    case Block::Kind::local: return "local";
    case Block::Kind::transport_back: return "transport_back";
    default: return "closure";
  }
}

/// A 0-framed attaching circle placed immediately before its local block,
/// encircling the k-th and (k+1)-th collapsing strands of the cluster.
struct PlacedCircle {
  int index = 0;  // host local block's critical value index
  int k = 0;      // 1-based pair within the collapse cluster
  int framing = 0;
  int lane_a = 0;  // absolute 0-based lanes of the encircled pair; a < b but
  int lane_b = 0;  // not necessarily adjacent (a far strand may interleave)
  std::string style = "encircles the two strands immediately before the local braid block";
};

/// Combinatorial Kirby diagram: dotted 1-handle circles are the closed-up
/// strand lanes around the block cycle, 2-handle circles ride just before
/// each local block. The closure block inverts the accumulated braid, so the
/// total permutation of the cycle is the identity and the lanes close into
/// the trivial n-component link.
struct KirbyDiagram {
  int n = 0;
  std::vector<Block> blocks;
  std::vector<PlacedCircle> attaching;
  bool closed = true;

  friend bool operator==(const KirbyDiagram& a, const KirbyDiagram& b) {
    if (a.n != b.n || a.blocks.size() != b.blocks.size() ||
        a.attaching.size() != b.attaching.size())
      return false;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
      const Block& x = a.blocks[i];
      const Block& y = b.blocks[i];
      if (x.kind != y.kind || x.index != y.index || x.braid.word != y.braid.word) return false;
    }
    for (std::size_t i = 0; i < a.attaching.size(); ++i) {
      const PlacedCircle& x = a.attaching[i];
      const PlacedCircle& y = b.attaching[i];
      if (x.index != y.index || x.k != y.k || x.framing != y.framing || x.lane_a != y.lane_a ||
          x.lane_b != y.lane_b)
        return false;
    }
    return true;
  }
};

inline KirbyDiagram build_diagram(const MonodromyData& md) {
  KirbyDiagram kd;
  kd.n = md.n;
  Braid acc(md.n);
  for (int idx : md.arcs.order) {
    const LocalMonodromy& lm = md.at(idx);
    kd.blocks.push_back({Block::Kind::transport_out, idx, lm.transport});
    kd.blocks.push_back({Block::Kind::local, idx, lm.local});
    kd.blocks.push_back({Block::Kind::transport_back, idx, lm.transport.inverse()});
    acc = compose(acc, compose(lm.transport, compose(lm.local, lm.transport.inverse())));
    for (int k = 1; k <= lm.m - 1; ++k) {
      PlacedCircle c;
      c.index = idx;
      c.k = k;
      c.lane_a = lm.collapse_positions[static_cast<std::size_t>(k) - 1];
      c.lane_b = lm.collapse_positions[static_cast<std::size_t>(k)];
      kd.attaching.push_back(c);
    }
  }
  // Closing block: cancels the accumulated product, so the strand ends join
  // into the trivial n-component link of dotted circles.
  kd.blocks.push_back({Block::Kind::closure, -1, acc.inverse().normalized()});

  Braid total(md.n);
  for (const Block& b : kd.blocks) total = compose(total, b.braid);
  if (!is_identity_permutation(permutation(total)))
    throw PermutationNotIdentity("diagram cycle does not close into n dotted circles");
  return kd;
}

// ---------------------------------------------------------------------------
// Layout shared by the SVG and TikZ backends.
// ---------------------------------------------------------------------------

struct LayoutItem {
  enum class Kind { separator, crossing, circle } kind;
  int column = 0;
  // separator
  Block::Kind block_kind = Block::Kind::local;
  int block_index = -1;
  // crossing: swaps lanes (lane, lane+1); positive = ccw half twist
  int lane = 0;
  int sign = 0;
  // circle: encircles lanes lane..lane_b, label "0"
  int lane_b = 0;
  int circle_index = 0;
};

struct Layout {
  int n = 0;
  int columns = 0;
  std::vector<LayoutItem> items;
  std::vector<std::vector<int>> lane_of_strand;  // per column boundary, size columns+1
};

inline Layout layout_diagram(const KirbyDiagram& kd) {
  Layout ly;
  ly.n = kd.n;
  std::vector<int> pos(static_cast<std::size_t>(kd.n));
  for (int i = 0; i < kd.n; ++i) pos[static_cast<std::size_t>(i)] = i;
  ly.lane_of_strand.push_back(pos);

  int col = 0;
  int circle_counter = 0;
  for (const Block& b : kd.blocks) {
    if (b.kind == Block::Kind::local) {
      for (const PlacedCircle& c : kd.attaching)
        if (c.index == b.index) {
          LayoutItem it;
          it.kind = LayoutItem::Kind::circle;
          it.column = col;
          it.lane = c.lane_a;
          it.lane_b = c.lane_b;
          it.circle_index = circle_counter++;
          ly.items.push_back(it);
          ++col;
          ly.lane_of_strand.push_back(pos);
        }
    }
    LayoutItem sep;
    sep.kind = LayoutItem::Kind::separator;
    sep.column = col;
    sep.block_kind = b.kind;
    sep.block_index = b.index;
    ly.items.push_back(sep);
    for (int letter : b.braid.word) {
      LayoutItem it;
      it.kind = LayoutItem::Kind::crossing;
      it.column = col;
      it.lane = std::abs(letter) - 1;
      it.sign = letter > 0 ? 1 : -1;
      ly.items.push_back(it);
      std::swap(pos[static_cast<std::size_t>(it.lane)], pos[static_cast<std::size_t>(it.lane) + 1]);
      ++col;
      ly.lane_of_strand.push_back(pos);
    }
  }
  ly.columns = col;
  return ly;
}

inline int layout_crossing_sign_sum(const Layout& ly) {
  int s = 0;
  for (const LayoutItem& it : ly.items)
    if (it.kind == LayoutItem::Kind::crossing) s += it.sign;
  return s;
}

// ---------------------------------------------------------------------------
// Rendering backends.
// ---------------------------------------------------------------------------

struct RenderStyle {
  double lane_spacing = 28.0;
  double column_width = 26.0;
  double margin = 60.0;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

/// Deterministic SVG: n horizontal lanes, crossing glyphs with an over/under
/// gap, dotted lane closures left and right, attaching circles with their 0
/// framing label.
inline std::string emit_svg(const KirbyDiagram& kd, const RenderStyle& style = {}) {
  Layout ly = layout_diagram(kd);
  double w = style.margin * 2 + ly.columns * style.column_width;
  double h = style.margin * 2 + (kd.n - 1) * style.lane_spacing + 40.0;
  auto lane_y = [&](double lane) { return style.margin + 20.0 + lane * style.lane_spacing; };
  auto col_x = [&](double c) { return style.margin + c * style.column_width; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(w) + "\" height=\"" +
       detail::fmt(h) + "\" viewBox=\"0 0 " + detail::fmt(w) + " " + detail::fmt(h) + "\">\n";
  s += "<style>.lane{stroke:#222;fill:none;stroke-width:1.4;stroke-dasharray:5 3}"
       ".strand{stroke:#222;fill:none;stroke-width:1.4}"
       ".attach{stroke:#0b61c4;fill:none;stroke-width:1.6}"
       ".label{font:11px monospace;fill:#0b61c4}"
       ".blocklabel{font:10px monospace;fill:#888}</style>\n";

  // Lane runs between crossings, drawn column by column.
  for (int c = 0; c < ly.columns; ++c) {
    // Which lanes cross in this column?
    int cross_lane = -1, cross_sign = 0;
    for (const LayoutItem& it : ly.items)
      if (it.kind == LayoutItem::Kind::crossing && it.column == c) {
        cross_lane = it.lane;
        cross_sign = it.sign;
      }
    bool circle_col = false;
    for (const LayoutItem& it : ly.items)
      if (it.kind == LayoutItem::Kind::circle && it.column == c) circle_col = true;
    for (int lane = 0; lane < kd.n; ++lane) {
      double x0 = col_x(c), x1 = col_x(c + 1), y = lane_y(lane);
      if (lane == cross_lane || (cross_lane >= 0 && lane == cross_lane + 1)) continue;
      s += "<line class=\"strand\" x1=\"" + detail::fmt(x0) + "\" y1=\"" + detail::fmt(y) +
           "\" x2=\"" + detail::fmt(x1) + "\" y2=\"" + detail::fmt(y) + "\"/>\n";
    }
    if (cross_lane >= 0) {
      double x0 = col_x(c), x1 = col_x(c + 1);
      double ya = lane_y(cross_lane), yb = lane_y(cross_lane + 1);
      // Positive crossing: the strand moving down-left-to-up... by our
      // convention the strand going from the upper lane to the lower lane
      // passes in front for sign +1.
      std::string over_d = "M" + detail::fmt(x0) + " " + detail::fmt(ya) + " L" + detail::fmt(x1) +
                           " " + detail::fmt(yb);
      std::string under_a = "M" + detail::fmt(x0) + " " + detail::fmt(yb) + " L" +
                            detail::fmt(0.5 * (x0 + x1) - 4.0) + " " +
                            detail::fmt(0.5 * (ya + yb) + 2.0);
      std::string under_b = "M" + detail::fmt(0.5 * (x0 + x1) + 4.0) + " " +
                            detail::fmt(0.5 * (ya + yb) - 2.0) + " L" + detail::fmt(x1) + " " +
                            detail::fmt(ya);
      if (cross_sign < 0) {
        std::swap(over_d, under_a);
        over_d = "M" + detail::fmt(x0) + " " + detail::fmt(yb) + " L" + detail::fmt(x1) + " " +
                 detail::fmt(ya);
        under_a = "M" + detail::fmt(x0) + " " + detail::fmt(ya) + " L" +
                  detail::fmt(0.5 * (x0 + x1) - 4.0) + " " + detail::fmt(0.5 * (ya + yb) - 2.0);
        under_b = "M" + detail::fmt(0.5 * (x0 + x1) + 4.0) + " " +
                  detail::fmt(0.5 * (ya + yb) + 2.0) + " L" + detail::fmt(x1) + " " +
                  detail::fmt(yb);
      }
      s += "<path class=\"strand\" d=\"" + under_a + "\"/>\n";
      s += "<path class=\"strand\" d=\"" + under_b + "\"/>\n";
      s += "<path class=\"strand\" d=\"" + over_d + "\"/>\n";
    }
    if (circle_col) {
      for (const LayoutItem& it : ly.items)
        if (it.kind == LayoutItem::Kind::circle && it.column == c) {
          double cx = 0.5 * (col_x(c) + col_x(c + 1));
          double cy = 0.5 * (lane_y(it.lane) + lane_y(it.lane_b));
          double ry = 0.5 * (lane_y(it.lane_b) - lane_y(it.lane)) + 0.22 * style.lane_spacing;
          s += "<ellipse class=\"attach\" cx=\"" + detail::fmt(cx) + "\" cy=\"" + detail::fmt(cy) +
               "\" rx=\"7.00\" ry=\"" + detail::fmt(ry) + "\"/>\n";
          s += "<text class=\"label\" x=\"" + detail::fmt(cx + 8.0) + "\" y=\"" +
               detail::fmt(cy - ry - 2.0) + "\">0</text>\n";
        }
    }
  }

  // Block labels under the lanes.
  for (const LayoutItem& it : ly.items)
    if (it.kind == LayoutItem::Kind::separator) {
      std::string name = block_kind_name(it.block_kind);
      if (it.block_index >= 0) name += " " + std::to_string(it.block_index);
      s += "<text class=\"blocklabel\" x=\"" + detail::fmt(col_x(it.column) + 1.0) + "\" y=\"" +
           detail::fmt(lane_y(kd.n - 1) + 26.0) + "\">" + name + "</text>\n";
    }

  // Dotted closures: lane ends joined left and right (trivial n-link).
  for (int lane = 0; lane < kd.n; ++lane) {
    double y = lane_y(lane);
    double xl = col_x(0), xr = col_x(ly.columns);
    double bulge = 16.0 + lane * 7.0;
    s += "<path class=\"lane\" d=\"M" + detail::fmt(xl) + " " + detail::fmt(y) + " C" +
         detail::fmt(xl - bulge - 14.0) + " " + detail::fmt(y) + " " +
         detail::fmt(xl - bulge - 14.0) + " " + detail::fmt(y - 14.0 - lane * 2.0) + " " +
         detail::fmt(xl) + " " + detail::fmt(y - 14.0 - lane * 2.0) + "\"/>\n";
    s += "<path class=\"lane\" d=\"M" + detail::fmt(xr) + " " + detail::fmt(y) + " C" +
         detail::fmt(xr + bulge + 14.0) + " " + detail::fmt(y) + " " +
         detail::fmt(xr + bulge + 14.0) + " " + detail::fmt(y - 14.0 - lane * 2.0) + " " +
         detail::fmt(xr) + " " + detail::fmt(y - 14.0 - lane * 2.0) + "\"/>\n";
    s += "<line class=\"lane\" x1=\"" + detail::fmt(xl) + "\" y1=\"" +
         detail::fmt(y - 14.0 - lane * 2.0) + "\" x2=\"" + detail::fmt(xr) + "\" y2=\"" +
         detail::fmt(y - 14.0 - lane * 2.0) + "\"/>\n";
  }

  s += "</svg>\n";
  return s;
}

/// TikZ backend over the same layout.
inline std::string emit_tikz(const KirbyDiagram& kd, const RenderStyle& style = {}) {
  Layout ly = layout_diagram(kd);
  double sx = style.column_width / 28.0, sy = style.lane_spacing / 28.0;
  auto P = [&](double c, double lane) {
    return "(" + detail::fmt(c * sx) + "," + detail::fmt(-lane * sy) + ")";
  };
  std::string s;
  s += "\\begin{tikzpicture}[line width=0.8pt]\n";
  for (int c = 0; c < ly.columns; ++c) {
    int cross_lane = -1, cross_sign = 0;
    for (const LayoutItem& it : ly.items)
      if (it.kind == LayoutItem::Kind::crossing && it.column == c) {
        cross_lane = it.lane;
        cross_sign = it.sign;
      }
    for (int lane = 0; lane < kd.n; ++lane) {
      if (lane == cross_lane || (cross_lane >= 0 && lane == cross_lane + 1)) continue;
      s += "\\draw " + P(c, lane) + " -- " + P(c + 1, lane) + ";\n";
    }
    if (cross_lane >= 0) {
      int a = cross_lane, b = cross_lane + 1;
      if (cross_sign > 0) {
        s += "\\draw " + P(c, b) + " -- " + P(c + 1, a) + ";\n";
        s += "\\draw[preaction={draw=white,line width=4pt}] " + P(c, a) + " -- " + P(c + 1, b) +
             ";\n";
      } else {
        s += "\\draw " + P(c, a) + " -- " + P(c + 1, b) + ";\n";
        s += "\\draw[preaction={draw=white,line width=4pt}] " + P(c, b) + " -- " + P(c + 1, a) +
             ";\n";
      }
    }
    for (const LayoutItem& it : ly.items)
      if (it.kind == LayoutItem::Kind::circle && it.column == c) {
        double cx = (c + 0.5) * sx, cy = -0.5 * (it.lane + it.lane_b) * sy;
        double ry = (0.5 * (it.lane_b - it.lane) + 0.22) * sy;
        s += "\\draw[blue] (" + detail::fmt(cx) + "," + detail::fmt(cy) + ") ellipse (" +
             detail::fmt(0.22 * sx) + " and " + detail::fmt(ry) + ");\n";
        s += "\\node[blue,font=\\scriptsize] at (" + detail::fmt(cx + 0.35 * sx) + "," +
             detail::fmt(cy + ry + 0.3 * sy) + ") {$0$};\n";
      }
  }
  for (int lane = 0; lane < kd.n; ++lane) {
    double y = -lane * sy, yy = y + (0.5 + lane * 0.08) * sy;
    s += "\\draw[densely dashed] " + P(0, lane) + " .. controls (" + detail::fmt(-0.9 * sx) + "," +
         detail::fmt(y) + ") and (" + detail::fmt(-0.9 * sx) + "," + detail::fmt(yy) + ") .. (0," +
         detail::fmt(yy) + ");\n";
    s += "\\draw[densely dashed] " + P(ly.columns, lane) + " .. controls (" +
         detail::fmt((ly.columns + 0.9) * sx) + "," + detail::fmt(y) + ") and (" +
         detail::fmt((ly.columns + 0.9) * sx) + "," + detail::fmt(yy) + ") .. (" +
         detail::fmt(ly.columns * sx) + "," + detail::fmt(yy) + ");\n";
    s += "\\draw[densely dashed] (0," + detail::fmt(yy) + ") -- (" + detail::fmt(ly.columns * sx) +
         "," + detail::fmt(yy) + ");\n";
  }
  s += "\\end{tikzpicture}\n";
  return s;
}

}  // namespace curvetop
