#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace curvetop {

/// Single-linkage clustering of points in the plane with a scale-free cut:
/// the dendrogram is cut at the largest ratio jump between consecutive merge
/// distances, provided that ratio reaches `ratio`. If no jump qualifies, all
/// points form either one cluster (everything tiny against `scale`) or n
/// singletons.
struct Clustering {
  std::vector<std::vector<int>> groups;
  double internal_max = 0.0;  // largest merge distance applied
  double external_min = 0.0;  // smallest merge distance rejected (0 if none)
};

inline Clustering single_linkage_clusters(const std::vector<std::complex<double>>& pts,
                                          double ratio, double scale) {
  int n = static_cast<int>(pts.size());
  Clustering out;
  if (n == 0) return out;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };

  struct Edge {
    double d;
    int a, b;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({std::abs(pts[i] - pts[j]), i, j});
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    if (x.d != y.d) return x.d < y.d;
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });

  // Single-linkage merge distances are the MST edge weights in order.
  std::vector<double> merges;
  std::vector<Edge> mst;
  for (auto& e : edges) {
    int ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      merges.push_back(e.d);
      mst.push_back(e);
    }
  }

  // Pick the cut: largest qualifying ratio jump between consecutive merges.
  int cut = static_cast<int>(merges.size());  // default: everything merged
  double best = 0.0;
  for (std::size_t k = 0; k + 1 < merges.size(); ++k) {
    double lo = std::max(merges[k], 1e-300);
    double r = merges[k + 1] / lo;
    if (r >= ratio && r > best) {
      best = r;
      cut = static_cast<int>(k) + 1;
    }
  }
  if (cut == static_cast<int>(merges.size()) && !merges.empty()) {
    // No qualifying jump: either an all-collapse cluster or no cluster at all.
    if (!(merges.back() <= scale / ratio)) cut = 0;
  }

  std::iota(parent.begin(), parent.end(), 0);
  for (int k = 0; k < cut; ++k) parent[find(mst[static_cast<std::size_t>(k)].a)] =
      find(mst[static_cast<std::size_t>(k)].b);

  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_root[static_cast<std::size_t>(find(i))].push_back(i);
  for (auto& g : by_root)
    if (!g.empty()) out.groups.push_back(g);
  std::sort(out.groups.begin(), out.groups.end());
  out.internal_max = cut > 0 ? merges[static_cast<std::size_t>(cut) - 1] : 0.0;
  out.external_min = cut < static_cast<int>(merges.size()) ? merges[static_cast<std::size_t>(cut)] : 0.0;
  return out;
}

}  // namespace curvetop
