#pragma once
// Backtracking embedding search shared by copy enumeration and the tests.

#include <algorithm>
#include <functional>
#include <vector>

namespace hrw {

namespace detail {

struct EmbeddingPlan {
  std::vector<Vertex> order;               // pattern vertices in assignment order
  std::vector<int> anchor;                 // earlier pattern vertex sharing an edge, or -1
  std::vector<std::vector<int>> check;     // pattern edges completed at each position
};

EmbeddingPlan plan_embedding(const KGraph& h);

}  // namespace detail

// f(map) returns true to continue the search, false to stop it.
template <class F>
void for_each_embedding(const KGraph& h, const KGraph& g, F&& f) {
  if (h.n() > g.n()) return;
  const detail::EmbeddingPlan plan = detail::plan_embedding(h);
  std::vector<std::vector<Vertex>> nbrs(g.n());
  for (Vertex v = 0; v < g.n(); ++v) nbrs[v] = g.neighbours(v);
  std::vector<Vertex> map(h.n(), -1);
  std::vector<char> used(g.n(), 0);
  std::vector<Vertex> all(g.n());
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  Edge scratch;
  bool stop = false;

  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == plan.order.size()) {
      if (!f(static_cast<const std::vector<Vertex>&>(map))) stop = true;
      return;
    }
    const Vertex u = plan.order[pos];
    const std::vector<Vertex>& cand = plan.anchor[pos] >= 0 ? nbrs[map[plan.anchor[pos]]] : all;
    for (Vertex x : cand) {
      if (used[x] || g.degree(x) < h.degree(u)) continue;
      map[u] = x;
      bool ok = true;
      for (int ei : plan.check[pos]) {
        scratch.clear();
        for (Vertex p : h.edge(ei)) scratch.push_back(map[p]);
        std::sort(scratch.begin(), scratch.end());
        if (!g.has_edge(scratch)) { ok = false; break; }
      }
      if (ok) {
        used[x] = 1;
        rec(pos + 1);
        used[x] = 0;
      }
      map[u] = -1;
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace hrw
