#include <algorithm>
#include <set>

#include "hrw/hypergraph.hpp"

namespace hrw {

namespace detail {

EmbeddingPlan plan_embedding(const KGraph& h) {
  EmbeddingPlan plan;
  const int n = h.n();
  std::vector<int> pos(n, -1);
  std::vector<int> links(n, 0);  // edges shared with already ordered vertices
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (pos[v] >= 0) continue;
      if (pick < 0 || links[v] > links[pick] || (links[v] == links[pick] && h.degree(v) > h.degree(pick))) pick = v;
    }
    pos[pick] = step;
    plan.order.push_back(pick);
    for (int ei : h.incidence()[pick])
      for (Vertex u : h.edge(ei))
        if (pos[u] < 0) ++links[u];
  }
  plan.anchor.assign(n, -1);
  plan.check.assign(n, {});
  for (int i = 0; i < n; ++i) {
    Vertex u = plan.order[i];
    for (int ei : h.incidence()[u])
      for (Vertex w : h.edge(ei))
        if (w != u && pos[w] < i && plan.anchor[i] < 0) plan.anchor[i] = w;
  }
  for (int ei = 0; ei < h.m(); ++ei) {
    int last = 0;
    for (Vertex v : h.edge(ei)) last = std::max(last, pos[v]);
    plan.check[last].push_back(ei);
  }
  return plan;
}

}  // namespace detail

namespace {

void check_pattern(const KGraph& h, const KGraph& g) {
  if (h.k() != g.k()) throw std::invalid_argument("copies_of: uniformity mismatch");
  if (h.m() == 0) throw std::invalid_argument("copies_of: empty pattern");
}

}  // namespace

std::vector<Copy> copies_of(const KGraph& h, const KGraph& g, int pattern_id) {
  check_pattern(h, g);
  std::set<Copy> seen;
  std::vector<Copy> out;
  Edge scratch;
  for_each_embedding(h, g, [&](const std::vector<Vertex>& map) {
    Copy c;
    c.pattern = pattern_id;
    c.map = map;
    for (const Edge& e : h.edges()) {
      scratch.clear();
      for (Vertex p : e) scratch.push_back(map[p]);
      std::sort(scratch.begin(), scratch.end());
      c.edges.push_back(g.edge_index(scratch));
    }
    std::sort(c.edges.begin(), c.edges.end());
    c.vertices = map;
    std::sort(c.vertices.begin(), c.vertices.end());
    if (seen.insert(c).second) out.push_back(std::move(c));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_copy(const KGraph& h, const KGraph& g) {
  check_pattern(h, g);
  bool found = false;
  for_each_embedding(h, g, [&](const std::vector<Vertex>&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace hrw
