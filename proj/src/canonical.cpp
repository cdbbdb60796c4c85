// Canonical labelling by individualisation-refinement.
//
// Refinement splits cells by the multiset of cell-tuples of the edges
// through each vertex until the partition is equitable. The search tree
// individualises vertices of the first non-singleton cell; the canonical
// form is the lexicographically least relabelled edge list over all leaves.
// Automorphisms found when two leaves coincide prune the tree (orbit
// pruning at each node, plus a jump back to the divergence point).

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

#include "hrw/hypergraph.hpp"

namespace hrw {

namespace {

using Cells = std::vector<std::vector<Vertex>>;

class Canoniser {
 public:
  explicit Canoniser(const KGraph& g) : g_(g), n_(g.n()) {}

  CanonicalForm run() {
    CanonicalForm cf;
    cf.k = g_.k();
    cf.n = n_;
    if (n_ == 0) return cf;
    Cells root(1);
    root[0].resize(n_);
    std::iota(root[0].begin(), root[0].end(), 0);
    std::vector<Vertex> prefix;
    dfs(root, prefix);
    cf.edges = best_edges_;
    cf.labelling = best_lab_;
    cf.generators = gens_;
    return cf;
  }

 private:
  void refine(Cells& cells) const {
    std::vector<int> cell_of(n_);
    std::vector<std::vector<int>> sig(n_);
    std::vector<std::vector<int>> tuples;
    for (;;) {
      for (std::size_t c = 0; c < cells.size(); ++c)
        for (Vertex v : cells[c]) cell_of[v] = static_cast<int>(c);
      for (Vertex v = 0; v < n_; ++v) {
        tuples.clear();
        for (int ei : g_.incidence()[v]) {
          std::vector<int> t;
          for (Vertex u : g_.edge(ei))
            if (u != v) t.push_back(cell_of[u]);
          std::sort(t.begin(), t.end());
          tuples.push_back(std::move(t));
        }
        std::sort(tuples.begin(), tuples.end());
        sig[v].clear();
        for (auto& t : tuples) sig[v].insert(sig[v].end(), t.begin(), t.end());
        sig[v].push_back(static_cast<int>(tuples.size()));
      }
      Cells next;
      next.reserve(cells.size());
      for (auto& cell : cells) {
        if (cell.size() == 1) { next.push_back(cell); continue; }
        std::vector<Vertex> s = cell;
        std::stable_sort(s.begin(), s.end(), [&](Vertex a, Vertex b) { return sig[a] < sig[b]; });
        std::size_t i = 0;
        while (i < s.size()) {
          std::size_t j = i + 1;
          while (j < s.size() && sig[s[j]] == sig[s[i]]) ++j;
          std::vector<Vertex> part(s.begin() + i, s.begin() + j);
          std::sort(part.begin(), part.end());
          next.push_back(std::move(part));
          i = j;
        }
      }
      bool changed = next.size() != cells.size();
      cells = std::move(next);
      if (!changed) return;
    }
  }

  std::vector<Vertex> orbits_fixing(const std::vector<Vertex>& prefix) const {
    std::vector<Vertex> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gen : gens_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](Vertex v) { return gen[v] == v; });
      if (!fixes) continue;
      for (Vertex v = 0; v < n_; ++v) {
        Vertex a = find(v), b = find(gen[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Vertex v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  static std::size_t common_prefix(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
  }

  void add_generator(const std::vector<Vertex>& ref_lab, const std::vector<Vertex>& lab) {
    std::vector<Vertex> inv(n_);
    for (Vertex v = 0; v < n_; ++v) inv[ref_lab[v]] = v;
    std::vector<Vertex> gen(n_);
    bool identity = true;
    for (Vertex v = 0; v < n_; ++v) {
      gen[v] = inv[lab[v]];
      identity = identity && gen[v] == v;
    }
    if (!identity && std::find(gens_.begin(), gens_.end(), gen) == gens_.end()) gens_.push_back(std::move(gen));
  }

  // Returns the depth to resume at; deeper frames unwind until they reach it.
  std::size_t leaf(const Cells& cells, const std::vector<Vertex>& prefix) {
    std::vector<Vertex> lab(n_);
    for (std::size_t c = 0; c < cells.size(); ++c) lab[cells[c][0]] = static_cast<Vertex>(c);
    std::vector<Edge> es;
    es.reserve(g_.m());
    for (const Edge& e : g_.edges()) {
      Edge f;
      f.reserve(e.size());
      for (Vertex v : e) f.push_back(lab[v]);
      std::sort(f.begin(), f.end());
      es.push_back(std::move(f));
    }
    std::sort(es.begin(), es.end());
    if (!have_first_) {
      have_first_ = true;
      first_edges_ = best_edges_ = es;
      first_lab_ = best_lab_ = lab;
      first_path_ = best_path_ = prefix;
      return prefix.size();
    }
    if (es == first_edges_) {
      add_generator(first_lab_, lab);
      return common_prefix(prefix, first_path_);
    }
    if (es < best_edges_) {
      best_edges_ = std::move(es);
      best_lab_ = lab;
      best_path_ = prefix;
      return prefix.size();
    }
    if (es == best_edges_) {
      add_generator(best_lab_, lab);
      return common_prefix(prefix, best_path_);
    }
    return prefix.size();
  }

  std::size_t dfs(Cells cells, std::vector<Vertex>& prefix) {
    refine(cells);
    if (cells.size() == static_cast<std::size_t>(n_)) return leaf(cells, prefix);
    std::size_t target = 0;
    while (cells[target].size() == 1) ++target;
    const std::vector<Vertex> cand = cells[target];
    std::vector<Vertex> explored;
    const std::size_t depth = prefix.size();
    for (Vertex u : cand) {
      if (!explored.empty()) {
        std::vector<Vertex> orb = orbits_fixing(prefix);
        bool same = std::any_of(explored.begin(), explored.end(), [&](Vertex w) { return orb[w] == orb[u]; });
        if (same) continue;
      }
      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != target) { child.push_back(cells[c]); continue; }
        child.push_back({u});
        std::vector<Vertex> rest;
        for (Vertex w : cells[c])
          if (w != u) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      prefix.push_back(u);
      std::size_t resume = dfs(std::move(child), prefix);
      prefix.pop_back();
      explored.push_back(u);
      if (resume < depth) return resume;
    }
    return depth;
  }

  const KGraph& g_;
  const int n_;
  bool have_first_ = false;
  std::vector<Edge> first_edges_, best_edges_;
  std::vector<Vertex> first_lab_, best_lab_;
  std::vector<Vertex> first_path_, best_path_;
  std::vector<std::vector<Vertex>> gens_;
};

std::uint64_t fnv(const CanonicalForm& cf) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(cf.k);
  mix(cf.n);
  mix(cf.edges.size());
  for (const Edge& e : cf.edges)
    for (Vertex v : e) mix(static_cast<std::uint64_t>(v));
  return h;
}

}  // namespace

CanonicalForm canonical_form(const KGraph& g) {
  CanonicalForm cf = Canoniser(g).run();
  cf.digest = fnv(cf);
  return cf;
}

bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.n != b.n) return a.n < b.n;
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  return a.edges < b.edges;
}

std::string CanonicalForm::digest_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

bool isomorphic(const KGraph& a, const KGraph& b) {
  if (a.k() != b.k() || a.n() != b.n() || a.m() != b.m()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::vector<Vertex> automorphism_orbits(const CanonicalForm& cf, int n) {
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& gen : cf.generators)
    for (Vertex v = 0; v < n; ++v) {
      Vertex a = find(v), b = find(gen[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  for (Vertex v = 0; v < n; ++v) parent[v] = find(v);
  return parent;
}

}  // namespace hrw

namespace hrw {

std::vector<KGraph> all_graphs(int k, int n, int max_edges) {
  std::vector<Edge> universe = gen::complete(n, k).edges();
  if (max_edges < 0 || max_edges > static_cast<int>(universe.size())) max_edges = static_cast<int>(universe.size());
  std::vector<KGraph> out;
  std::vector<KGraph> level{KGraph(k, n, {})};
  out.push_back(level.front());
  for (int e = 1; e <= max_edges; ++e) {
    std::set<std::vector<Edge>> seen;
    std::vector<KGraph> next;
    for (const KGraph& g : level)
      for (const Edge& u : universe) {
        if (g.has_edge(u)) continue;
        CanonicalForm cf = canonical_form(g.with_edges({u}, n));
        if (seen.insert(cf.edges).second) next.push_back(cf.graph());
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace hrw
