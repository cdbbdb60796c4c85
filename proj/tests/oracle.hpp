#pragma once
// Brute-force reference computations used to check the library. They
// enumerate edge subsets and vertex permutations directly and share no code
// with the optimised engines.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "hrw/hypergraph.hpp"
#include "hrw/rational.hpp"

namespace oracle {

using hrw::Edge;
using hrw::KGraph;
using hrw::Rational;

// Calls f(e, v) for every non-empty edge subset, with v = spanned vertices.
inline void for_each_edge_subset(const KGraph& g, const std::function<void(int, int, unsigned long long)>& f) {
  const int m = g.m();
  for (unsigned long long s = 1; s < (1ULL << m); ++s) {
    std::vector<char> seen(g.n(), 0);
    int v = 0, e = 0;
    for (int i = 0; i < m; ++i)
      if (s >> i & 1) {
        ++e;
        for (int x : g.edge(i))
          if (!seen[x]) { seen[x] = 1; ++v; }
      }
    f(e, v, s);
  }
}

inline Rational max_m(const KGraph& g) {
  Rational best(0);
  for_each_edge_subset(g, [&](int e, int v, unsigned long long) { best = std::max(best, Rational(e, v)); });
  return best;
}

inline Rational max_ar(const KGraph& g) {
  Rational best(0);
  for_each_edge_subset(g, [&](int e, int v, unsigned long long) { best = std::max(best, Rational(e, v - 1)); });
  return best;
}

inline Rational max_mk(const KGraph& g) {
  Rational best(0);
  const int k = g.k();
  for_each_edge_subset(g, [&](int e, int v, unsigned long long) {
    Rational d = v == k ? Rational(1, k) : Rational(e - 1, v - k);
    best = std::max(best, d);
  });
  return best;
}

inline Rational max_pair(const KGraph& h1, const Rational& mk2) {
  Rational best(0);
  for_each_edge_subset(h1, [&](int e, int v, unsigned long long) {
    best = std::max(best, Rational(e) / (Rational(v - h1.k()) + mk2.reciprocal()));
  });
  return best;
}

inline Rational min_lambda(const KGraph& g, const Rational& mk_pair) {
  bool have = false;
  Rational best;
  for_each_edge_subset(g, [&](int e, int v, unsigned long long) {
    Rational l = Rational(v) - Rational(e) / mk_pair;
    if (!have || l < best) best = l;
    have = true;
  });
  return best;
}

inline std::vector<Edge> permuted_edges(const KGraph& g, const std::vector<int>& perm) {
  std::vector<Edge> es;
  for (Edge e : g.edges()) {
    for (int& x : e) x = perm[x];
    std::sort(e.begin(), e.end());
    es.push_back(e);
  }
  std::sort(es.begin(), es.end());
  return es;
}

// Isomorphism by trying every vertex permutation.
inline bool brute_isomorphic(const KGraph& a, const KGraph& b) {
  if (a.k() != b.k() || a.n() != b.n() || a.m() != b.m()) return false;
  std::vector<int> perm(a.n());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permuted_edges(a, perm) == b.edges()) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline int automorphism_count(const KGraph& a) {
  std::vector<int> perm(a.n());
  std::iota(perm.begin(), perm.end(), 0);
  int c = 0;
  do {
    c += permuted_edges(a, perm) == a.edges();
  } while (std::next_permutation(perm.begin(), perm.end()));
  return c;
}

// Number of injective maps h -> g sending every edge of h to an edge of g.
inline long long embedding_count(const KGraph& h, const KGraph& g) {
  long long count = 0;
  std::vector<int> map(h.n(), -1);
  std::vector<char> used(g.n(), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == h.n()) {
      for (const Edge& e : h.edges()) {
        Edge f;
        for (int x : e) f.push_back(map[x]);
        std::sort(f.begin(), f.end());
        if (!g.has_edge(f)) return;
      }
      ++count;
      return;
    }
    for (int x = 0; x < g.n(); ++x) {
      if (used[x]) continue;
      used[x] = 1;
      map[i] = x;
      rec(i + 1);
      used[x] = 0;
    }
  };
  rec(0);
  return count;
}

// Distinct (edge set, vertex set) images of h in g, by checking every
// edge subset of the right size against h via permutations.
inline std::size_t copy_count(const KGraph& h, const KGraph& g) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  const int m = g.m(), eh = h.m();
  std::vector<char> pick(m, 0);
  if (eh > m) return 0;
  std::fill(pick.begin(), pick.begin() + eh, 1);
  bool has_isolated = h.min_degree() == 0;
  do {
    std::vector<int> ids;
    for (int i = 0; i < m; ++i)
      if (pick[i]) ids.push_back(i);
    KGraph sub = g.edge_subgraph(ids, true);
    if (has_isolated || sub.n() != h.n()) continue;
    if (brute_isomorphic(sub, h)) {
      std::vector<int> vs;
      for (int i : ids)
        for (int x : g.edge(i)) vs.push_back(x);
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      seen.insert({ids, vs});
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return seen.size();
}

inline KGraph random_graph(std::mt19937_64& rng, int k, int n, double p) {
  std::vector<Edge> es;
  std::bernoulli_distribution coin(p);
  std::vector<char> pick(n, 0);
  if (k > n) return KGraph(k, n, {});
  std::fill(pick.begin(), pick.begin() + k, 1);
  do {
    if (!coin(rng)) continue;
    Edge e;
    for (int i = 0; i < n; ++i)
      if (pick[i]) e.push_back(i);
    es.push_back(e);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return KGraph(k, n, es);
}

// Random graph with exactly m edges (or fewer if n is too small).
inline KGraph random_graph_m(std::mt19937_64& rng, int k, int n, int m) {
  std::vector<Edge> all;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + k, 1);
  do {
    Edge e;
    for (int i = 0; i < n; ++i)
      if (pick[i]) e.push_back(i);
    all.push_back(e);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::shuffle(all.begin(), all.end(), rng);
  if (static_cast<int>(all.size()) > m) all.resize(m);
  return KGraph(k, n, all);
}

// Edge-id sets of all subgraphs of g isomorphic to h (h without isolated
// vertices), found by testing every edge subset of size e(h).
inline std::vector<std::vector<int>> copy_edge_sets(const KGraph& h, const KGraph& g) {
  std::vector<std::vector<int>> out;
  const int m = g.m(), eh = h.m();
  if (eh > m) return out;
  std::vector<char> pick(m, 0);
  std::fill(pick.begin(), pick.begin() + eh, 1);
  do {
    std::vector<int> ids;
    for (int i = 0; i < m; ++i)
      if (pick[i]) ids.push_back(i);
    KGraph sub = g.edge_subgraph(ids, true);
    if (sub.n() == h.n() && brute_isomorphic(sub, h)) out.push_back(ids);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

inline bool meets_exactly(const std::vector<int>& a, const std::vector<int>& b, int e) {
  std::vector<int> meet;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
  return meet.size() == 1 && meet[0] == e;
}

// Open edges straight from the definitions: strict uses L*, equal uses pairs.
inline std::vector<int> open_edges(const KGraph& g, const KGraph& h1, const KGraph& h2, bool strict) {
  auto rs = copy_edge_sets(h1, g), ls = copy_edge_sets(h2, g);
  auto closes = [&](const std::vector<int>& l, int e) {
    for (const auto& r : rs)
      if (meets_exactly(l, r, e)) return true;
    return false;
  };
  std::vector<char> closed(g.m(), 0);
  for (const auto& l : ls) {
    if (strict) {
      bool star = std::all_of(l.begin(), l.end(), [&](int e) { return closes(l, e); });
      if (star)
        for (int e : l) closed[e] = 1;
    } else {
      for (int e : l)
        if (closes(l, e)) closed[e] = 1;
    }
  }
  std::vector<int> out;
  for (int e = 0; e < g.m(); ++e)
    if (!closed[e]) out.push_back(e);
  return out;
}

}  // namespace oracle
