#include "hrw/decompose.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "hrw/closure.hpp"
#include "hrw/density.hpp"

namespace hrw {

std::vector<int> Decomposition::part_of_edge(int m) const {
  std::vector<int> out(m, -1);
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int e : parts[p]) out.at(e) = static_cast<int>(p);
  return out;
}

std::string Decomposition::serialise(int m) const {
  std::ostringstream os;
  const std::vector<int> part = part_of_edge(m);
  for (int e = 0; e < m; ++e) os << e << ' ' << part[e] << '\n';
  return os.str();
}

namespace {

// F u {y} has a vertex set X with e(X) >= |X|; F is assumed independent, so
// any such X contains y and the check is a single closure forced onto y.
bool dependent_with(const KGraph& g, const std::vector<int>& f, int y) {
  std::vector<int> ids = f;
  ids.push_back(y);
  const KGraph sub = g.edge_subgraph(ids, false);
  return max_closure(sub, 1, 1, g.edge(y)).value >= 0;
}

std::vector<int> without(const std::vector<int>& f, int z) {
  std::vector<int> out;
  out.reserve(f.size());
  for (int e : f)
    if (e != z) out.push_back(e);
  return out;
}

std::int64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::int64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

// Min-degree peeling order; degrees count edges whose vertices are all
// still present. Ties go to the smallest id.
std::vector<Vertex> peeling_order(const KGraph& g) {
  const int n = g.n();
  std::vector<int> alive_edges(g.m(), 1);
  std::vector<int> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<char> gone(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
    gone[best] = 1;
    order.push_back(best);
    for (int e : g.incidence()[best]) {
      if (!alive_edges[e]) continue;
      alive_edges[e] = 0;
      for (Vertex u : g.edge(e)) --deg[u];
    }
  }
  return order;
}

// Edges containing v whose other vertices come later in the order.
std::vector<std::vector<int>> back_edges(const KGraph& g, const std::vector<Vertex>& order) {
  std::vector<int> pos(g.n());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> out(g.n());
  for (int e = 0; e < g.m(); ++e) {
    Vertex first = g.edge(e)[0];
    for (Vertex u : g.edge(e))
      if (pos[u] < pos[first]) first = u;
    out[first].push_back(e);
  }
  return out;
}

KGraph colour_class(const KGraph& g, const Colouring& c, int colour) {
  std::vector<int> ids;
  for (int e = 0; e < g.m(); ++e)
    if (c.colour[e] == colour) ids.push_back(e);
  return g.edge_subgraph(ids, false);
}

}  // namespace

bool is_k_forest(const KGraph& g, const std::vector<int>& edges) {
  if (edges.empty()) return true;
  const KGraph sub = g.edge_subgraph(edges, true);
  for (Vertex v = 0; v < sub.n(); ++v)
    if (max_closure(sub, 1, 1, {v}).value >= 0) return false;
  return true;
}

std::optional<Decomposition> forest_decomposition(const KGraph& g, int l) {
  if (l < 1) throw std::invalid_argument("forest_decomposition: l must be at least 1");
  const int m = g.m();
  std::vector<std::vector<int>> parts(l);
  std::vector<int> part(m, -1);

  for (int x = 0; x < m; ++x) {
    // Shortest exchange path: y -> z means y can replace z in z's part.
    std::vector<int> parent(m, -1);
    std::vector<char> seen(m, 0);
    std::deque<int> queue{x};
    seen[x] = 1;
    int end = -1, target = -1;
    while (!queue.empty() && end < 0) {
      const int y = queue.front();
      queue.pop_front();
      for (int i = 0; i < l && end < 0; ++i) {
        if (i == part[y]) continue;
        if (!dependent_with(g, parts[i], y)) {
          end = y;
          target = i;
          break;
        }
        for (int z : parts[i]) {
          if (seen[z]) continue;
          if (!dependent_with(g, without(parts[i], z), y)) {
            seen[z] = 1;
            parent[z] = y;
            queue.push_back(z);
          }
        }
      }
    }
    if (end < 0) return std::nullopt;
    for (int cur = end;;) {
      const int old = part[cur];
      if (old >= 0) parts[old] = without(parts[old], cur);
      parts[target].push_back(cur);
      part[cur] = target;
      if (cur == x) break;
      target = old;
      cur = parent[cur];
    }
  }

  Decomposition d;
  d.kind = Decomposition::Kind::KForest;
  for (auto& p : parts) std::sort(p.begin(), p.end());
  d.parts = std::move(parts);
  for (const auto& p : d.parts)
    if (!is_k_forest(g, p)) throw std::logic_error("forest_decomposition: a part is not a k-forest");
  return d;
}

std::optional<Decomposition> sparse_partition(const KGraph& g, int l) {
  if (l < 1) throw std::invalid_argument("sparse_partition: l must be at least 1");
  const int m = g.m();
  // slot (v, j) has id v * l + j
  std::vector<int> slot_edge(static_cast<std::size_t>(g.n()) * l, -1);
  std::vector<int> edge_slot(m, -1);
  std::vector<int> stamp(slot_edge.size(), -1);
  int round = 0;
  std::function<bool(int)> augment = [&](int e) -> bool {
    for (Vertex v : g.edge(e)) {
      for (int j = 0; j < l; ++j) {
        const int s = v * l + j;
        if (stamp[s] == round) continue;
        stamp[s] = round;
        if (slot_edge[s] < 0 || augment(slot_edge[s])) {
          slot_edge[s] = e;
          edge_slot[e] = s;
          return true;
        }
      }
    }
    return false;
  };
  for (int e = 0; e < m; ++e, ++round)
    if (!augment(e)) return std::nullopt;

  Decomposition d;
  d.kind = Decomposition::Kind::SparsePart;
  d.parts.assign(l, {});
  for (int e = 0; e < m; ++e) d.parts[edge_slot[e] % l].push_back(e);
  for (const auto& p : d.parts) {
    if (p.empty()) continue;
    if (Rational(1) < m_density(g.edge_subgraph(p, true)).value)
      throw std::logic_error("sparse_partition: a part has m > 1");
  }
  return d;
}

std::optional<Colouring> degeneracy_colouring(const KGraph& g, const std::vector<int>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("degeneracy_colouring: no colours");
  int capacity = 0;
  for (int d : deltas) {
    if (d < 1) throw std::invalid_argument("degeneracy_colouring: every delta must be at least 1");
    capacity += d - 1;
  }
  const auto back = back_edges(g, peeling_order(g));
  Colouring c;
  c.colour.assign(g.m(), -1);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (static_cast<int>(back[v].size()) > capacity) return std::nullopt;
    std::size_t next = 0;
    for (std::size_t i = 0; i < deltas.size(); ++i)
      for (int t = 0; t < deltas[i] - 1 && next < back[v].size(); ++t) c.colour[back[v][next++]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < deltas.size(); ++i)
    if (delta_max(colour_class(g, c, static_cast<int>(i))) >= deltas[i])
      throw std::logic_error("degeneracy_colouring: a colour class reaches its minimum degree");
  return c;
}

std::optional<Colouring> chi_reduction_colouring(const KGraph& g, const KGraph& h1, int classes) {
  if (classes < 1) throw std::invalid_argument("chi_reduction_colouring: classes must be at least 1");
  const int dprime = delta_max(h1);
  if (g.m() > 0 && !(m_density(g).value < Rational(dprime)))
    throw std::invalid_argument("chi_reduction_colouring: requires m(G) < delta_max(H1)");

  const std::vector<Vertex> order = peeling_order(g);
  const auto back = back_edges(g, order);
  std::vector<int> cls(g.n(), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    std::vector<int> inside(classes, 0);
    for (int e : back[v]) {
      const int c = cls[g.edge(e)[0] == v ? g.edge(e)[1] : g.edge(e)[0]];
      const Edge& ed = g.edge(e);
      if (std::all_of(ed.begin(), ed.end(), [&](Vertex u) { return u == v || cls[u] == c; })) ++inside[c];
    }
    for (int c = 0; c < classes && cls[v] < 0; ++c)
      if (inside[c] < dprime) cls[v] = c;
    if (cls[v] < 0) return std::nullopt;
  }

  Colouring out;
  out.colour.assign(g.m(), 1);
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    if (std::all_of(ed.begin(), ed.end(), [&](Vertex u) { return cls[u] == cls[ed[0]]; })) out.colour[e] = 0;
  }
  if (h1.m() > 0 && contains_copy(h1, colour_class(g, out, 0)))
    throw std::logic_error("chi_reduction_colouring: red copy of H1");
  return out;
}

long floor_below(const Rational& x) {
  return x.is_integer() ? static_cast<long>(x.num()) - 1 : static_cast<long>(x.floor());
}

// ------------------------------------------------------------------ dispatch

namespace {

struct PairFacts {
  int k = 2;
  Rational mk1, mk2, pair;
  Rational m1, m2, ar1, ar2;
  int chi1 = 0, chi2 = 0;
  int v1 = 0, e1 = 0, v2 = 0, e2 = 0;
  int delta1 = 0, delta2 = 0;  // minimum degrees over spanned vertices
  int clique = 0;              // a if H1 is K_a
  int bip_a = 0, bip_b = 0;    // a <= b if H1 is K_{a,b}
  bool h2_cycle = false;
};

int min_degree_spanned(const KGraph& h) {
  int best = -1;
  for (Vertex v : h.spanned_vertices())
    if (best < 0 || h.degree(v) < best) best = h.degree(v);
  return std::max(best, 0);
}

PairFacts facts(const KGraph& h1, const KGraph& h2) {
  PairFacts f;
  f.k = h1.k();
  f.mk1 = mk_density(h1).value;
  f.mk2 = mk_density(h2).value;
  f.pair = mk_pair_density_given(h1, f.mk2).value;
  f.m1 = m_density(h1).value;
  f.m2 = m_density(h2).value;
  f.ar1 = arboricity(h1).value;
  f.ar2 = arboricity(h2).value;
  f.chi1 = weak_chromatic_number(h1);
  f.chi2 = weak_chromatic_number(h2);
  f.v1 = static_cast<int>(h1.spanned_vertices().size());
  f.e1 = h1.m();
  f.v2 = static_cast<int>(h2.spanned_vertices().size());
  f.e2 = h2.m();
  f.delta1 = min_degree_spanned(h1);
  f.delta2 = min_degree_spanned(h2);
  if (f.k == 2) {
    const KGraph c1 = h1.edge_subgraph([&] {
      std::vector<int> all(h1.m());
      for (int i = 0; i < h1.m(); ++i) all[i] = i;
      return all;
    }(), true);
    if (f.v1 >= 3 && f.e1 == f.v1 * (f.v1 - 1) / 2) f.clique = f.v1;
    for (int a = 2; a <= f.v1 / 2 && f.bip_a == 0; ++a) {
      const int b = f.v1 - a;
      if (a * b == f.e1 && isomorphic(c1, gen::complete_bipartite(a, b))) {
        f.bip_a = a;
        f.bip_b = b;
      }
    }
    const Connectivity conn = connectivity(h2.edge_subgraph([&] {
      std::vector<int> all(h2.m());
      for (int i = 0; i < h2.m(); ++i) all[i] = i;
      return all;
    }(), true));
    const std::vector<Vertex> span2 = h2.spanned_vertices();
    f.h2_cycle = conn.connected && f.e2 == f.v2 && f.e2 >= 3 &&
                 std::all_of(span2.begin(), span2.end(), [&](Vertex v) { return h2.degree(v) == 2; });
  }
  return f;
}

bool holds(const PairFacts& f, const std::string& label) {
  const bool graph = f.k == 2;
  if (label == "(i)") return graph && f.mk1 == f.mk2;
  if (label == "(ii)") return graph && f.chi2 >= 3;
  if (label == "(iii)") return graph && Rational(2) < f.m2;
  if (label == "(iv)") return graph && Rational(2) < f.ar2;
  if (label == "(v)") return graph && f.clique >= 3;
  if (label == "(vi)") return graph && f.bip_a >= 2;
  if (label == "(vii)") {
    const long l = floor_below(f.ar1);
    return graph && l >= 1 && !(Rational(2 * l + 1, 2) < f.pair);
  }
  if (label == "(viii)") {
    const long l = floor_below(f.m1);
    return graph && l >= 1 && !(Rational(l + 1) < f.pair) && !f.h2_cycle;
  }
  if (label == "hyper(i)") return f.chi2 >= f.k + 1;
  if (label == "hyper(ii)") return Rational(binomial(f.v1, f.k - 2) + 1) < f.m2;
  throw std::invalid_argument("unknown case label: " + label);
}

const std::vector<std::string>& case_order() {
  static const std::vector<std::string> order = {"(i)",   "(ii)", "(iii)", "(iv)",     "(vii)",
                                                 "(viii)", "(v)", "(vi)",  "hyper(i)", "hyper(ii)"};
  return order;
}

Colouring from_parts(const Decomposition& d, int m, int red_parts) {
  Colouring c;
  c.colour.assign(m, 1);
  for (int p = 0; p < red_parts && p < static_cast<int>(d.parts.size()); ++p)
    for (int e : d.parts[p]) c.colour[e] = 0;
  return c;
}

std::optional<DispatchResult> forest_route(const KGraph& g, const PairFacts& f, const std::string& label,
                                           const std::string& note) {
  const long a1 = floor_below(f.ar1), a2 = floor_below(f.ar2);
  if (a1 < 0 || a2 < 0 || a1 + a2 < 1) return std::nullopt;
  auto d = forest_decomposition(g, static_cast<int>(a1 + a2));
  if (!d) return std::nullopt;
  std::ostringstream os;
  os << note << (note.empty() ? "" : "; ") << a1 << " red + " << a2 << " blue forests";
  return DispatchResult{label, "forest", from_parts(*d, g.m(), static_cast<int>(a1)), os.str()};
}

std::optional<DispatchResult> sparse_route(const KGraph& g, const PairFacts& f, const std::string& label,
                                           const std::string& note) {
  const long b1 = floor_below(f.m1), b2 = floor_below(f.m2);
  if (b1 < 0 || b2 < 0 || b1 + b2 < 1) return std::nullopt;
  auto d = sparse_partition(g, static_cast<int>(b1 + b2));
  if (!d) return std::nullopt;
  std::ostringstream os;
  os << note << (note.empty() ? "" : "; ") << b1 << " red + " << b2 << " blue sparse parts";
  return DispatchResult{label, "sparse", from_parts(*d, g.m(), static_cast<int>(b1)), os.str()};
}

std::optional<DispatchResult> degeneracy_route(const KGraph& g, const PairFacts& f, const std::string& label,
                                               const std::string& note) {
  if (f.delta1 < 1 || f.delta2 < 1) return std::nullopt;
  auto c = degeneracy_colouring(g, {f.delta1, f.delta2});
  if (!c) return std::nullopt;
  std::ostringstream os;
  os << note << (note.empty() ? "" : "; ") << "deltas " << f.delta1 << "," << f.delta2;
  return DispatchResult{label, "degeneracy", *c, os.str()};
}

// Red/blue swapped when `swapped`: the classes avoid H2 and the crossing
// edges avoid H1.
std::optional<DispatchResult> chi_route(const KGraph& g, const KGraph& h1, const KGraph& h2, int classes,
                                        bool swapped, const std::string& label, const std::string& note) {
  const KGraph& inner = swapped ? h2 : h1;
  if (g.m() > 0 && !(m_density(g).value < Rational(delta_max(inner)))) return std::nullopt;
  auto c = chi_reduction_colouring(g, inner, classes);
  if (!c) return std::nullopt;
  if (swapped)
    for (int& x : c->colour) x = 1 - x;
  std::ostringstream os;
  os << note << (note.empty() ? "" : "; ") << classes << " vertex classes" << (swapped ? ", roles swapped" : "");
  return DispatchResult{label, "chi", *c, os.str()};
}

std::optional<DispatchResult> case_one(const KGraph& g, const KGraph& h1, const KGraph& h2, const PairFacts& f) {
  if (f.chi2 >= 3) return chi_route(g, h1, h2, 2, false, "(i)", "via (ii)");
  if (Rational(2) < f.m2) return sparse_route(g, f, "(i)", "via (iii)");
  if (f.chi1 >= 3) return chi_route(g, h1, h2, 2, true, "(i)", "via (ii) with roles swapped");
  if (Rational(2) < f.m1) return sparse_route(g, f, "(i)", "via (iii) with roles swapped");
  const Rational t(f.mk1.floor());
  const Rational x = f.mk1 - t;
  const Rational half(1, 2);
  if (x < half) return degeneracy_route(g, f, "(i)", "subcase 3");
  const bool full1 = 4 * f.e1 == f.v1 * f.v1, full2 = 4 * f.e2 == f.v2 * f.v2;
  if (half < x || (!full1 && !full2)) return sparse_route(g, f, "(i)", "subcase 1");
  return forest_route(g, f, "(i)", "subcase 2 via (vii)");
}

std::optional<DispatchResult> search_route(const KGraph& g, const KGraph& h1, const KGraph& h2, const PairFacts& f,
                                           const std::string& label) {
  auto c = valid_colouring(g, h1, h2);
  if (!c) return std::nullopt;
  std::ostringstream os;
  if (label == "(v)") {
    if (f.mk1 == f.mk2)
      os << "m2(H1) = m2(H2), covered by (i)";
    else
      os << "m(G) <= " << f.pair.str() << " < " << Rational(f.clique + 1, 2).str() << " = m2(K_" << f.clique
         << ") while a Ramsey-minimal subgraph needs m >= " << f.clique - 1;
  } else {
    const int a = f.bip_a, b = f.bip_b;
    if (a == 2 && b == 2 && f.mk2 == Rational(3, 2)) {
      os << "m2(H1) = m2(H2), covered by (i)";
    } else {
      const Rational x(a + f.delta2 - 1), z(b - a);
      const Rational bound = x * (x + z) / (Rational(2) * x + z);
      os << "m2(H1,H2) = " << f.pair.str() << (f.pair < bound ? " < " : " >= ") << bound.str()
         << " = x(x+z)/(2x+z)";
    }
  }
  return DispatchResult{label, "search", *c, os.str()};
}

std::optional<DispatchResult> run_case(const KGraph& g, const KGraph& h1, const KGraph& h2, const PairFacts& f,
                                       const std::string& label) {
  if (label == "(i)") return case_one(g, h1, h2, f);
  if (label == "(ii)") return chi_route(g, h1, h2, 2, false, label, "");
  if (label == "(iii)" || label == "(viii)" || label == "hyper(ii)") return sparse_route(g, f, label, "");
  if (label == "(iv)" || label == "(vii)") return forest_route(g, f, label, "");
  if (label == "(v)" || label == "(vi)") return search_route(g, h1, h2, f, label);
  if (label == "hyper(i)") return chi_route(g, h1, h2, f.k, false, label, "");
  throw std::invalid_argument("unknown case label: " + label);
}

void check_pair(const KGraph& g, const KGraph& h1, const KGraph& h2) {
  if (g.k() != h1.k() || h1.k() != h2.k()) throw std::invalid_argument("colouring: uniformity mismatch");
  if (h1.m() == 0 || h2.m() == 0) throw std::invalid_argument("colouring: empty pattern");
}

}  // namespace

std::vector<std::string> applicable_cases(const KGraph& h1, const KGraph& h2) {
  check_pair(h1, h1, h2);
  const PairFacts f = facts(h1, h2);
  std::vector<std::string> out;
  for (const std::string& label : case_order())
    if (holds(f, label)) out.push_back(label);
  return out;
}

std::optional<DispatchResult> colour_by_case(const KGraph& g, const KGraph& h1, const KGraph& h2,
                                             const std::string& label) {
  check_pair(g, h1, h2);
  const PairFacts f = facts(h1, h2);
  if (!holds(f, label)) return std::nullopt;
  auto r = run_case(g, h1, h2, f, label);
  if (r && !is_valid_colouring(g, {h1, h2}, r->colouring))
    throw std::logic_error("colouring case " + label + " produced an invalid colouring");
  return r;
}

std::optional<DispatchResult> colouring_dispatch(const KGraph& g, const KGraph& h1, const KGraph& h2) {
  check_pair(g, h1, h2);
  const PairFacts f = facts(h1, h2);
  if (f.mk1 < f.mk2 || !(Rational(1) < f.mk2))
    throw std::invalid_argument("colouring_dispatch: requires m_k(H1) >= m_k(H2) > 1");
  if (!is_heart(h1, h2)) throw std::invalid_argument("colouring_dispatch: (H1, H2) is not a heart");
  if (g.m() > 0 && f.pair < m_density(g).value)
    throw std::invalid_argument("colouring_dispatch: requires m(G) <= m_k(H1, H2)");
  for (const std::string& label : case_order()) {
    if (!holds(f, label)) continue;
    auto r = run_case(g, h1, h2, f, label);
    if (!r) continue;
    if (!is_valid_colouring(g, {h1, h2}, r->colouring))
      throw std::logic_error("colouring case " + label + " produced an invalid colouring");
    return r;
  }
  return std::nullopt;
}

}  // namespace hrw
