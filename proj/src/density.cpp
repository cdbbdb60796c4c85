#include "hrw/density.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "hrw/closure.hpp"

namespace hrw {

namespace {

// Objective (e - alpha) / (v - beta) over vertex sets S with e(G[S]) >= 1.
struct Ratio {
  Rational alpha, beta;
};

int edges_inside(const KGraph& g, const std::vector<Vertex>& s) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : s) in[v] = 1;
  int c = 0;
  for (const Edge& e : g.edges())
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v]; })) ++c;
  return c;
}

std::vector<int> edge_ids_inside(const KGraph& g, const std::vector<Vertex>& s) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<int> out;
  for (int i = 0; i < g.m(); ++i)
    if (std::all_of(g.edge(i).begin(), g.edge(i).end(), [&](Vertex v) { return in[v]; })) out.push_back(i);
  return out;
}

DensityWitness make_witness(const KGraph& g, const Rational& value, std::vector<Vertex> verts) {
  DensityWitness w;
  w.value = value;
  std::sort(verts.begin(), verts.end());
  w.vertices = std::move(verts);
  w.edges = edge_ids_inside(g, w.vertices);
  return w;
}

// Among candidate vertex sets pick fewest edges, then fewest vertices, then
// the least canonical form of the induced subgraph.
std::vector<Vertex> pick_smallest(const KGraph& g, std::vector<std::vector<Vertex>> cands) {
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  auto key = [&](const std::vector<Vertex>& s) { return std::make_pair(edges_inside(g, s), s.size()); };
  auto best = key(cands.front());
  for (const auto& c : cands) best = std::min(best, key(c));
  std::vector<std::vector<Vertex>> tied;
  for (auto& c : cands)
    if (key(c) == best) tied.push_back(std::move(c));
  if (tied.size() == 1) return tied.front();
  std::size_t bi = 0;
  CanonicalForm bcf = canonical_form(g.induced(tied[0]));
  for (std::size_t i = 1; i < tied.size(); ++i) {
    CanonicalForm cf = canonical_form(g.induced(tied[i]));
    if (cf < bcf) {
      bcf = std::move(cf);
      bi = i;
    }
  }
  return tied[bi];
}

Rational ratio_value(int e, int v, const Ratio& r) { return (Rational(e) - r.alpha) / (Rational(v) - r.beta); }

// Dinkelbach iteration on the closure network. `dk_mode` marks the
// (e-1)/(v-k) objective, whose degenerate single-edge sets have objective 0
// and must be excluded when collecting minimal maximisers.
DensityWitness flow_max_ratio(const KGraph& g, const Ratio& r, Rational t, std::vector<Vertex> witness, bool dk_mode,
                              bool minimal_witness) {
  for (;;) {
    const std::int64_t a = t.num(), b = t.den();
    Rational best = t;
    std::vector<Vertex> best_set;
    for (int f = 0; f < g.m(); ++f) {
      ClosureResult res = max_closure(g, b, a, g.edge(f));
      Rational obj = Rational(res.value) + Rational(a) * r.beta - Rational(b) * r.alpha;
      if (obj <= Rational(0)) continue;
      Rational val = ratio_value(res.edges_inside, static_cast<int>(res.vertices.size()), r);
      if (val > best) {
        best = val;
        best_set = res.vertices;
      }
    }
    if (best_set.empty()) break;
    t = best;
    witness = std::move(best_set);
  }
  if (minimal_witness) {
    const std::int64_t a = t.num(), b = t.den();
    const int k = g.k();
    std::vector<std::vector<Vertex>> cands;
    const bool single_edge_optimal = dk_mode && t == Rational(1, k);
    for (int f = 0; f < g.m(); ++f) {
      if (single_edge_optimal) {
        cands.push_back(g.edge(f));
        continue;
      }
      std::vector<Vertex> extras{-1};
      if (dk_mode) {
        extras.clear();
        for (Vertex x = 0; x < g.n(); ++x)
          if (!std::binary_search(g.edge(f).begin(), g.edge(f).end(), x)) extras.push_back(x);
      }
      for (Vertex x : extras) {
        std::vector<Vertex> forced = g.edge(f);
        if (x >= 0) forced.push_back(x);
        ClosureResult res = max_closure(g, b, a, forced);
        int v = static_cast<int>(res.vertices.size());
        if (Rational(v) - r.beta <= Rational(0)) continue;
        if (ratio_value(res.edges_inside, v, r) == t) cands.push_back(res.vertices);
      }
    }
    if (!cands.empty()) witness = pick_smallest(g, std::move(cands));
  }
  return make_witness(g, t, std::move(witness));
}

DensityWitness exhaustive_max_ratio(const KGraph& g, const Ratio& r, bool dk_mode) {
  const int n = g.n();
  if (n > 24) throw std::invalid_argument("exhaustive engine limited to 24 vertices");
  std::vector<std::uint32_t> masks;
  for (const Edge& e : g.edges()) {
    std::uint32_t mk = 0;
    for (Vertex v : e) mk |= 1u << v;
    masks.push_back(mk);
  }
  bool have = false;
  Rational best;
  std::vector<std::vector<Vertex>> cands;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    int e = 0;
    for (std::uint32_t mk : masks) e += (mk & ~s) == 0;
    if (e == 0) continue;
    int v = std::popcount(s);
    Rational val;
    if (dk_mode && v == g.k()) {
      val = Rational(1, g.k());
    } else {
      if (Rational(v) - r.beta <= Rational(0)) continue;
      val = ratio_value(e, v, r);
    }
    if (!have || val > best) {
      have = true;
      best = val;
      cands.clear();
    }
    if (val == best) {
      std::vector<Vertex> vs;
      for (int i = 0; i < n; ++i)
        if (s >> i & 1) vs.push_back(i);
      cands.push_back(std::move(vs));
    }
  }
  if (!have) return DensityWitness{};
  return make_witness(g, best, pick_smallest(g, std::move(cands)));
}

DensityWitness max_ratio(const KGraph& g, const Ratio& r, bool dk_mode, Engine engine, bool minimal_witness) {
  if (g.m() == 0) return DensityWitness{};
  if (engine == Engine::Exhaustive) return exhaustive_max_ratio(g, r, dk_mode);
  std::vector<Vertex> span = g.spanned_vertices();
  Rational t0;
  std::vector<Vertex> w0;
  if (dk_mode) {
    t0 = Rational(1, g.k());
    w0 = g.edge(0);
  } else {
    t0 = ratio_value(edges_inside(g, span), static_cast<int>(span.size()), r);
    w0 = span;
  }
  return flow_max_ratio(g, r, t0, std::move(w0), dk_mode, minimal_witness);
}

Ratio pair_ratio(int k, const Rational& mk_h2) { return Ratio{Rational(0), Rational(k) - mk_h2.reciprocal()}; }

}  // namespace

// ---------------------------------------------------------------- plain ratios

Rational d_density(const KGraph& g) { return g.n() == 0 ? Rational(0) : Rational(g.m(), g.n()); }

Rational d1_density(const KGraph& g) { return g.n() < 2 ? Rational(0) : Rational(g.m(), g.n() - 1); }

Rational dk_density(const KGraph& g) {
  if (g.m() >= 1 && g.n() >= g.k() + 1) return Rational(g.m() - 1, g.n() - g.k());
  if (g.m() == 1 && g.n() == g.k()) return Rational(1, g.k());
  return Rational(0);
}

Rational dk_pair(const KGraph& j, const Rational& mk_h2) {
  if (j.m() == 0) return Rational(0);
  return Rational(j.m()) / (Rational(j.n() - j.k()) + mk_h2.reciprocal());
}

DensityWitness m_density(const KGraph& g, Engine engine) {
  return max_ratio(g, Ratio{Rational(0), Rational(0)}, false, engine, false);
}

DensityWitness arboricity(const KGraph& g, Engine engine) {
  return max_ratio(g, Ratio{Rational(0), Rational(1)}, false, engine, false);
}

DensityWitness mk_density(const KGraph& g, Engine engine) {
  return max_ratio(g, Ratio{Rational(1), Rational(g.k())}, true, engine, false);
}

DensityWitness mk_pair_density_given(const KGraph& h1, const Rational& mk_h2, Engine engine) {
  if (mk_h2 <= Rational(0)) throw std::invalid_argument("m_k(H2) must be positive");
  return max_ratio(h1, pair_ratio(h1.k(), mk_h2), false, engine, false);
}

DensityWitness mk_pair_density(const KGraph& h1, const KGraph& h2, Engine engine) {
  if (h1.k() != h2.k()) throw std::invalid_argument("uniformity mismatch");
  if (h2.m() == 0) throw std::invalid_argument("H2 must be non-empty");
  Rational m1 = mk_density(h1, engine).value, m2 = mk_density(h2, engine).value;
  if (m1 < m2) throw std::invalid_argument("pair must satisfy m_k(H1) >= m_k(H2)");
  return mk_pair_density_given(h1, m2, engine);
}

// ---------------------------------------------------------------- balancedness

namespace {

// Largest value of the objective over proper subgraphs of h. A proper
// subgraph either misses a vertex (covered by h - x) or keeps every vertex
// and misses an edge.
Rational max_over_proper(const KGraph& h, const std::function<Rational(const KGraph&)>& whole,
                         const std::function<Rational(const KGraph&)>& best_sub) {
  Rational best(0);
  bool any = false;
  for (Vertex x = 0; x < h.n(); ++x) {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < h.n(); ++v)
      if (v != x) rest.push_back(v);
    Rational val = best_sub(h.induced(rest));
    if (!any || val > best) best = val;
    any = true;
  }
  for (int i = 0; i < h.m(); ++i) {
    std::vector<int> keep;
    for (int j = 0; j < h.m(); ++j)
      if (j != i) keep.push_back(j);
    Rational val = whole(h.edge_subgraph(keep, false));
    if (!any || val > best) best = val;
    any = true;
  }
  return best;
}

}  // namespace

bool balancedness(const KGraph& h, Balance mode, const KGraph* h2) {
  if ((mode == Balance::BalancedWrt || mode == Balance::StrictBalancedWrt) && h2 == nullptr)
    throw std::invalid_argument("balancedness: mode needs H2");
  switch (mode) {
    case Balance::KBalanced:
      return mk_density(h).value == dk_density(h);
    case Balance::StrictKBalanced: {
      if (h.n() == 0) return true;
      Rational full = dk_density(h);
      return max_over_proper(h, dk_density, [](const KGraph& j) { return mk_density(j).value; }) < full;
    }
    case Balance::BalancedWrt:
    case Balance::StrictBalancedWrt: {
      Rational m2 = mk_density(*h2).value;
      if (m2 <= Rational(0)) throw std::invalid_argument("balancedness: H2 must be non-empty");
      Rational full = dk_pair(h, m2);
      if (mode == Balance::BalancedWrt) return mk_pair_density_given(h, m2).value == full;
      if (h.n() == 0) return true;
      auto whole = [&](const KGraph& j) { return dk_pair(j, m2); };
      auto sub = [&](const KGraph& j) { return j.m() == 0 ? Rational(0) : mk_pair_density_given(j, m2).value; };
      return max_over_proper(h, whole, sub) < full;
    }
  }
  return false;
}

bool is_heart(const KGraph& h1, const KGraph& h2) {
  if (h1.k() != h2.k() || h2.m() == 0 || h1.m() == 0) return false;
  Rational m1 = mk_density(h1).value, m2 = mk_density(h2).value;
  if (m1 < m2) return false;
  if (!balancedness(h2, Balance::StrictKBalanced)) return false;
  if (m1 == m2) return balancedness(h1, Balance::StrictKBalanced);
  return balancedness(h1, Balance::StrictBalancedWrt, &h2);
}

std::pair<KGraph, KGraph> heart(const KGraph& h1, const KGraph& h2) {
  if (h1.k() != h2.k()) throw std::invalid_argument("heart: uniformity mismatch");
  Rational m1 = mk_density(h1).value, m2 = mk_density(h2).value;
  if (!(m1 >= m2 && m2 > Rational(1))) throw std::invalid_argument("heart: requires m_k(H1) >= m_k(H2) > 1");
  const Ratio dk{Rational(1), Rational(h1.k())};
  DensityWitness w2 = max_ratio(h2, dk, true, Engine::Flow, true);
  KGraph h2p = w2.subgraph(h2);
  KGraph h1p;
  if (m1 > m2) {
    DensityWitness w1 = max_ratio(h1, pair_ratio(h1.k(), mk_density(h2p).value), false, Engine::Flow, true);
    h1p = w1.subgraph(h1);
  } else {
    DensityWitness w1 = max_ratio(h1, dk, true, Engine::Flow, true);
    h1p = w1.subgraph(h1);
  }
  if (!is_heart(h1p, h2p)) throw std::logic_error("heart: extracted pair fails the heart definition");
  return {h1p, h2p};
}

// ---------------------------------------------------------------- pair context

PairContext PairContext::make(const KGraph& h1, const KGraph& h2, const Rational& epsilon) {
  if (h1.k() != h2.k()) throw std::invalid_argument("pair: uniformity mismatch");
  if (h2.m() == 0) throw std::invalid_argument("pair: H2 must be non-empty");
  if (epsilon < Rational(0)) throw std::invalid_argument("pair: epsilon must be non-negative");
  PairContext c;
  c.h1 = h1;
  c.h2 = h2;
  c.k = h1.k();
  c.mk_h1 = mk_density(h1).value;
  c.mk_h2 = mk_density(h2).value;
  if (c.mk_h1 < c.mk_h2) throw std::invalid_argument("pair: requires m_k(H1) >= m_k(H2)");
  c.mk_pair = mk_pair_density_given(h1, c.mk_h2).value;
  c.epsilon = epsilon;
  c.gamma = gamma_from_pair_density(c.mk_pair, epsilon);
  c.regime = c.mk_h1 > c.mk_h2 ? Regime::Strict : Regime::Equal;
  c.heart = is_heart(h1, h2);
  return c;
}

std::string PairContext::describe() const {
  std::ostringstream o;
  o << "k=" << k << " mk_H1=" << mk_h1 << " mk_H2=" << mk_h2 << " mk_pair=" << mk_pair << " eps=" << epsilon
    << " gamma=" << gamma << " regime=" << (regime == Regime::Strict ? "strict" : "equal")
    << " heart=" << (heart ? "yes" : "no");
  return o.str();
}

// ---------------------------------------------------------------- lambda / gamma

Rational lambda_value(int v, int e, const Rational& mk_pair) { return Rational(v) - Rational(e) / mk_pair; }

Rational lambda(const KGraph& f, const PairContext& ctx) {
  if (f.k() != ctx.k) throw std::invalid_argument("lambda: uniformity mismatch");
  return lambda_value(f.n(), f.m(), ctx.mk_pair);
}

namespace {

// Per forced edge, the inclusion-minimal maximiser of q*e - p*v.
std::vector<ClosureResult> lambda_closures(const KGraph& f, const Rational& mk_pair) {
  std::vector<ClosureResult> out;
  out.reserve(f.m());
  for (int i = 0; i < f.m(); ++i) out.push_back(max_closure(f, mk_pair.den(), mk_pair.num(), f.edge(i)));
  return out;
}

}  // namespace

Rational min_lambda_value(const KGraph& f, const Rational& mk_pair) {
  if (f.m() == 0) throw std::invalid_argument("min_lambda: graph has no edges");
  std::int64_t best = 0;
  bool have = false;
  for (int i = 0; i < f.m(); ++i) {
    std::int64_t v = max_closure(f, mk_pair.den(), mk_pair.num(), f.edge(i)).value;
    if (!have || v > best) best = v;
    have = true;
  }
  return Rational(-best, mk_pair.num());
}

DensityWitness min_lambda_subgraph(const KGraph& f, const PairContext& ctx, Engine engine) {
  if (f.m() == 0) throw std::invalid_argument("min_lambda: graph has no edges");
  if (engine == Engine::Exhaustive) {
    if (f.n() > 24) throw std::invalid_argument("exhaustive engine limited to 24 vertices");
    std::vector<std::uint32_t> masks;
    for (const Edge& e : f.edges()) {
      std::uint32_t mk = 0;
      for (Vertex v : e) mk |= 1u << v;
      masks.push_back(mk);
    }
    bool have = false;
    Rational best;
    std::vector<std::vector<Vertex>> cands;
    for (std::uint32_t s = 1; s < (1u << f.n()); ++s) {
      int e = 0;
      for (std::uint32_t mk : masks) e += (mk & ~s) == 0;
      if (e == 0) continue;
      Rational val = lambda_value(std::popcount(s), e, ctx.mk_pair);
      if (!have || val < best) {
        have = true;
        best = val;
        cands.clear();
      }
      if (val == best) {
        std::vector<Vertex> vs;
        for (int i = 0; i < f.n(); ++i)
          if (s >> i & 1) vs.push_back(i);
        cands.push_back(std::move(vs));
      }
    }
    return make_witness(f, best, pick_smallest(f, std::move(cands)));
  }
  std::vector<ClosureResult> res = lambda_closures(f, ctx.mk_pair);
  std::int64_t best = res.front().value;
  for (const auto& r : res) best = std::max(best, r.value);
  std::vector<std::vector<Vertex>> cands;
  for (auto& r : res)
    if (r.value == best) cands.push_back(std::move(r.vertices));
  return make_witness(f, Rational(-best, ctx.mk_pair.num()), pick_smallest(f, std::move(cands)));
}

Rational gamma_from_pair_density(const Rational& mk_pair, const Rational& epsilon) {
  if (epsilon < Rational(0)) throw std::invalid_argument("gamma: epsilon must be non-negative");
  return mk_pair.reciprocal() - (mk_pair + epsilon).reciprocal();
}

Rational gamma(const KGraph& h1, const KGraph& h2, const Rational& epsilon) {
  return gamma_from_pair_density(mk_pair_density(h1, h2).value, epsilon);
}

// ---------------------------------------------------------------- degrees, colouring

int delta_max(const KGraph& g, std::vector<Vertex>* witness) {
  const int n = g.n();
  std::vector<char> alive_v(n, 1), alive_e(g.m(), 1);
  std::vector<int> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  int best = 0;
  std::vector<Vertex> best_set;
  for (Vertex v = 0; v < n; ++v) best_set.push_back(v);
  if (n > 0) best = *std::min_element(deg.begin(), deg.end());
  for (int removed = 0; removed < n; ++removed) {
    Vertex pick = -1;
    for (Vertex v = 0; v < n; ++v)
      if (alive_v[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
    alive_v[pick] = 0;
    for (int ei : g.incidence()[pick]) {
      if (!alive_e[ei]) continue;
      alive_e[ei] = 0;
      for (Vertex u : g.edge(ei)) --deg[u];
    }
    int mn = -1;
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v)
      if (alive_v[v]) {
        rest.push_back(v);
        mn = mn < 0 ? deg[v] : std::min(mn, deg[v]);
      }
    if (mn > best) {
      best = mn;
      best_set = rest;
    }
  }
  if (witness) *witness = best_set;
  return best;
}

int weak_chromatic_number(const KGraph& h) {
  if (h.n() == 0) throw std::invalid_argument("weak chromatic number of the empty graph");
  if (h.m() == 0) return 1;
  const int n = h.n();
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return h.degree(a) > h.degree(b); });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  // edges checked once their last vertex (in order) is coloured
  std::vector<std::vector<int>> check(n);
  for (int i = 0; i < h.m(); ++i) {
    int last = 0;
    for (Vertex v : h.edge(i)) last = std::max(last, pos[v]);
    check[last].push_back(i);
  }
  std::vector<int> col(n, -1);
  for (int t = 2;; ++t) {
    std::function<bool(int, int)> rec = [&](int i, int used) -> bool {
      if (i == n) return true;
      Vertex v = order[i];
      for (int c = 0; c < std::min(t, used + 1); ++c) {
        col[v] = c;
        bool ok = true;
        for (int ei : check[i]) {
          const Edge& e = h.edge(ei);
          if (std::all_of(e.begin(), e.end(), [&](Vertex u) { return col[u] == c; })) { ok = false; break; }
        }
        if (ok && rec(i + 1, std::max(used, c + 1))) return true;
      }
      col[v] = -1;
      return false;
    };
    if (rec(0, 0)) return t;
  }
}

// ---------------------------------------------------------------- heart structure

namespace {

// Searches for an edge bipartition E1 (>= 1 edge), E2 (>= 2 edges) whose
// vertex sets meet in at most k-1 vertices.
bool cut_free(const KGraph& h, std::string& witness) {
  const int m = h.m();
  if (m > 24) throw std::invalid_argument("cut-set search limited to 24 edges");
  for (std::uint32_t s = 1; s + 1 < (1u << m); ++s) {
    int c1 = std::popcount(s), c2 = m - c1;
    if (c1 < 1 || c2 < 2) continue;
    std::vector<char> in1(h.n(), 0), in2(h.n(), 0);
    for (int i = 0; i < m; ++i)
      for (Vertex v : h.edge(i)) (s >> i & 1 ? in1 : in2)[v] = 1;
    int shared = 0;
    for (Vertex v = 0; v < h.n(); ++v) shared += in1[v] && in2[v];
    if (shared <= h.k() - 1) {
      std::ostringstream o;
      o << "edge bipartition with " << c1 << "+" << c2 << " edges sharing " << shared << " vertices";
      witness = o.str();
      return false;
    }
  }
  return true;
}

}  // namespace

HeartStructureReport heart_structure_check(const KGraph& h1, const KGraph& h2) {
  if (!is_heart(h1, h2)) throw std::invalid_argument("heart_structure_check: not a heart");
  if (mk_density(h2).value <= Rational(1)) throw std::invalid_argument("heart_structure_check: requires m_k(H2) > 1");
  HeartStructureReport r;
  r.h1_connected = connectivity(h1).connected;
  r.h2_connected = connectivity(h2).connected;
  r.h1_min_degree = h1.min_degree();
  r.h2_min_degree = h2.min_degree();
  std::string w1, w2;
  r.h1_cut_free = cut_free(h1, w1);
  r.h2_cut_free = cut_free(h2, w2);
  if (!w1.empty()) r.cut_witness = "H1: " + w1;
  if (!w2.empty()) r.cut_witness += (r.cut_witness.empty() ? "H2: " : "; H2: ") + w2;
  return r;
}

}  // namespace hrw
