#include "hrw/grow.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hrw/structure.hpp"

namespace hrw {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::AttachH1: return "AttachH1";
    case StepKind::CloseE: return "CloseE";
    case StepKind::CloseEClosed: return "CloseEClosed";
    case StepKind::CloseEAltL: return "CloseEAlt-L";
    case StepKind::CloseEAltR: return "CloseEAlt-R";
  }
  return "?";
}

std::string to_string(StepClass c) { return c == StepClass::Degenerate ? "Degenerate" : "NonDegenerate"; }

namespace {

// Shared limits for the generators: partial results that already exceed the
// vertex cap or whose whole-graph lambda fails the guard are abandoned, since
// every later addition keeps them as subgraphs.
struct Gen {
  const PairContext& ctx;
  int max_vertices;
  long* capped;

  bool viable(const KGraph& g) const {
    if (max_vertices >= 0 && g.n() > max_vertices) {
      if (capped) ++*capped;
      return false;
    }
    return lambda(g, ctx) > -ctx.gamma;
  }
};

// A candidate F' = F + J before canonicalisation.
struct Raw {
  KGraph graph;
  StepKind kind;
  StepClass cls;
  Edge at;
  std::vector<Edge> attached;
};

Edge image(const Edge& pe, const std::vector<int>& map) {
  Edge out;
  out.reserve(pe.size());
  for (int v : pe) out.push_back(map[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> images(const KGraph& p, const std::vector<int>& map) {
  std::vector<Edge> out;
  out.reserve(p.m());
  for (const Edge& pe : p.edges()) out.push_back(image(pe, map));
  std::sort(out.begin(), out.end());
  return out;
}

// Extends map (pattern vertex -> host vertex, -1 free) in every injective
// way: a free vertex goes to an unused host vertex in 0..n-1 or to the next
// fresh id n, n+1, ... Fresh ids are handed out in pattern order, so no two
// extensions differ only by renaming fresh vertices.
template <class F>
void extend_map(const KGraph& p, int n, std::vector<int>& map, std::vector<char>& used, int i, int fresh, F& f) {
  const int v = p.n();
  while (i < v && map[i] >= 0) ++i;
  if (i == v) {
    f(map, fresh);
    return;
  }
  for (int h = 0; h < n; ++h) {
    if (used[h]) continue;
    used[h] = 1;
    map[i] = h;
    extend_map(p, n, map, used, i + 1, fresh, f);
    used[h] = 0;
  }
  map[i] = n + fresh;
  extend_map(p, n, map, used, i + 1, fresh + 1, f);
  map[i] = -1;
}

// Every placement of pattern p into a host with n vertices sending some
// pattern edge onto the host edge e (all orientations).
template <class F>
void place_through(const KGraph& p, int n, const Edge& e, F&& f) {
  std::vector<int> perm(e.begin(), e.end());
  for (const Edge& pe : p.edges()) {
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> map(p.n(), -1);
      std::vector<char> used(n, 0);
      for (std::size_t j = 0; j < pe.size(); ++j) {
        map[pe[j]] = perm[j];
        used[perm[j]] = 1;
      }
      extend_map(p, n, map, used, 0, 0, f);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

template <class F>
void place_anywhere(const KGraph& p, int n, F&& f) {
  std::vector<int> map(p.n(), -1);
  std::vector<char> used(n, 0);
  extend_map(p, n, map, used, 0, 0, f);
}

int count_below(const std::vector<int>& map, int n) {
  int c = 0;
  for (int v : map)
    if (v < n) ++c;
  return c;
}

// Key identifying a placement's effect: fresh count followed by the image edges.
std::vector<int> placement_key(int fresh, const std::vector<Edge>& img) {
  std::vector<int> key{fresh};
  for (const Edge& e : img) key.insert(key.end(), e.begin(), e.end());
  return key;
}

void attach_h1(const KGraph& f, const PairContext& ctx, std::vector<Raw>& out) {
  std::set<std::vector<int>> seen;
  auto cb = [&](const std::vector<int>& map, int fresh) {
    if (count_below(map, f.n()) < ctx.k) return;
    auto img = images(ctx.h1, map);
    bool adds = std::any_of(img.begin(), img.end(), [&](const Edge& e) {
      return e.back() >= f.n() || !f.has_edge(e);
    });
    if (!adds || !seen.insert(placement_key(fresh, img)).second) return;
    out.push_back({f.with_edges(img, f.n() + fresh), StepKind::AttachH1, StepClass::Degenerate, {}, img});
  };
  place_anywhere(ctx.h1, f.n(), cb);
}

// Close-e with the H2 copy L already placed; adds one H1 copy per new core edge.
void place_petals(const KGraph& base, int n0, const std::set<Edge>& core, const std::vector<Edge>& new_core,
                  std::size_t i, bool nondeg, std::vector<Edge>& attached, const Gen& gen, StepKind kind,
                  const Edge& at, std::vector<Raw>& out) {
  const PairContext& ctx = gen.ctx;
  if (!gen.viable(base)) return;
  if (i == new_core.size()) {
    out.push_back({base, kind, nondeg ? StepClass::NonDegenerate : StepClass::Degenerate, at, attached});
    return;
  }
  const Edge& ep = new_core[i];
  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<Edge>, int>> options;
  auto cb = [&](const std::vector<int>& map, int fresh) {
    if (count_below(map, n0) > ctx.k - 1) return;
    auto img = images(ctx.h1, map);
    for (const Edge& e : img)
      if (e != ep && core.count(e)) return;
    if (!seen.insert(placement_key(fresh, img)).second) return;
    options.push_back({img, fresh});
  };
  place_through(ctx.h1, base.n(), ep, cb);
  for (auto& [img, fresh] : options) {
    // Non-degenerate petals meet the current graph in exactly e'.
    std::set<int> on_base;
    for (const Edge& e : img)
      for (int v : e)
        if (v < base.n()) on_base.insert(v);
    bool clean = static_cast<int>(on_base.size()) == ctx.k;
    std::size_t mark = attached.size();
    attached.insert(attached.end(), img.begin(), img.end());
    place_petals(base.with_edges(img, base.n() + fresh), n0, core, new_core, i + 1, nondeg && clean, attached, gen,
                 kind, at, out);
    attached.resize(mark);
  }
}

void close_e(const KGraph& f, const Edge& e, const Gen& gen, StepKind kind, std::vector<Raw>& out) {
  const PairContext& ctx = gen.ctx;
  const int n0 = f.n();
  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<Edge>, int>> ls;
  auto cb = [&](const std::vector<int>& map, int fresh) {
    auto img = images(ctx.h2, map);
    for (const Edge& x : img) {
      if (x.back() < n0 && f.has_edge(x)) continue;
      int inside = 0;
      for (int v : x)
        if (v < n0) ++inside;
      if (inside >= ctx.k) return;
    }
    if (!seen.insert(placement_key(fresh, img)).second) return;
    ls.push_back({img, fresh});
  };
  place_through(ctx.h2, n0, e, cb);
  for (auto& [img, fresh] : ls) {
    std::vector<Edge> new_core;
    for (const Edge& x : img)
      if (x.back() >= n0 || !f.has_edge(x)) new_core.push_back(x);
    if (new_core.empty()) continue;  // L inside F adds nothing
    bool clean = fresh == ctx.h2.n() - ctx.k;
    std::set<Edge> core(img.begin(), img.end());
    std::vector<Edge> attached = img;
    place_petals(f.with_edges(img, n0 + fresh), n0, core, new_core, 0, clean, attached, gen, kind, e, out);
  }
}

void close_e_alt(const KGraph& f, const Edge& e, const PairContext& ctx, std::vector<Raw>& out) {
  const int n0 = f.n();
  std::set<std::vector<int>> seen;
  for (int side = 1; side <= 2; ++side) {
    const KGraph& xp = side == 1 ? ctx.h1 : ctx.h2;  // copy already inside F
    const KGraph& yp = side == 1 ? ctx.h2 : ctx.h1;  // copy being added
    const StepKind kind = side == 1 ? StepKind::CloseEAltL : StepKind::CloseEAltR;
    const int ei = f.edge_index(e);
    for (const Copy& x : copies_of(xp, f)) {
      if (!std::binary_search(x.edges.begin(), x.edges.end(), ei)) continue;
      std::set<Edge> xe;
      for (int id : x.edges) xe.insert(f.edge(id));
      auto cb = [&](const std::vector<int>& map, int fresh) {
        auto img = images(yp, map);
        bool adds = false;
        for (const Edge& y : img) {
          if (y != e && xe.count(y)) return;
          if (y.back() >= n0 || !f.has_edge(y)) adds = true;
        }
        if (!adds) return;
        std::vector<int> key = placement_key(fresh, img);
        key.push_back(side);
        if (!seen.insert(key).second) return;
        bool clean = fresh == yp.n() - ctx.k;
        out.push_back({f.with_edges(img, n0 + fresh), kind, clean ? StepClass::NonDegenerate : StepClass::Degenerate,
                       e, img});
      };
      place_through(yp, n0, e, cb);
    }
  }
}

// Automorphism generators expressed on the canonical graph's labels.
CanonicalForm canonical_self(const CanonicalForm& cf) {
  CanonicalForm out = cf;
  const int n = cf.n;
  out.labelling.resize(n);
  std::iota(out.labelling.begin(), out.labelling.end(), 0);
  out.generators.clear();
  for (const auto& g : cf.generators) {
    std::vector<Vertex> h(n);
    for (int v = 0; v < n; ++v) h[cf.labelling[v]] = cf.labelling[g[v]];
    out.generators.push_back(h);
  }
  return out;
}

// One representative edge per orbit of the automorphism group.
std::vector<int> edge_orbit_reps(const KGraph& g, const CanonicalForm& self) {
  std::vector<int> parent(g.m());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& gen : self.generators)
    for (int i = 0; i < g.m(); ++i) {
      int j = g.edge_index(image(g.edge(i), gen));
      int a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> reps;
  for (int i = 0; i < g.m(); ++i)
    if (find(i) == i) reps.push_back(i);
  return reps;
}

void fill_structure(GrowState& s, const PairContext& ctx) {
  CopyIndex idx(s.graph, ctx);
  s.open_edge_count = static_cast<int>(idx.open_edges().size());
  s.fully_open_flower_count = static_cast<int>(detect_flowers(idx, ctx).size());
}

}  // namespace

GrowState make_state(const KGraph& g, const PairContext& ctx, int depth) {
  GrowState s;
  s.canonical = canonical_self(canonical_form(g));
  s.graph = s.canonical.graph();
  s.min_lambda = min_lambda_value(s.graph, ctx.mk_pair);
  s.depth = depth;
  fill_structure(s, ctx);
  return s;
}

std::optional<Edge> eligible_edge(const KGraph& f, const PairContext& ctx) {
  CopyIndex idx(f, ctx);
  std::vector<int> open = idx.open_edges();
  if (open.empty()) return std::nullopt;
  std::vector<char> in_flower(f.m(), 0);
  for (const Flower& fl : detect_flowers(idx, ctx))
    for (int e : fl.flower_edges) in_flower[e] = 1;
  std::vector<int> pool;
  for (int e : open)
    if (!in_flower[e]) pool.push_back(e);
  if (pool.empty()) pool = open;
  CanonicalForm cf = canonical_form(f);
  int best = -1;
  Edge best_img;
  for (int e : pool) {
    Edge img = image(f.edge(e), cf.labelling);
    if (best < 0 || img < best_img) {
      best = e;
      best_img = img;
    }
  }
  return f.edge(best);
}

std::vector<Successor> successors(const GrowState& s, const PairContext& ctx, const SuccessorOptions& opt) {
  const KGraph& f = s.graph;
  std::vector<Raw> raws;
  Gen gen{ctx, opt.max_vertices, opt.vertex_capped};
  std::optional<Edge> ee = eligible_edge(f, ctx);
  if (ctx.regime == Regime::Strict) {
    attach_h1(f, ctx, raws);
    if (ee) {
      close_e(f, *ee, gen, StepKind::CloseE, raws);
    } else {
      for (int e : edge_orbit_reps(f, s.canonical)) close_e(f, f.edge(e), gen, StepKind::CloseEClosed, raws);
    }
  } else {
    if (ee) {
      close_e_alt(f, *ee, ctx, raws);
    } else {
      for (int e : edge_orbit_reps(f, s.canonical)) close_e_alt(f, f.edge(e), ctx, raws);
    }
  }

  const Rational lam0 = lambda(f, ctx);
  std::map<std::pair<std::vector<Edge>, int>, std::size_t> index;  // (canonical edges, class) -> slot
  std::vector<Successor> out;
  for (Raw& r : raws) {
    if (!gen.viable(r.graph)) continue;
    Rational lam1 = lambda(r.graph, ctx);
    CanonicalForm cf = canonical_form(r.graph);
    auto key = std::make_pair(cf.edges, static_cast<int>(r.cls));
    if (index.count(key)) continue;
    Rational ml = min_lambda_value(r.graph, ctx.mk_pair);
    if (!(ml > -ctx.gamma)) continue;
    Successor su;
    su.state.canonical = canonical_self(cf);
    su.state.graph = su.state.canonical.graph();
    su.state.min_lambda = ml;
    su.state.depth = s.depth + 1;
    su.state.nondeg_run = r.cls == StepClass::NonDegenerate ? s.nondeg_run + 1 : 0;
    if (opt.full_state) fill_structure(su.state, ctx);
    su.step.kind = r.kind;
    su.step.cls = r.cls;
    su.step.from = s.canonical.digest;
    su.step.to = cf.digest;
    su.step.at = r.at;
    su.step.new_vertices = r.graph.n() - f.n();
    su.step.new_edges = r.graph.m() - f.m();
    su.step.attached = std::move(r.attached);
    su.step.lambda_before = lam0;
    su.step.lambda_after = lam1;
    index[key] = out.size();
    out.push_back(std::move(su));
  }
  return out;
}

bool degree_bound_empty(const PairContext& ctx) {
  const int d = ctx.h1.min_degree() + ctx.h2.min_degree() - 1;
  return Rational(d, ctx.k) > ctx.mk_pair + ctx.epsilon;
}

std::string BhatFamily::stats() const {
  std::ostringstream o;
  o << "members=" << members.size() << " expanded=" << states_expanded << " seen=" << states_seen
    << " cap_vertices=" << cap_vertices << " cap_depth=" << cap_depth << " run_cuts=" << run_cuts
    << " run_bound=" << run_bound << " cap_states=" << (cap_states ? 1 : 0) << " cap_time=" << (cap_time ? 1 : 0)
    << " root_pruned=" << (root_pruned ? 1 : 0) << " kappa_hat=" << kappa_hat
    << " min_degenerate_drop=" << (min_degenerate_drop ? min_degenerate_drop->str() : std::string("none"))
    << " kappa_violated=" << (kappa_violated ? 1 : 0) << " partial=" << (partial() ? 1 : 0);
  return o.str();
}

BhatFamily enumerate_bhat(const KGraph& h1_in, const KGraph& h2_in, const Rational& eps, const GrowLimits& limits) {
  if (h1_in.k() != h2_in.k()) throw std::invalid_argument("enumerate_bhat: uniformity mismatch");
  if (!(mk_density(h2_in).value > Rational(1))) throw std::invalid_argument("enumerate_bhat: requires m_k(H2) > 1");
  auto [h1, h2] = heart(h1_in, h2_in);
  BhatFamily fam;
  fam.ctx = PairContext::make(h1, h2, eps);
  const PairContext& ctx = fam.ctx;
  if (limits.degree_prune && degree_bound_empty(ctx)) {
    fam.root_pruned = true;
    return fam;
  }
  const auto t0 = std::chrono::steady_clock::now();
  SuccessorOptions opt;
  opt.max_vertices = limits.max_vertices;
  opt.full_state = false;
  opt.vertex_capped = &fam.cap_vertices;

  GrowState root = make_state(ctx.h1, ctx, 0);

  // Run bound: X degenerate steps fit in the lambda budget, and at most
  // 2XY+2 consecutive non-degenerate ones.
  fam.kappa_hat = limits.kappa_hat;
  if (fam.kappa_hat == Rational(0) && root.live(ctx)) {
    // Probe: breadth-first from H1 until some level shows a degenerate step.
    long scratch = 0;
    SuccessorOptions probe = opt;
    probe.vertex_capped = &scratch;
    std::vector<GrowState> level{root};
    for (int d = 0; d < 3 && fam.kappa_hat == Rational(0) && !level.empty(); ++d) {
      std::vector<GrowState> next;
      for (const GrowState& s : level)
        for (Successor& su : successors(s, ctx, probe)) {
          if (su.step.cls == StepClass::Degenerate) {
            Rational drop = su.step.lambda_before - su.step.lambda_after;
            if (fam.kappa_hat == Rational(0) || drop < fam.kappa_hat) fam.kappa_hat = drop;
          } else if (next.size() < 64) {
            next.push_back(std::move(su.state));
          }
        }
      level = std::move(next);
    }
  }
  fam.run_bound = -1;
  if (fam.kappa_hat > Rational(0)) {
    const long x = ((lambda(ctx.h1, ctx) + ctx.gamma) / fam.kappa_hat).floor();
    const long y = ctx.regime == Regime::Strict
                       ? ctx.h2.n() + static_cast<long>(ctx.h2.m() - 1) * (ctx.h1.n() - ctx.k)
                       : std::max(ctx.h1.n(), ctx.h2.n());
    fam.run_bound = 2 * x * y + 2;
  }

  // Frontier ordered by (edges, vertices, canonical edge list): every parent
  // of a state has fewer edges, so a state's depth and run are final when popped.
  using Key = std::tuple<int, int, std::vector<Edge>>;
  std::map<Key, GrowState> frontier;
  std::set<Key> done;
  auto key_of = [](const GrowState& s) { return Key{s.graph.m(), s.graph.n(), s.canonical.edges}; };
  if (root.live(ctx)) frontier.emplace(key_of(root), root);
  fam.states_seen = frontier.size();

  while (!frontier.empty()) {
    if (fam.states_expanded >= limits.max_states) {
      fam.cap_states = true;
      break;
    }
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
    if (el.count() > limits.max_seconds) {
      fam.cap_time = true;
      break;
    }
    auto it = frontier.begin();
    GrowState s = std::move(it->second);
    Key key = it->first;
    frontier.erase(it);
    done.insert(key);
    fill_structure(s, ctx);
    if (s.emitted()) fam.members.push_back(s.graph);
    ++fam.states_expanded;
    if (s.depth >= limits.max_depth) {
      ++fam.cap_depth;
      continue;
    }
    for (Successor& su : successors(s, ctx, opt)) {
      if (su.step.cls == StepClass::Degenerate) {
        Rational drop = su.step.lambda_before - su.step.lambda_after;
        if (!fam.min_degenerate_drop || drop < *fam.min_degenerate_drop) fam.min_degenerate_drop = drop;
        if (fam.kappa_hat > Rational(0) && drop < fam.kappa_hat) fam.kappa_violated = true;
      }
      if (limits.record_trace) fam.trace.push_back(su.step);
      if (fam.run_bound >= 0 && su.state.nondeg_run > fam.run_bound) {
        ++fam.run_cuts;
        continue;
      }
      Key k = key_of(su.state);
      if (done.count(k)) continue;
      auto [pos, fresh] = frontier.emplace(k, su.state);
      if (fresh) {
        ++fam.states_seen;
      } else {
        pos->second.depth = std::min(pos->second.depth, su.state.depth);
        pos->second.nondeg_run = std::min(pos->second.nondeg_run, su.state.nondeg_run);
      }
    }
  }
  std::sort(fam.members.begin(), fam.members.end(), [](const KGraph& a, const KGraph& b) {
    return canonical_form(a) < canonical_form(b);
  });
  return fam;
}

TraceReport classify_trace(const std::vector<GrowStep>& trace, const PairContext&) {
  TraceReport r;
  for (const GrowStep& st : trace) {
    auto fail = [&](const std::string& why) {
      if (r.consistent) {
        std::ostringstream o;
        o << why << ": " << to_string(st.kind) << " " << to_string(st.cls) << " +" << st.new_vertices << "v +"
          << st.new_edges << "e lambda " << st.lambda_before << " -> " << st.lambda_after;
        r.counterexample = o.str();
      }
      r.consistent = false;
    };
    if (st.new_edges < 1) fail("step adds no edge");
    if (st.cls == StepClass::NonDegenerate) {
      ++r.nondegenerate;
      if (st.lambda_after != st.lambda_before) fail("non-degenerate step changed lambda");
    } else {
      ++r.degenerate;
      Rational drop = st.lambda_before - st.lambda_after;
      if (!(drop > Rational(0))) fail("degenerate step did not decrease lambda");
      if (!r.min_drop || drop < *r.min_drop) r.min_drop = drop;
    }
  }
  return r;
}

Rational epsilon_star(const KGraph& h1, const KGraph& h2, const std::vector<Rational>& schedule,
                      const GrowLimits& limits) {
  if (schedule.empty()) throw std::invalid_argument("epsilon_star: empty schedule");
  for (const Rational& e : schedule)
    if (!(e > Rational(0))) throw std::invalid_argument("epsilon_star: every scheduled epsilon must be positive");
  BhatFamily base = enumerate_bhat(h1, h2, Rational(0), limits);
  if (base.partial()) throw std::runtime_error("epsilon_star: eps=0 run is partial (" + base.stats() + ")");
  std::vector<Rational> order = schedule;
  std::sort(order.begin(), order.end(), [](const Rational& a, const Rational& b) { return a > b; });
  std::ostringstream gaps;
  for (const Rational& e : order) {
    BhatFamily fam = enumerate_bhat(h1, h2, e, limits);
    if (fam.partial()) throw std::runtime_error("epsilon_star: run at eps=" + e.str() + " is partial");
    if (fam.members == base.members) return e;
    gaps << " eps=" << e << " extra=" << (fam.members.size() - base.members.size());
  }
  throw std::runtime_error("epsilon_star: no scheduled epsilon reproduces the eps=0 family;" + gaps.str());
}

}  // namespace hrw
