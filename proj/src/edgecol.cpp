#include "hrw/edgecol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hrw/closure.hpp"

namespace hrw {

namespace {

Edge image(const Edge& e, const std::vector<Vertex>& lab) {
  Edge out;
  out.reserve(e.size());
  for (Vertex v : e) out.push_back(lab[v]);
  std::sort(out.begin(), out.end());
  return out;
}

bool meets_exactly(const std::vector<int>& a, const std::vector<int>& b, int e) {
  std::size_t i = 0, j = 0;
  bool seen = false;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      if (a[i] != e) return false;
      seen = true;
      ++i;
      ++j;
    }
  }
  return seen;
}

// Position of every edge of g in the order of its canonical images. All
// "any" choices below take the first candidate in this order.
std::vector<int> canonical_rank(const KGraph& g) {
  CanonicalForm cf = canonical_form(g);
  std::vector<int> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Edge> img(g.m());
  for (int e = 0; e < g.m(); ++e) img[e] = image(g.edge(e), cf.labelling);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return img[a] < img[b]; });
  std::vector<int> rank(g.m());
  for (int i = 0; i < g.m(); ++i) rank[order[i]] = i;
  return rank;
}

void sort_by_rank(std::vector<Copy>& cs, const std::vector<int>& rank) {
  auto key = [&](const Copy& c) {
    std::vector<int> k;
    for (int e : c.edges) k.push_back(rank[e]);
    std::sort(k.begin(), k.end());
    return k;
  };
  std::vector<std::pair<std::vector<int>, Copy>> tmp;
  for (Copy& c : cs) tmp.emplace_back(key(c), std::move(c));
  std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  cs.clear();
  for (auto& t : tmp) cs.push_back(std::move(t.second));
}

// Copies of H1 (R) and H2 (L) in a fixed graph with edges switched on and
// off; a copy is present when none of its edges is missing.
struct Families {
  std::vector<Copy> r, l;
  std::vector<std::vector<int>> r_by_edge, l_by_edge;
  std::vector<char> present;
  std::vector<int> r_missing;

  Families(const KGraph& g, const PairContext& ctx, const std::vector<int>& rank)
      : r(copies_of(ctx.h1, g, 1)), l(copies_of(ctx.h2, g, 2)), r_by_edge(g.m()), l_by_edge(g.m()),
        present(g.m(), 1), r_missing(0) {
    sort_by_rank(r, rank);
    sort_by_rank(l, rank);
    for (int i = 0; i < static_cast<int>(r.size()); ++i)
      for (int e : r[i].edges) r_by_edge[e].push_back(i);
    for (int i = 0; i < static_cast<int>(l.size()); ++i)
      for (int e : l[i].edges) l_by_edge[e].push_back(i);
    r_missing.assign(r.size(), 0);
  }

  void remove(int e) {
    present[e] = 0;
    for (int ri : r_by_edge[e]) ++r_missing[ri];
  }
  void add(int e) {
    present[e] = 1;
    for (int ri : r_by_edge[e]) --r_missing[ri];
  }
  // Some present R meets L_li exactly in e.
  bool has_unique_r(int li, int e) const {
    for (int ri : r_by_edge[e])
      if (r_missing[ri] == 0 && meets_exactly(l[li].edges, r[ri].edges, e)) return true;
    return false;
  }
};

KGraph present_graph(const KGraph& g, const std::vector<char>& present, std::vector<int>* ids) {
  std::vector<int> keep;
  for (int e = 0; e < g.m(); ++e)
    if (present[e]) keep.push_back(e);
  if (ids) *ids = keep;
  return g.edge_subgraph(keep, false);
}

bool is_sparse_bhat_graph(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat) {
  if (g.m() == 0) return true;
  // Members lie in C* (strict) or C (equal), and both classes are closed
  // under unions that keep every copy, so the cheap test goes first.
  CopyIndex idx(g, ctx);
  if (ctx.regime == Regime::Strict ? !idx.in_Cstar() : !idx.in_C()) return false;
  return std::holds_alternative<BhatSparse>(classify_bhat_graph(g, ctx, bhat));
}

}  // namespace

// ---------------------------------------------------------------- book

ColouringBook::ColouringBook(KGraph h1, KGraph h2, bool search_missing)
    : h1_(std::move(h1)), h2_(std::move(h2)), search_missing_(search_missing) {}

void ColouringBook::add(const KGraph& g, const Colouring& c) {
  if (!is_valid_colouring(g, {h1_, h2_}, c)) throw std::invalid_argument("colouring book: colouring is not valid");
  CanonicalForm cf = canonical_form(g);
  std::vector<int> col(g.m());
  for (int e = 0; e < g.m(); ++e) {
    Edge img = image(g.edge(e), cf.labelling);
    auto it = std::lower_bound(cf.edges.begin(), cf.edges.end(), img);
    col[it - cf.edges.begin()] = c.colour[e];
  }
  book_[cf.edges] = std::move(col);
}

bool ColouringBook::contains(const KGraph& g) const { return book_.count(canonical_form(g).edges) > 0; }

Colouring ColouringBook::colouring_for(const KGraph& g) {
  CanonicalForm cf = canonical_form(g);
  auto it = book_.find(cf.edges);
  if (it == book_.end()) {
    if (!search_missing_) throw std::runtime_error("colouring book: no colouring stored for a needed member");
    std::optional<Colouring> c = valid_colouring(g, h1_, h2_);
    if (!c) throw std::runtime_error("colouring book: member arrows (H1, H2), no valid colouring exists");
    ++searches_;
    add(g, *c);
    return *c;
  }
  Colouring out;
  out.colour.resize(g.m());
  for (int e = 0; e < g.m(); ++e) {
    Edge img = image(g.edge(e), cf.labelling);
    out.colour[e] = it->second[std::lower_bound(cf.edges.begin(), cf.edges.end(), img) - cf.edges.begin()];
  }
  return out;
}

// ---------------------------------------------------------------- B-Colour

Colouring b_colour(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat, ColouringBook& book) {
  if (!is_sparse_bhat_graph(g, ctx, bhat)) throw std::invalid_argument("b_colour: not an (H1,H2)-sparse B-hat-graph");
  Colouring out;
  out.colour.assign(g.m(), -1);
  SBFamily sb = sb_family(g, bhat);
  for (const Copy& s : sb.members) {
    const KGraph& member = bhat[s.pattern];
    Colouring local = book.colouring_for(member);
    for (int j = 0; j < member.m(); ++j) {
      Edge host;
      for (Vertex v : member.edge(j)) host.push_back(s.map[v]);
      out.colour[g.edge_index(make_edge(host))] = local.colour[j];
    }
  }
  if (std::count(out.colour.begin(), out.colour.end(), -1) > 0)
    throw std::logic_error("b_colour: an edge lies in no member");
  if (!is_valid_colouring(g, {ctx.h1, ctx.h2}, out)) throw std::logic_error("b_colour: union of member colourings is not valid");
  return out;
}

// ---------------------------------------------------------------- Asym-Edge-Col

EdgeColResult asym_edge_col(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat,
                            ColouringBook& book) {
  if (g.k() != ctx.k) throw std::invalid_argument("asym_edge_col: uniformity mismatch");
  const std::vector<int> rank = canonical_rank(g);
  std::vector<int> edge_order(g.m());
  for (int e = 0; e < g.m(); ++e) edge_order[rank[e]] = e;

  Families fam(g, ctx, rank);
  std::vector<char> in_list(fam.l.size(), 1);  // the list of H2-copies not yet pushed
  std::vector<StackItem> stack;
  EdgeColResult res;

  auto removable = [&](int e) {
    for (int li : fam.l_by_edge[e])
      if (in_list[li] && fam.has_unique_r(li, e)) return false;
    return true;
  };

  while (true) {
    KGraph current = present_graph(g, fam.present, nullptr);
    if (is_sparse_bhat_graph(current, ctx, bhat)) break;

    int chosen = -1;
    for (int e : edge_order)
      if (fam.present[e] && removable(e)) {
        chosen = e;
        break;
      }
    if (chosen >= 0) {
      for (int li : fam.l_by_edge[chosen])
        if (in_list[li]) {
          stack.push_back({StackItem::Kind::LCopy, li});
          in_list[li] = 0;
          ++res.stats.l_pushed_with_edge;
        }
      stack.push_back({StackItem::Kind::Edge, chosen});
      fam.remove(chosen);
      ++res.stats.edges_removed;
      continue;
    }

    int lstar_fail = -1;
    for (int li = 0; li < static_cast<int>(fam.l.size()) && lstar_fail < 0; ++li) {
      if (!in_list[li]) continue;
      for (int e : fam.l[li].edges)
        if (!fam.has_unique_r(li, e)) {
          lstar_fail = li;
          break;
        }
    }
    if (lstar_fail >= 0) {
      stack.push_back({StackItem::Kind::LCopy, lstar_fail});
      in_list[lstar_fail] = 0;
      ++res.stats.l_pushed_alone;
      continue;
    }

    StuckReport st;
    st.residual = present_graph(g, fam.present, &st.edges);
    st.family = family_report(st.residual, ctx);
    std::ostringstream d;
    d << "stuck: no removable edge and every listed H2-copy is in L*; " << st.edges.size() << " of " << g.m()
      << " edges remain";
    if (!st.family.in_C || !st.family.in_Cstar) throw std::logic_error("asym_edge_col: stuck residual is not in C*");
    st.diagnostics = d.str();
    res.outcome = std::move(st);
    return res;
  }

  Colouring col;
  col.colour.assign(g.m(), -1);
  {
    std::vector<int> ids;
    KGraph residual = present_graph(g, fam.present, &ids);
    if (!ids.empty()) {
      Colouring part = b_colour(residual, ctx, bhat, book);
      for (std::size_t j = 0; j < ids.size(); ++j) col.colour[ids[j]] = part.colour[j];
      res.stats.b_colour_members = static_cast<int>(sb_family(residual, bhat).members.size());
    }
  }

  while (!stack.empty()) {
    StackItem it = stack.back();
    stack.pop_back();
    if (it.kind == StackItem::Kind::Edge) {
      fam.add(it.index);
      col.colour[it.index] = kBlue;
      continue;
    }
    const Copy& L = fam.l[it.index];
    bool all_blue = std::all_of(L.edges.begin(), L.edges.end(), [&](int e) { return col.colour[e] == kBlue; });
    if (!all_blue) continue;
    int f = -1;
    std::vector<int> cand = L.edges;
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return rank[a] < rank[b]; });
    for (int e : cand)
      if (!fam.has_unique_r(it.index, e)) {
        f = e;
        break;
      }
    if (f < 0) throw std::logic_error("asym_edge_col: all-blue H2-copy without a swappable edge");
    col.colour[f] = kRed;
    ++res.stats.swaps;
  }

  if (!is_valid_colouring(g, {ctx.h1, ctx.h2}, col))
    throw std::logic_error("asym_edge_col: produced colouring fails verification");
  res.outcome = std::move(col);
  return res;
}

// ---------------------------------------------------------------- Special

std::optional<SpecialResult> special(const KGraph& g, const std::vector<KGraph>& bhat, const PairContext& ctx) {
  SBFamily sb = sb_family(g, bhat);
  const std::vector<int> rank = canonical_rank(g);
  auto finish = [&](int branch, std::vector<int> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    SpecialResult r;
    r.branch = branch;
    r.graph = g.edge_subgraph(edges, true);
    r.edges = std::move(edges);
    return r;
  };

  const bool all_one = std::all_of(sb.per_edge_count.begin(), sb.per_edge_count.end(), [](int c) { return c == 1; });
  if (all_one && g.m() > 0) {
    std::vector<int> owner(g.m(), -1);
    for (int i = 0; i < static_cast<int>(sb.members.size()); ++i)
      for (int e : sb.members[i].edges) owner[e] = i;
    std::vector<Copy> ts = copies_of(ctx.h1, g, 1);
    std::vector<Copy> t2 = copies_of(ctx.h2, g, 2);
    ts.insert(ts.end(), t2.begin(), t2.end());
    sort_by_rank(ts, rank);
    for (const Copy& t : ts) {
      std::vector<int> touched;
      for (int e : t.edges) touched.push_back(owner[e]);
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      if (touched.size() < 2) continue;
      std::vector<int> edges;
      for (int m : touched) edges.insert(edges.end(), sb.members[m].edges.begin(), sb.members[m].edges.end());
      return finish(1, std::move(edges));
    }
  }

  int best = -1;
  for (int e = 0; e < g.m(); ++e)
    if (sb.per_edge_count[e] >= 2 && (best < 0 || rank[e] < rank[best])) best = e;
  if (best >= 0) {
    std::vector<int> edges;
    int taken = 0;
    for (const Copy& s : sb.members) {
      if (!std::binary_search(s.edges.begin(), s.edges.end(), best)) continue;
      edges.insert(edges.end(), s.edges.begin(), s.edges.end());
      if (++taken == 2) break;
    }
    return finish(2, std::move(edges));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Grow

std::vector<Vertex> minimising_subgraph(const KGraph& f, const PairContext& ctx) {
  if (f.m() == 0) throw std::invalid_argument("minimising_subgraph: graph has no edges");
  const std::int64_t gain = ctx.mk_pair.den(), cost = ctx.mk_pair.num();
  std::int64_t best = 0;
  std::vector<ClosureResult> per_edge;
  for (int i = 0; i < f.m(); ++i) {
    per_edge.push_back(max_closure(f, gain, cost, f.edge(i)));
    if (i == 0 || per_edge.back().value > best) best = per_edge.back().value;
  }
  if (best < 0) throw std::invalid_argument("minimising_subgraph: minimum lambda is positive");
  // With min lambda <= 0 minimisers are closed under union, so the union of
  // all of them is the unique maximal one.
  std::vector<char> in(f.n(), 0);
  for (const ClosureResult& c : per_edge)
    if (c.value == best)
      for (Vertex v : c.vertices) in[v] = 1;
  for (Vertex v = 0; v < f.n(); ++v) {
    if (in[v]) continue;
    std::vector<Vertex> forced;
    for (Vertex u = 0; u < f.n(); ++u)
      if (in[u] || u == v) forced.push_back(u);
    ClosureResult c = max_closure(f, gain, cost, forced);
    if (c.value == best)
      for (Vertex u : c.vertices) in[u] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < f.n(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

namespace {

class Grower {
 public:
  Grower(const KGraph& g, const PairContext& ctx, const std::vector<int>& rank)
      : g_(g), ctx_(ctx), fam_(g, ctx, rank), in_e_(g.m(), 0), in_v_(g.n(), 0) {
    lstar_.assign(fam_.l.size(), 0);
    for (int li = 0; li < static_cast<int>(fam_.l.size()); ++li) {
      bool all = true;
      for (int e : fam_.l[li].edges) all = all && fam_.has_unique_r(li, e);
      lstar_[li] = all;
    }
  }

  const Families& fam() const { return fam_; }

  void add_copy(const Copy& c) {
    for (int e : c.edges) in_e_[e] = 1;
    for (Vertex v : c.vertices) in_v_[v] = 1;
  }
  bool contains(const Copy& c) const {
    return std::all_of(c.edges.begin(), c.edges.end(), [&](int e) { return in_e_[e] != 0; });
  }
  int shared_vertices(const Copy& c) const {
    int s = 0;
    for (Vertex v : c.vertices) s += in_v_[v];
    return s;
  }
  // V(c) meets the current graph in exactly the vertices of edge e.
  bool meets_only_in(const Copy& c, int e) const {
    const Edge& ev = g_.edge(e);
    for (Vertex v : c.vertices)
      if (in_v_[v] && !std::binary_search(ev.begin(), ev.end(), v)) return false;
    return true;
  }

  std::vector<int> edges() const {
    std::vector<int> out;
    for (int e = 0; e < g_.m(); ++e)
      if (in_e_[e]) out.push_back(e);
    return out;
  }
  int vertex_count() const { return static_cast<int>(std::count(in_v_.begin(), in_v_.end(), 1)); }

  // F as a compact graph plus the map from its vertex ids to g's.
  KGraph graph(std::vector<Vertex>* verts) const {
    KGraph f = g_.edge_subgraph(edges(), true);
    if (verts) {
      verts->clear();
      for (Vertex v = 0; v < g_.n(); ++v)
        if (in_v_[v]) verts->push_back(v);
    }
    return f;
  }

  // The edge Eligible-Edge picks in F, as an edge index of g.
  std::optional<int> eligible() const {
    std::vector<Vertex> verts;
    KGraph f = graph(&verts);
    std::optional<Edge> ee = eligible_edge(f, ctx_);
    if (!ee) return std::nullopt;
    Edge host;
    for (Vertex v : *ee) host.push_back(verts[v]);
    return g_.edge_index(make_edge(host));
  }

  bool lstar(int li) const { return lstar_[li] != 0; }

 private:
  const KGraph& g_;
  const PairContext& ctx_;
  Families fam_;
  std::vector<char> in_e_, in_v_;
  std::vector<char> lstar_;
};

std::vector<Edge> edge_list(const KGraph& g, const std::vector<int>& ids) {
  std::vector<Edge> out;
  for (int e : ids) out.push_back(g.edge(e));
  return out;
}

}  // namespace

GrowRun grow_runtime(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat, long n_param) {
  if (g.k() != ctx.k) throw std::invalid_argument("grow_runtime: uniformity mismatch");
  if (n_param <= 0) n_param = static_cast<long>(g.n()) * g.n();
  const double cap = std::log(static_cast<double>(std::max<long>(n_param, 1)));
  const std::vector<int> rank = canonical_rank(g);
  SBFamily sb = sb_family(g, bhat);

  int seed_edge = -1;
  for (int e = 0; e < g.m(); ++e)
    if (sb.per_edge_count[e] == 0 && (seed_edge < 0 || rank[e] < rank[seed_edge])) seed_edge = e;
  if (seed_edge < 0) throw std::invalid_argument("grow_runtime: every edge lies in an S^B member");

  Grower F(g, ctx, rank);
  const Families& fam = F.fam();
  int seed = -1;
  for (int ri = 0; ri < static_cast<int>(fam.r.size()) && seed < 0; ++ri)
    if (std::binary_search(fam.r[ri].edges.begin(), fam.r[ri].edges.end(), seed_edge)) seed = ri;
  if (seed < 0) throw std::invalid_argument("grow_runtime: seed edge lies in no copy of H1 (input not in C)");
  F.add_copy(fam.r[seed]);

  GrowRun run;
  run.seed_edges = F.edges();
  run.path.push_back(run.seed_edges);
  auto whole_lambda = [&] { return lambda_value(F.vertex_count(), static_cast<int>(F.edges().size()), ctx.mk_pair); };
  auto min_lambda = [&] { return min_lambda_value(F.graph(nullptr), ctx.mk_pair); };

  while (run.iterations < cap && min_lambda() > -ctx.gamma) {
    GrowStep st;
    st.lambda_before = whole_lambda();
    const int v_before = F.vertex_count();
    const std::vector<int> e_before = F.edges();
    const int m_before = static_cast<int>(e_before.size());

    bool done = false;
    if (ctx.regime == Regime::Strict) {
      for (const Copy& R : fam.r) {
        if (F.contains(R) || F.shared_vertices(R) < ctx.k) continue;
        st.kind = StepKind::AttachH1;
        st.cls = StepClass::Degenerate;
        F.add_copy(R);
        done = true;
        break;
      }
    }
    if (!done) {
      std::optional<int> e = F.eligible();
      if (!e) throw std::logic_error("grow_runtime: no open edge in F");
      st.at = g.edge(*e);
      if (ctx.regime == Regime::Strict) {
        int L = -1;
        for (int li : fam.l_by_edge[*e])
          if (F.lstar(li) && (L < 0 || li < L)) L = li;
        if (L < 0) throw std::logic_error("grow_runtime: eligible edge lies in no L* copy");
        const Copy& lc = fam.l[L];
        bool nondeg = F.meets_only_in(lc, *e);
        std::vector<int> fresh;
        for (int x : lc.edges)
          if (!std::binary_search(e_before.begin(), e_before.end(), x)) fresh.push_back(x);
        std::sort(fresh.begin(), fresh.end(), [&](int a, int b) { return rank[a] < rank[b]; });
        F.add_copy(lc);
        for (int x : fresh) {
          int R = -1;
          for (int ri : fam.r_by_edge[x])
            if (meets_exactly(lc.edges, fam.r[ri].edges, x) && (R < 0 || ri < R)) R = ri;
          if (R < 0) throw std::logic_error("grow_runtime: no H1-copy meets L exactly in a new edge");
          nondeg = nondeg && F.meets_only_in(fam.r[R], x);
          F.add_copy(fam.r[R]);
        }
        st.kind = StepKind::CloseE;
        st.cls = nondeg ? StepClass::NonDegenerate : StepClass::Degenerate;
      } else {
        // Extend: a pair (L, R) meeting exactly in e with one side already in F.
        const Copy* add = nullptr;
        bool add_is_l = false;
        for (int li : fam.l_by_edge[*e]) {
          for (int ri : fam.r_by_edge[*e]) {
            if (!meets_exactly(fam.l[li].edges, fam.r[ri].edges, *e)) continue;
            const bool l_in = F.contains(fam.l[li]), r_in = F.contains(fam.r[ri]);
            if (!l_in && !r_in) continue;
            add_is_l = !l_in;
            add = add_is_l ? &fam.l[li] : &fam.r[ri];
            break;
          }
          if (add) break;
        }
        if (!add) throw std::logic_error("grow_runtime: Extend found no pair at the eligible edge");
        const bool nondeg = F.meets_only_in(*add, *e);
        F.add_copy(*add);
        st.kind = add_is_l ? StepKind::CloseEAltL : StepKind::CloseEAltR;
        st.cls = nondeg ? StepClass::NonDegenerate : StepClass::Degenerate;
      }
    }

    const std::vector<int> e_after = F.edges();
    st.new_vertices = F.vertex_count() - v_before;
    st.new_edges = static_cast<int>(e_after.size()) - m_before;
    if (st.new_edges < 1) throw std::logic_error("grow_runtime: iteration added no edge");
    std::vector<int> added;
    std::set_difference(e_after.begin(), e_after.end(), e_before.begin(), e_before.end(), std::back_inserter(added));
    st.attached = edge_list(g, added);
    st.lambda_after = whole_lambda();
    run.trace.push_back(std::move(st));
    run.path.push_back(e_after);
    ++run.iterations;
  }

  run.final_edges = F.edges();
  KGraph f = F.graph(nullptr);
  if (run.iterations >= cap) {
    run.via_iteration_cap = true;
    run.output = f;
  } else {
    run.output = f.induced(minimising_subgraph(f, ctx));
  }
  run.output_lambda = lambda(run.output, ctx);
  return run;
}

// ---------------------------------------------------------------- pipeline

PipelineResult run_pipeline(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat,
                            ColouringBook& book, long n_param) {
  PipelineResult p{asym_edge_col(g, ctx, bhat, book), std::nullopt, std::nullopt};
  if (!p.edgecol.stuck()) return p;
  const StuckReport& st = std::get<StuckReport>(p.edgecol.outcome);
  p.special = special(st.residual, bhat, ctx);
  if (!p.special) p.grow = grow_runtime(st.residual, ctx, bhat, n_param > 0 ? n_param : static_cast<long>(g.n()) * g.n());
  return p;
}

}  // namespace hrw
