#include "hrw/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hrw {

namespace {

std::vector<std::vector<int>> by_edge(const std::vector<Copy>& cs, int m) {
  std::vector<std::vector<int>> out(m);
  for (int i = 0; i < static_cast<int>(cs.size()); ++i)
    for (int e : cs[i].edges) out[e].push_back(i);
  return out;
}

bool sorted_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string edge_str(const Edge& e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "}";
}

}  // namespace

CopyIndex::CopyIndex(const KGraph& g, const PairContext& ctx) : g_(g), regime_(ctx.regime) {
  if (g.k() != ctx.k) throw std::invalid_argument("copy index: uniformity mismatch");
  r_ = copies_of(ctx.h1, g, 1);
  l_ = copies_of(ctx.h2, g, 2);
  r_by_edge_ = by_edge(r_, g.m());
  l_by_edge_ = by_edge(l_, g.m());
  edge_alive_.assign(g.m(), 1);
  r_dead_.assign(r_.size(), 0);
  l_dead_.assign(l_.size(), 0);
}

void CopyIndex::remove_edge(int e) {
  if (!edge_alive_[e]) return;
  edge_alive_[e] = 0;
  for (int i : r_by_edge_[e]) ++r_dead_[i];
  for (int i : l_by_edge_[e]) ++l_dead_[i];
}

int CopyIndex::alive_edge_count() const {
  return static_cast<int>(std::count(edge_alive_.begin(), edge_alive_.end(), 1));
}

KGraph CopyIndex::current() const {
  std::vector<int> keep;
  for (int i = 0; i < g_.m(); ++i)
    if (edge_alive_[i]) keep.push_back(i);
  return g_.edge_subgraph(keep, false);
}

bool CopyIndex::meet_exactly(int li, int ri, int e) const {
  const auto& a = l_[li].edges;
  const auto& b = r_[ri].edges;
  int common = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else {
      if (a[i] != e || ++common > 1) return false;
      ++i;
      ++j;
    }
  }
  return common == 1;
}

bool CopyIndex::pair_closes(int e) const {
  for (int li : l_by_edge_[e]) {
    if (!l_alive(li)) continue;
    for (int ri : r_by_edge_[e])
      if (r_alive(ri) && meet_exactly(li, ri, e)) return true;
  }
  return false;
}

std::vector<char> CopyIndex::lstar_mask() const {
  std::vector<char> mask(l_.size(), 0);
  for (int li = 0; li < static_cast<int>(l_.size()); ++li) {
    if (!l_alive(li)) continue;
    bool all = true;
    for (int e : l_[li].edges) {
      bool found = false;
      for (int ri : r_by_edge_[e])
        if (r_alive(ri) && meet_exactly(li, ri, e)) { found = true; break; }
      if (!found) { all = false; break; }
    }
    mask[li] = all;
  }
  return mask;
}

std::vector<int> CopyIndex::open_edges() const {
  std::vector<int> out;
  if (regime_ == Regime::Equal) {
    for (int e = 0; e < g_.m(); ++e)
      if (edge_alive_[e] && !pair_closes(e)) out.push_back(e);
    return out;
  }
  std::vector<char> star = lstar_mask();
  std::vector<char> closed(g_.m(), 0);
  for (int li = 0; li < static_cast<int>(l_.size()); ++li)
    if (star[li])
      for (int e : l_[li].edges) closed[e] = 1;
  for (int e = 0; e < g_.m(); ++e)
    if (edge_alive_[e] && !closed[e]) out.push_back(e);
  return out;
}

bool CopyIndex::in_C() const {
  for (int e = 0; e < g_.m(); ++e)
    if (edge_alive_[e] && !pair_closes(e)) return false;
  return true;
}

bool CopyIndex::in_Cstar() const {
  std::vector<char> star = lstar_mask();
  std::vector<char> covered(g_.m(), 0);
  for (int li = 0; li < static_cast<int>(l_.size()); ++li)
    if (star[li])
      for (int e : l_[li].edges) covered[e] = 1;
  for (int e = 0; e < g_.m(); ++e)
    if (edge_alive_[e] && !covered[e]) return false;
  return true;
}

// ---------------------------------------------------------------- report

FamilyReport family_report(const KGraph& g, const PairContext& ctx) {
  if (g.k() != ctx.k) throw std::invalid_argument("family_report: uniformity mismatch");
  CopyIndex idx(g, ctx);
  FamilyReport r;
  r.in_C = idx.in_C();
  r.in_Cstar = idx.in_Cstar();
  r.open_edges = idx.open_edges();
  std::vector<char> star = idx.lstar_mask();
  for (std::size_t i = 0; i < star.size(); ++i)
    if (star[i]) r.lstar_copies.push_back(idx.l_copies()[i]);
  return r;
}

std::string FamilyReport::str(const KGraph& g) const {
  std::ostringstream o;
  o << "in_C: " << (in_C ? "true" : "false") << '\n';
  o << "in_Cstar: " << (in_Cstar ? "true" : "false") << '\n';
  o << "open_edges: " << open_edges.size();
  for (int e : open_edges) o << ' ' << edge_str(g.edge(e));
  o << '\n' << "lstar_copies: " << lstar_copies.size() << '\n';
  return o.str();
}

// ---------------------------------------------------------------- flowers

namespace {

// The attachment edge a must lie in some copy of H1 or H2 that avoids the
// flower's other edges, as it does in the graph the flower was attached to.
bool anchored(const CopyIndex& idx, int a, const std::set<int>& flower_edges) {
  auto clear = [&](const Copy& c) {
    return std::none_of(c.edges.begin(), c.edges.end(), [&](int e) { return flower_edges.count(e) > 0; });
  };
  for (int ri : idx.r_through(a))
    if (idx.r_alive(ri) && clear(idx.r_copies()[ri])) return true;
  for (int li : idx.l_through(a))
    if (idx.l_alive(li) && clear(idx.l_copies()[li])) return true;
  return false;
}

std::vector<Flower> strict_flowers(const CopyIndex& idx, const PairContext& ctx) {
  const KGraph& g = idx.base();
  const int k = ctx.k;
  const int v1 = ctx.h1.n(), e1 = ctx.h1.m(), v2 = ctx.h2.n(), e2 = ctx.h2.m();
  const int want_v = (v2 - k) + (e2 - 1) * (v1 - k);
  const int want_e = (e2 - 1) * e1;
  std::vector<Flower> out;
  for (int li = 0; li < static_cast<int>(idx.l_copies().size()); ++li) {
    if (!idx.l_alive(li)) continue;
    const Copy& L = idx.l_copies()[li];
    for (int a : L.edges) {
      const Edge& att = g.edge(a);
      std::vector<char> is_att(g.n(), 0), in_c(g.n(), 0);
      for (Vertex v : att) is_att[v] = 1;
      std::vector<Vertex> stack;
      for (Vertex v : L.vertices)
        if (!is_att[v]) { in_c[v] = 1; stack.push_back(v); }
      std::set<int> ec;
      bool too_big = false;
      while (!stack.empty() && !too_big) {
        Vertex v = stack.back();
        stack.pop_back();
        for (int ei : g.incidence()[v]) {
          if (!idx.edge_alive(ei)) continue;
          ec.insert(ei);
          for (Vertex u : g.edge(ei))
            if (!is_att[u] && !in_c[u]) { in_c[u] = 1; stack.push_back(u); }
        }
        too_big = static_cast<int>(ec.size()) > want_e;
      }
      std::vector<Vertex> internal;
      for (Vertex v = 0; v < g.n(); ++v)
        if (in_c[v]) internal.push_back(v);
      if (too_big || static_cast<int>(internal.size()) != want_v || static_cast<int>(ec.size()) != want_e) continue;

      std::vector<int> core_edges;
      for (int e : L.edges)
        if (e != a) core_edges.push_back(e);
      std::vector<std::vector<int>> cand(core_edges.size());
      bool dead_end = false;
      for (std::size_t j = 0; j < core_edges.size() && !dead_end; ++j) {
        const Edge& ep = g.edge(core_edges[j]);
        for (int ri : idx.r_through(core_edges[j])) {
          if (!idx.r_alive(ri)) continue;
          const Copy& R = idx.r_copies()[ri];
          std::vector<Vertex> meet;
          std::set_intersection(R.vertices.begin(), R.vertices.end(), L.vertices.begin(), L.vertices.end(),
                                std::back_inserter(meet));
          if (meet != ep) continue;
          bool inside = std::all_of(R.vertices.begin(), R.vertices.end(), [&](Vertex v) { return in_c[v] || is_att[v]; });
          if (inside) cand[j].push_back(ri);
        }
        dead_end = cand[j].empty();
      }
      if (dead_end) continue;
      std::vector<int> choice(core_edges.size(), -1);
      std::function<bool(std::size_t)> pick = [&](std::size_t j) -> bool {
        if (j == core_edges.size()) return true;
        for (int ri : cand[j]) {
          const Copy& R = idx.r_copies()[ri];
          bool ok = true;
          for (std::size_t t = 0; t < j && ok; ++t) {
            const Copy& S = idx.r_copies()[choice[t]];
            std::vector<Vertex> meet, shared;
            std::set_intersection(R.vertices.begin(), R.vertices.end(), S.vertices.begin(), S.vertices.end(),
                                  std::back_inserter(meet));
            const Edge& x = g.edge(core_edges[j]);
            const Edge& y = g.edge(core_edges[t]);
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(shared));
            ok = meet == shared;
          }
          if (!ok) continue;
          choice[j] = ri;
          if (pick(j + 1)) return true;
        }
        return false;
      };
      if (!pick(0)) continue;

      std::set<int> uni(core_edges.begin(), core_edges.end());
      for (int ri : choice) uni.insert(idx.r_copies()[ri].edges.begin(), idx.r_copies()[ri].edges.end());
      if (uni != ec) continue;
      if (!anchored(idx, a, ec)) continue;

      Flower f;
      f.attachment_edge = att;
      f.core = L;
      for (int ri : choice) f.petals.push_back(idx.r_copies()[ri]);
      f.internal_vertices = internal;
      f.flower_edges.assign(ec.begin(), ec.end());
      for (int e : f.flower_edges)
        if (!std::binary_search(L.edges.begin(), L.edges.end(), e)) f.petal_edges.push_back(e);
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<Flower> equal_flowers(const CopyIndex& idx, const PairContext&) {
  const KGraph& g = idx.base();
  std::vector<Flower> out;
  std::set<std::vector<int>> seen_copies;
  // J is a copy of one pattern; the copy it closes against (E(X) = E(J) meet
  // in exactly a) comes from the other pattern's list.
  auto scan = [&](const std::vector<Copy>& cs, auto alive, const std::vector<Copy>& other, auto other_alive,
                  auto other_through) {
    for (int ci = 0; ci < static_cast<int>(cs.size()); ++ci) {
      if (!alive(ci)) continue;
      const Copy& J = cs[ci];
      if (!seen_copies.insert(J.edges).second) continue;
      for (int a : J.edges) {
        const Edge& att = g.edge(a);
        std::vector<Vertex> internal;
        std::set_difference(J.vertices.begin(), J.vertices.end(), att.begin(), att.end(), std::back_inserter(internal));
        std::set<int> touching;
        for (Vertex v : internal)
          for (int ei : g.incidence()[v])
            if (idx.edge_alive(ei)) touching.insert(ei);
        std::vector<int> expect;
        for (int e : J.edges)
          if (e != a) expect.push_back(e);
        if (std::vector<int>(touching.begin(), touching.end()) != expect) continue;
        bool closes = false;
        for (int xi : other_through(a)) {
          if (!other_alive(xi)) continue;
          std::vector<int> meet;
          const Copy& X = other[xi];
          std::set_intersection(X.edges.begin(), X.edges.end(), J.edges.begin(), J.edges.end(),
                                std::back_inserter(meet));
          if (meet.size() == 1) {
            closes = true;
            break;
          }
        }
        if (!closes) continue;
        Flower f;
        f.attachment_edge = att;
        f.core = J;
        f.internal_vertices = internal;
        f.petal_edges = expect;
        f.flower_edges = expect;
        out.push_back(std::move(f));
      }
    }
  };
  auto r_alive = [&](int i) { return idx.r_alive(i); };
  auto l_alive = [&](int i) { return idx.l_alive(i); };
  auto r_through = [&](int e) -> const std::vector<int>& { return idx.r_through(e); };
  auto l_through = [&](int e) -> const std::vector<int>& { return idx.l_through(e); };
  scan(idx.r_copies(), r_alive, idx.l_copies(), l_alive, l_through);
  scan(idx.l_copies(), l_alive, idx.r_copies(), r_alive, r_through);
  return out;
}

}  // namespace

std::vector<Flower> detect_flowers(const CopyIndex& idx, const PairContext& ctx) {
  std::vector<Flower> raw = idx.regime() == Regime::Strict ? strict_flowers(idx, ctx) : equal_flowers(idx, ctx);
  std::set<std::pair<Edge, std::vector<Vertex>>> seen;
  std::vector<Flower> out;
  for (Flower& f : raw)
    if (seen.insert({f.attachment_edge, f.internal_vertices}).second) out.push_back(std::move(f));
  return out;
}

std::vector<Flower> detect_flowers(const KGraph& f, const PairContext& ctx) {
  return detect_flowers(CopyIndex(f, ctx), ctx);
}

bool flowers_overlap(const std::vector<Flower>& fl) {
  for (std::size_t i = 0; i < fl.size(); ++i)
    for (std::size_t j = i + 1; j < fl.size(); ++j) {
      std::vector<Vertex> meet;
      std::set_intersection(fl[i].internal_vertices.begin(), fl[i].internal_vertices.end(),
                            fl[j].internal_vertices.begin(), fl[j].internal_vertices.end(), std::back_inserter(meet));
      if (!meet.empty()) return true;
    }
  return false;
}

std::string Flower::str(const KGraph& g) const {
  std::ostringstream o;
  o << "attachment " << edge_str(attachment_edge) << " internal [";
  for (std::size_t i = 0; i < internal_vertices.size(); ++i) o << (i ? " " : "") << internal_vertices[i];
  o << "] petal_edges";
  for (int e : petal_edges) o << ' ' << edge_str(g.edge(e));
  return o.str();
}

// ---------------------------------------------------------------- S^B_G, T^B_G

SBFamily sb_family(const KGraph& g, const std::vector<KGraph>& bhat) {
  std::vector<Copy> all;
  for (int i = 0; i < static_cast<int>(bhat.size()); ++i) {
    if (bhat[i].k() != g.k()) throw std::invalid_argument("sb_family: uniformity mismatch");
    if (bhat[i].m() == 0) continue;
    std::vector<Copy> cs = copies_of(bhat[i], g, i);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  SBFamily s;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      if (i == j || all[j].edges.size() < all[i].edges.size()) continue;
      bool proper = all[j].edges.size() > all[i].edges.size() || all[j].vertices.size() > all[i].vertices.size();
      dominated = proper && sorted_subset(all[i].edges, all[j].edges) && sorted_subset(all[i].vertices, all[j].vertices);
    }
    if (!dominated) s.members.push_back(all[i]);
  }
  std::sort(s.members.begin(), s.members.end());
  s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  s.per_edge_count.assign(g.m(), 0);
  for (const Copy& c : s.members)
    for (int e : c.edges) ++s.per_edge_count[e];
  return s;
}

BhatClass classify_bhat_graph(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat) {
  SBFamily s = sb_family(g, bhat);
  for (int e = 0; e < g.m(); ++e)
    if (s.per_edge_count[e] != 1) return NotBhatGraph{e};
  std::vector<int> owner(g.m(), -1);
  for (int i = 0; i < static_cast<int>(s.members.size()); ++i)
    for (int e : s.members[i].edges) owner[e] = i;
  for (const KGraph* h : {&ctx.h1, &ctx.h2}) {
    int pattern = h == &ctx.h1 ? 1 : 2;
    for (const Copy& c : copies_of(*h, g, pattern)) {
      std::set<int> touched;
      for (int e : c.edges) touched.insert(owner[e]);
      if (touched.size() >= 2) return BhatNotSparse{c};
    }
  }
  return BhatSparse{};
}

}  // namespace hrw
