#include "hrw/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hrw/structure.hpp"

namespace hrw {

namespace {

Edge image(const Edge& e, const std::vector<Vertex>& map) {
  Edge out;
  out.reserve(e.size());
  for (Vertex v : e) out.push_back(map[v]);
  std::sort(out.begin(), out.end());
  return out;
}

bool intersects(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return !out.empty();
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string edge_str(const Edge& e) {
  std::ostringstream os;
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  return os.str();
}

void check_uniformity(const KGraph& f, const KGraph& h1, const KGraph& h2) {
  if (f.k() != h1.k() || h1.k() != h2.k()) throw std::invalid_argument("attachment: uniformity mismatch");
  if (h1.m() == 0 || h2.m() == 0) throw std::invalid_argument("attachment: empty pattern");
}

}  // namespace

std::vector<Vertex> AttachmentInstance::inner_vertex_set() const { return sorted_unique(inner_map); }

std::string AttachmentInstance::str() const {
  std::ostringstream os;
  os << "J: v=" << composite.n() << " e=" << composite.m() << " v+=" << v_plus() << " e+=" << e_plus()
     << (star ? " star" : " non-star") << "\n";
  os << "inner:";
  for (const Edge& e : inner_edges) os << " {" << edge_str(e) << "}";
  os << "\n";
  for (std::size_t t = 0; t < outer_vertices.size(); ++t) {
    os << "  at {" << edge_str(inner_edges[t]) << "}: U = {" << edge_str(outer_vertices[t]) << "} D =";
    for (const Edge& e : outer_edges[t]) os << " {" << edge_str(e) << "}";
    os << "\n";
  }
  return os.str();
}

AttachmentInstance make_attachment(const KGraph& f, int anchor, const KGraph& h1, const KGraph& h2,
                                   const std::vector<Vertex>& inner_map,
                                   const std::vector<std::vector<Vertex>>& outer_maps) {
  check_uniformity(f, h1, h2);
  if (anchor < 0 || anchor >= f.m()) throw std::invalid_argument("attachment: anchor is not an edge of F");
  const Edge& hat = f.edge(anchor);
  const int vf = f.n();
  auto injective = [](const std::vector<Vertex>& m) { return sorted_unique(m).size() == m.size(); };

  if (static_cast<int>(inner_map.size()) != h2.n() || !injective(inner_map))
    throw std::invalid_argument("attachment: inner map must be injective on V(H2)");
  for (Vertex v : inner_map)
    if (v < 0 || (v < vf && !std::binary_search(hat.begin(), hat.end(), v)))
      throw std::invalid_argument("attachment: the inner copy meets F outside the anchor");
  int on_anchor = -1;
  for (int i = 0; i < h2.m(); ++i)
    if (image(h2.edge(i), inner_map) == hat) on_anchor = i;
  if (on_anchor < 0) throw std::invalid_argument("attachment: no edge of the inner copy lies on the anchor");

  AttachmentInstance inst;
  inst.base = f;
  inst.anchor = anchor;
  inst.inner_map = inner_map;
  for (int i = 0; i < h2.m(); ++i)
    if (i != on_anchor) inst.inner_edges.push_back(image(h2.edge(i), inner_map));
  if (outer_maps.size() != inst.inner_edges.size())
    throw std::invalid_argument("attachment: need one outer map per inner edge");

  std::set<Edge> blocked(f.edges().begin(), f.edges().end());
  for (const Edge& e : inst.inner_edges) blocked.insert(e);
  std::vector<Edge> all_edges;
  for (const Edge& e : inst.inner_edges) all_edges.push_back(e);
  all_edges.push_back(hat);
  int max_id = vf - 1;
  for (Vertex v : inner_map) max_id = std::max(max_id, v);

  for (std::size_t t = 0; t < outer_maps.size(); ++t) {
    const auto& m = outer_maps[t];
    const Edge& fe = inst.inner_edges[t];
    if (static_cast<int>(m.size()) != h1.n() || !injective(m))
      throw std::invalid_argument("attachment: outer map must be injective on V(H1)");
    for (Vertex v : m) {
      if (v < 0 || (v < vf && !std::binary_search(hat.begin(), hat.end(), v)))
        throw std::invalid_argument("attachment: an outer copy meets V(F) outside the anchor");
      max_id = std::max(max_id, v);
    }
    bool on_f = false;
    std::vector<Edge> d;
    for (const Edge& e : h1.edges()) {
      const Edge img = image(e, m);
      if (img == fe && !on_f) {
        on_f = true;
        continue;
      }
      if (blocked.count(img)) throw std::invalid_argument("attachment: an outer copy reuses an edge of F or the inner copy");
      d.push_back(img);
    }
    if (!on_f) throw std::invalid_argument("attachment: an outer copy misses its inner edge");
    std::vector<Vertex> u;
    for (Vertex v : m)
      if (!std::binary_search(fe.begin(), fe.end(), v)) u.push_back(v);
    inst.outer_vertices.push_back(sorted_unique(u));
    inst.outer_edges.push_back(sorted_unique(d));
    inst.outer_maps.push_back(m);
    for (const Edge& e : d) all_edges.push_back(e);
  }

  const int n = max_id + 1;
  std::vector<char> used(n, 0);
  for (Vertex v = 0; v < vf; ++v) used[v] = 1;
  for (Vertex v : inner_map) used[v] = 1;
  for (const auto& m : outer_maps)
    for (Vertex v : m) used[v] = 1;
  if (std::find(used.begin(), used.end(), 0) != used.end())
    throw std::invalid_argument("attachment: new vertex ids must be contiguous");
  inst.composite = f.with_edges(sorted_unique(all_edges), n);

  const std::vector<Vertex> inner_set = inst.inner_vertex_set();
  bool star = true;
  for (std::size_t a = 0; a < outer_maps.size() && star; ++a) {
    if (intersects(inst.outer_vertices[a], inner_set)) star = false;
    for (std::size_t b = a + 1; b < outer_maps.size() && star; ++b) {
      if (intersects(inst.outer_vertices[a], inst.outer_vertices[b])) star = false;
      std::vector<Edge> common;
      std::set_intersection(inst.outer_edges[a].begin(), inst.outer_edges[a].end(), inst.outer_edges[b].begin(),
                            inst.outer_edges[b].end(), std::back_inserter(common));
      if (!common.empty()) star = false;
    }
  }
  inst.star = star;
  return inst;
}

AttachmentInstance star_attachment(const KGraph& f, int anchor, const KGraph& h1, const KGraph& h2, int h2_edge) {
  check_uniformity(f, h1, h2);
  if (anchor < 0 || anchor >= f.m()) throw std::invalid_argument("attachment: anchor is not an edge of F");
  if (h2_edge < 0 || h2_edge >= h2.m()) throw std::invalid_argument("attachment: bad H2 edge");
  int next = f.n();
  std::vector<Vertex> inner(h2.n(), -1);
  const Edge& a = h2.edge(h2_edge);
  for (std::size_t i = 0; i < a.size(); ++i) inner[a[i]] = f.edge(anchor)[i];
  for (Vertex& v : inner)
    if (v < 0) v = next++;
  std::vector<std::vector<Vertex>> outer;
  for (int i = 0; i < h2.m(); ++i) {
    if (i == h2_edge) continue;
    const Edge fe = image(h2.edge(i), inner);
    std::vector<Vertex> m(h1.n(), -1);
    for (std::size_t j = 0; j < fe.size(); ++j) m[h1.edge(0)[j]] = fe[j];
    for (Vertex& v : m)
      if (v < 0) v = next++;
    outer.push_back(std::move(m));
  }
  return make_attachment(f, anchor, h1, h2, inner, outer);
}

// ---------------------------------------------------------------- enumeration

namespace {

class AttachSearch {
 public:
  AttachSearch(const KGraph& f, int anchor, const KGraph& h1, const KGraph& h2, const AttachLimits& lim,
               AttachmentFamily& out)
      : f_(f), anchor_(anchor), h1_(h1), h2_(h2), out_(out), max_nodes_(lim.max_nodes) {
    cap_ = lim.max_vertices > 0 ? lim.max_vertices : f.n() + h2.n() + (h2.m() - 1) * h1.n();
    // H1 vertices other than the f-edge get assigned in index order; an H1
    // edge is checked once its last vertex in that order is placed.
  }

  void run() {
    const Edge& hat = f_.edge(anchor_);
    const int k = f_.k();
    std::set<std::vector<Edge>> inner_seen;
    for (int a = 0; a < h2_.m() && !stop_; ++a) {
      Edge perm = hat;
      do {
        std::vector<Vertex> inner(h2_.n(), -1);
        for (int i = 0; i < k; ++i) inner[h2_.edge(a)[i]] = perm[i];
        int next = f_.n();
        for (Vertex& v : inner)
          if (v < 0) v = next++;
        if (next > cap_) {
          out_.capped_vertices = true;
          continue;
        }
        std::vector<Edge> inner_edges;
        for (const Edge& e : h2_.edges()) inner_edges.push_back(image(e, inner));
        std::sort(inner_edges.begin(), inner_edges.end());
        if (!inner_seen.insert(inner_edges).second) continue;
        inner_ = inner;
        inner_edges_.clear();
        for (int i = 0; i < h2_.m(); ++i)
          if (i != a) inner_edges_.push_back(image(h2_.edge(i), inner));
        blocked_ = std::set<Edge>(f_.edges().begin(), f_.edges().end());
        for (const Edge& e : inner_edges_) blocked_.insert(e);
        next_new_ = next;
        first_outer_ = next;
        maps_.clear();
        level_seen_.assign(inner_edges_.size() + 1, {});
        inner_set_ = sorted_unique(inner);
        levels_.assign(1, Level{});
        dfs(0);
      } while (std::next_permutation(perm.begin(), perm.end()) && !stop_);
    }
  }

 private:
  struct Level {
    bool star = true;
    std::set<Vertex> u;
    std::set<Edge> d;
    auto operator<=>(const Level&) const = default;
  };

  void dfs(std::size_t t) {
    if (stop_) return;
    if (t == inner_edges_.size()) {
      leaf();
      return;
    }
    const Edge& fe = inner_edges_[t];
    for (int b = 0; b < h1_.m() && !stop_; ++b) {
      Edge perm = fe;
      do {
        std::vector<Vertex> m(h1_.n(), -1);
        for (std::size_t i = 0; i < perm.size(); ++i) m[h1_.edge(b)[i]] = perm[i];
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < h1_.n(); ++v)
          if (m[v] < 0) rest.push_back(v);
        assign(t, b, m, rest, 0);
      } while (std::next_permutation(perm.begin(), perm.end()) && !stop_);
    }
  }

  // Is every H1 edge through `x` (fully mapped now) outside blocked_, apart
  // from edge b itself?
  bool edges_ok(int b, const std::vector<Vertex>& m, Vertex x) const {
    for (int ei : h1_.incidence()[x]) {
      if (ei == b) continue;
      const Edge& e = h1_.edge(ei);
      if (std::any_of(e.begin(), e.end(), [&](Vertex u) { return m[u] < 0; })) continue;
      if (blocked_.count(image(e, m))) return false;
    }
    return true;
  }

  void assign(std::size_t t, int b, std::vector<Vertex>& m, const std::vector<Vertex>& rest, std::size_t i) {
    if (stop_) return;
    if (++out_.nodes > max_nodes_) {
      out_.capped_nodes = true;
      stop_ = true;
      return;
    }
    if (i == rest.size()) {
      for (Vertex v = 0; v < h1_.n(); ++v)
        if (!edges_ok(b, m, v)) return;
      // The rest of the search only sees the union of the U and D sets so
      // far and whether the copies placed are still pairwise separate.
      const Edge& fe = inner_edges_[t];
      const Level& prev = levels_.back();
      Level next = prev;
      bool skipped = false;
      for (const Edge& e : h1_.edges()) {
        const Edge img = image(e, m);
        if (img == fe && !skipped) {
          skipped = true;
          continue;
        }
        if (!next.d.insert(img).second) next.star = false;
      }
      for (Vertex v : m) {
        if (std::binary_search(fe.begin(), fe.end(), v)) continue;
        if (std::binary_search(inner_set_.begin(), inner_set_.end(), v)) next.star = false;
        if (!next.u.insert(v).second) next.star = false;
      }
      if (level_seen_[t + 1].insert(relabelled(next)).second) {
        maps_.push_back(m);
        levels_.push_back(std::move(next));
        dfs(t + 1);
        levels_.pop_back();
        maps_.pop_back();
      }
      return;
    }
    const Vertex x = rest[i];
    const Edge& hat = f_.edge(anchor_);
    std::vector<Vertex> cands(hat.begin(), hat.end());
    for (Vertex v = f_.n(); v < next_new_; ++v) cands.push_back(v);
    for (Vertex c : cands) {
      if (std::find(m.begin(), m.end(), c) != m.end()) continue;
      m[x] = c;
      if (edges_ok(b, m, x)) assign(t, b, m, rest, i + 1);
      m[x] = -1;
      if (stop_) return;
    }
    if (next_new_ < cap_) {
      m[x] = next_new_++;
      assign(t, b, m, rest, i + 1);
      --next_new_;
      m[x] = -1;
    } else {
      out_.capped_vertices = true;
    }
  }

  // Vertices created for outer copies are interchangeable for the rest of
  // the search. Renaming them by a refined signature merges many
  // equivalent states; distinct keys may still be isomorphic.
  Level relabelled(const Level& lv) const {
    const int n_out = next_new_ - first_outer_;
    if (n_out <= 1) return lv;
    std::vector<std::vector<long>> sig(n_out);
    auto colour = [&](Vertex v) -> long { return v < first_outer_ ? v : -1 - sig_rank_[v - first_outer_]; };
    sig_rank_.assign(n_out, 0);
    for (int round = 0; round < 3; ++round) {
      for (int i = 0; i < n_out; ++i) sig[i].clear();
      for (const Edge& e : lv.d) {
        std::vector<long> cs;
        for (Vertex v : e) cs.push_back(colour(v));
        std::sort(cs.begin(), cs.end());
        for (Vertex v : e)
          if (v >= first_outer_) {
            sig[v - first_outer_].insert(sig[v - first_outer_].end(), cs.begin(), cs.end());
            sig[v - first_outer_].push_back(-1000000);
          }
      }
      for (int i = 0; i < n_out; ++i) {
        sig[i].push_back(colour(first_outer_ + i));
        sig[i].push_back(lv.u.count(first_outer_ + i) ? 1 : 0);
      }
      std::vector<std::vector<long>> sorted = sig;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (int i = 0; i < n_out; ++i)
        sig_rank_[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    }
    std::vector<int> order(n_out);
    for (int i = 0; i < n_out; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sig_rank_[a] < sig_rank_[b]; });
    std::vector<Vertex> to(next_new_);
    for (Vertex v = 0; v < first_outer_; ++v) to[v] = v;
    for (int i = 0; i < n_out; ++i) to[first_outer_ + order[i]] = first_outer_ + i;
    Level out;
    out.star = lv.star;
    for (Vertex v : lv.u) out.u.insert(to[v]);
    for (const Edge& e : lv.d) out.d.insert(image(e, to));
    return out;
  }

  void leaf() {
    ++out_.leaves;
    AttachmentInstance inst = make_attachment(f_, anchor_, h1_, h2_, inner_, maps_);
    CanonicalForm cf = canonical_form(inst.composite);
    if (seen_.insert({cf.edges, cf.n, inst.star ? 1 : 0}).second) out_.instances.push_back(std::move(inst));
  }

  const KGraph& f_;
  int anchor_;
  const KGraph& h1_;
  const KGraph& h2_;
  AttachmentFamily& out_;
  long max_nodes_;
  int cap_ = 0;
  bool stop_ = false;

  std::vector<Vertex> inner_;
  std::vector<Edge> inner_edges_;
  std::set<Edge> blocked_;
  int next_new_ = 0;
  std::vector<std::vector<Vertex>> maps_;
  std::vector<Vertex> inner_set_;
  int first_outer_ = 0;
  mutable std::vector<int> sig_rank_;
  std::vector<Level> levels_;
  std::vector<std::set<Level>> level_seen_;
  std::set<std::tuple<std::vector<Edge>, int, int>> seen_;
};

}  // namespace

AttachmentFamily enumerate_attachments(const KGraph& f, int anchor, const KGraph& h1, const KGraph& h2,
                                       const AttachLimits& limits) {
  check_uniformity(f, h1, h2);
  if (anchor < 0 || anchor >= f.m()) throw std::invalid_argument("attachment: anchor is not an edge of F");
  AttachmentFamily fam;
  AttachSearch(f, anchor, h1, h2, limits, fam).run();
  return fam;
}

Rational external_density(const AttachmentInstance& inst) {
  if (inst.v_plus() <= 0) throw std::domain_error("external density: J adds no vertex to F");
  return Rational(inst.e_plus(), inst.v_plus());
}

Rational star_external_density(const KGraph& h1, const KGraph& h2) {
  const int k = h1.k();
  const int e1 = h1.m(), v1 = h1.n(), e2 = h2.m(), v2 = h2.n();
  return Rational(static_cast<std::int64_t>(e1) * (e2 - 1), static_cast<std::int64_t>(v1 - k) * (e2 - 1) + v2 - k);
}

Lemma21Report check_lemma21(const AttachmentFamily& family, const KGraph& h1, const KGraph& h2) {
  Lemma21Report r;
  r.star_density = star_external_density(h1, h2);
  for (const AttachmentInstance& inst : family.instances) {
    const Rational d = external_density(inst);
    if (inst.star) {
      ++r.star;
      if (d != r.star_density) {
        ++r.violations;
        if (r.counterexample.empty()) r.counterexample = "H* member off the common value\n" + inst.str();
      }
      continue;
    }
    ++r.nonstar;
    if (!r.min_nonstar || d < *r.min_nonstar) r.min_nonstar = d;
    if (!(r.star_density < d)) {
      ++r.violations;
      if (r.counterexample.empty()) r.counterexample = inst.str();
    }
  }
  return r;
}

// ---------------------------------------------------------------- Order-Edges

DeltaLedger order_edges(const AttachmentInstance& inst) {
  const int ne = static_cast<int>(inst.inner_edges.size());
  const std::vector<Vertex> inner_set = inst.inner_vertex_set();
  auto d_meet = [&](int a, int b) {
    std::vector<Edge> c;
    std::set_intersection(inst.outer_edges[a].begin(), inst.outer_edges[a].end(), inst.outer_edges[b].begin(),
                          inst.outer_edges[b].end(), std::back_inserter(c));
    return !c.empty();
  };
  auto contribution = [&](int a) {
    std::vector<Vertex> out(inst.inner_edges[a].begin(), inst.inner_edges[a].end());
    for (Vertex v : inst.outer_vertices[a])
      if (std::binary_search(inner_set.begin(), inner_set.end(), v)) out.push_back(v);
    return sorted_unique(out);
  };

  DeltaLedger L;
  std::vector<int> rest(ne);
  for (int i = 0; i < ne; ++i) rest[i] = i;
  while (!rest.empty()) {
    int start = -1;
    for (std::size_t x = 0; x < rest.size() && start < 0; ++x)
      for (std::size_t y = 0; y < rest.size(); ++y)
        if (x != y && d_meet(rest[x], rest[y])) {
          start = rest[x];
          break;
        }
    if (start < 0) {
      for (int a : rest) {
        L.order.push_back(a);
        L.leftover.push_back(a);
      }
      rest.clear();
      break;
    }
    std::vector<int> group{start};
    L.order.push_back(start);
    rest.erase(std::find(rest.begin(), rest.end(), start));
    std::vector<Vertex> vj = contribution(start);
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t x = 0; x < rest.size(); ++x) {
        const int u = rest[x];
        const Edge& ue = inst.inner_edges[u];
        const bool inside =
            std::all_of(ue.begin(), ue.end(), [&](Vertex v) { return std::binary_search(vj.begin(), vj.end(), v); });
        const bool shares = std::any_of(group.begin(), group.end(), [&](int g) { return d_meet(u, g); });
        if (!inside && !shares) continue;
        group.push_back(u);
        L.order.push_back(u);
        rest.erase(rest.begin() + static_cast<long>(x));
        std::vector<Vertex> add = contribution(u);
        vj.insert(vj.end(), add.begin(), add.end());
        vj = sorted_unique(vj);
        grew = true;
        break;
      }
    }
    L.groups.push_back(group);
    L.group_vertices.push_back(vj);
  }

  L.delta_e.assign(ne, 0);
  L.delta_v.assign(ne, 0);
  std::set<Edge> prev_d;
  std::set<Vertex> prev_u(inner_set.begin(), inner_set.end());
  for (int a : L.order) {
    for (const Edge& e : inst.outer_edges[a]) L.delta_e[a] += static_cast<int>(prev_d.count(e));
    for (Vertex v : inst.outer_vertices[a]) L.delta_v[a] += static_cast<int>(prev_u.count(v));
    prev_d.insert(inst.outer_edges[a].begin(), inst.outer_edges[a].end());
    prev_u.insert(inst.outer_vertices[a].begin(), inst.outer_vertices[a].end());
  }
  return L;
}

std::string LedgerCheck::str() const {
  std::ostringstream os;
  os << "order " << (total_order ? "ok" : "BAD") << ", sume " << (sum_e ? "ok" : "BAD") << ", sumv "
     << (sum_v ? "ok" : "BAD") << ", inei violations " << inei_violations << ", notinei violations "
     << notinei_violations;
  return os.str();
}

LedgerCheck check_ledger(const AttachmentInstance& inst, const DeltaLedger& ledger, const KGraph& h1,
                         const KGraph& h2, const Rational& mk_pair) {
  LedgerCheck c;
  const int ne = static_cast<int>(inst.inner_edges.size());
  std::vector<int> sorted = ledger.order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < ne && c.total_order; ++i) c.total_order = static_cast<int>(sorted.size()) == ne && sorted[i] == i;

  const int k = h1.k();
  const int e_star = h1.m() * (h2.m() - 1);
  const int v_star = (h1.n() - k) * (h2.m() - 1) + h2.n() - k;
  int sum_de = 0, sum_dv = 0;
  for (int i = 0; i < ne; ++i) {
    sum_de += ledger.delta_e[i];
    sum_dv += ledger.delta_v[i];
  }
  // e+ and v+ straight from the graphs: edges of J not in F, vertices beyond F
  int e_plus = 0;
  for (const Edge& e : inst.composite.edges()) e_plus += inst.base.has_edge(e) ? 0 : 1;
  const int v_plus = inst.composite.n() - inst.base.n();
  c.sum_e = e_plus == e_star - sum_de;
  c.sum_v = v_plus == v_star - sum_dv;

  for (const auto& g : ledger.groups) {
    int de = 0, dv = 0;
    for (int a : g) {
      de += ledger.delta_e[a];
      dv += ledger.delta_v[a];
    }
    if (!(Rational(de) < mk_pair * Rational(dv))) ++c.inei_violations;
  }
  for (int a : ledger.leftover)
    if (ledger.delta_e[a] != 0) ++c.notinei_violations;
  return c;
}

// ---------------------------------------------------------------- flowers

namespace {

struct TracedFlower {
  int born = 0;
  std::vector<Vertex> internal;
  std::vector<Edge> petals;  // edges of J outside every H2 copy through the attachment edge
};

std::vector<Edge> new_edges(const KGraph& before, const KGraph& after) {
  std::vector<Edge> out;
  for (const Edge& e : after.edges())
    if (!before.has_edge(e)) out.push_back(e);
  return out;
}

}  // namespace

FlowerAudit audit_trace(const std::vector<KGraph>& path, const std::vector<GrowStep>& steps, const PairContext& ctx) {
  FlowerAudit a;
  if (path.empty()) {
    if (!steps.empty()) throw std::invalid_argument("audit_trace: steps without graphs");
    return a;
  }
  if (steps.size() + 1 != path.size()) throw std::invalid_argument("audit_trace: need one step per transition");
  const int k = ctx.k;
  const long y = ctx.h2.n() + static_cast<long>(ctx.h2.m() - 1) * (ctx.h1.n() - k);

  auto note = [&](const std::string& what, std::size_t i) {
    if (!a.counterexample.empty()) return;
    std::ostringstream os;
    os << what << " at time " << i << "\n" << serialise_khg(path[i]);
    if (i + 1 < path.size()) os << "--\n" << serialise_khg(path[i + 1]);
    a.counterexample = os.str();
  };

  std::vector<TracedFlower> flowers;
  std::vector<char> alive;
  auto check_time = [&](std::size_t t) {
    int count = 0;
    std::vector<int> open_ids;
    bool have_open = false;
    std::vector<Vertex> seen;
    for (std::size_t j = 0; j < flowers.size(); ++j) {
      if (!alive[j]) continue;
      ++count;
      if (intersects(seen, flowers[j].internal)) {
        ++a.shared_internal;
        note("fully open flowers share an internal vertex", t);
      }
      seen.insert(seen.end(), flowers[j].internal.begin(), flowers[j].internal.end());
      seen = sorted_unique(seen);
      if (!have_open) {
        open_ids = CopyIndex(path[t], ctx).open_edges();
        have_open = true;
      }
      for (const Edge& e : flowers[j].petals) {
        const int idx = path[t].edge_index(e);
        if (!std::binary_search(open_ids.begin(), open_ids.end(), idx)) {
          ++a.closed_petals;
          note("petal edge of a fully open flower is closed", t);
        }
      }
    }
    a.counts.push_back(count);
  };

  check_time(0);
  std::vector<int> lost(steps.size(), 0);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::vector<Edge> added = new_edges(path[i], path[i + 1]);
    std::vector<Vertex> touched;
    for (const Edge& e : added) touched.insert(touched.end(), e.begin(), e.end());
    touched = sorted_unique(touched);
    for (std::size_t j = 0; j < flowers.size(); ++j)
      if (alive[j] && intersects(flowers[j].internal, touched)) {
        alive[j] = 0;
        ++lost[i];
      }

    if (steps[i].cls == StepClass::NonDegenerate) {
      const std::vector<Vertex> old_span = path[i].spanned_vertices();
      std::vector<Vertex> at;
      std::set_intersection(touched.begin(), touched.end(), old_span.begin(), old_span.end(), std::back_inserter(at));
      if (static_cast<int>(at.size()) != k || !path[i].has_edge(at)) {
        ++a.malformed;
        note("flower step does not meet F in one edge", i);
      } else {
        TracedFlower fl;
        fl.born = static_cast<int>(i);
        for (Vertex v : touched)
          if (!std::binary_search(at.begin(), at.end(), v)) fl.internal.push_back(v);
        std::vector<Edge> j_edges = added;
        j_edges.push_back(at);
        std::sort(j_edges.begin(), j_edges.end());
        const KGraph j = path[i + 1].with_edges(j_edges, path[i + 1].n());
        std::set<Edge> in_core;
        for (const Copy& c : copies_of(ctx.h2, j)) {
          bool through = std::find(c.edges.begin(), c.edges.end(), j.edge_index(at)) != c.edges.end();
          if (!through) continue;
          for (int e : c.edges) in_core.insert(j.edge(e));
        }
        for (const Edge& e : added)
          if (!in_core.count(e)) fl.petals.push_back(e);
        flowers.push_back(std::move(fl));
        alive.push_back(1);
      }
    }
    check_time(i + 1);

    if (steps[i].cls == StepClass::NonDegenerate) {
      if (lost[i] > 1) {
        ++a.flower_step_lost;
        note("flower step ended more than one fully open flower", i);
      }
      if (i > 0 && steps[i - 1].cls == StepClass::NonDegenerate && lost[i - 1] == 1 && a.counts[i + 1] < a.counts[i]) {
        ++a.pair_decrease;
        note("second flower step lowered the count", i);
      }
    } else if (a.counts[i + 1] < a.counts[i] - y) {
      ++a.degenerate_drop;
      note("degenerate drop above Y", i);
    }
  }
  return a;
}

GrowPath free_grow_path(const KGraph& start, const PairContext& ctx, int steps) {
  if (ctx.regime != Regime::Strict) throw std::invalid_argument("free_grow_path: strict regime only");
  GrowPath p;
  p.graphs.push_back(start);
  for (int s = 0; s < steps; ++s) {
    const KGraph& f = p.graphs.back();
    std::optional<Edge> e = eligible_edge(f, ctx);
    if (!e) break;
    AttachmentInstance inst = star_attachment(f, f.edge_index(*e), ctx.h1, ctx.h2);
    GrowStep st;
    st.kind = StepKind::CloseE;
    st.cls = StepClass::NonDegenerate;
    st.at = *e;
    st.new_vertices = inst.v_plus();
    st.new_edges = inst.e_plus();
    for (const Edge& x : inst.composite.edges())
      if (!f.has_edge(x)) st.attached.push_back(x);
    st.lambda_before = lambda(f, ctx);
    st.lambda_after = lambda(inst.composite, ctx);
    p.steps.push_back(std::move(st));
    p.graphs.push_back(inst.composite);
  }
  return p;
}

}  // namespace hrw
