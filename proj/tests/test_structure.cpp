#include <random>
#include <set>

#include "doctest.h"
#include "hrw/grow.hpp"
#include "hrw/ramsey.hpp"
#include "hrw/structure.hpp"
#include "oracle.hpp"

using namespace hrw;

namespace {

KGraph K(int a) { return gen::complete(a); }

PairContext pair(const char* a, const char* b) { return PairContext::make(graph_from_name(a), graph_from_name(b)); }

// K4 plus the flower from one non-degenerate Close-e step under (K4,K3).
KGraph k4_with_flower(const PairContext& ctx) {
  GrowState s = make_state(K(4), ctx);
  for (const Successor& su : successors(s, ctx))
    if (su.step.kind == StepKind::CloseE && su.step.cls == StepClass::NonDegenerate) return su.state.graph;
  FAIL("no non-degenerate Close-e successor of K4");
  return {};
}

KGraph glue(const std::vector<KGraph>& parts, const std::vector<std::vector<int>>& maps, int n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const Edge& e : parts[i].edges()) {
      Edge f;
      for (int v : e) f.push_back(maps[i][v]);
      edges.push_back(make_edge(f));
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return KGraph(2, n, edges);
}

}  // namespace

TEST_CASE("family report on the worked examples") {
  PairContext kk = pair("K4", "K3");
  FamilyReport r = family_report(K(4), kk);
  CHECK_FALSE(r.in_C);
  CHECK_FALSE(r.in_Cstar);
  CHECK(r.open_edges.size() == 6);

  PairContext tt = pair("K3", "K3");
  KGraph tri = gen::triforce();
  FamilyReport t = family_report(tri, tt);
  CHECK(t.open_edges.size() == 6);
  for (const Edge& e : {Edge{0, 1}, Edge{1, 2}, Edge{0, 2}}) {
    int id = tri.edge_index(e);
    CHECK(std::find(t.open_edges.begin(), t.open_edges.end(), id) == t.open_edges.end());
  }
  CHECK_FALSE(t.in_C);

  FamilyReport k5 = family_report(K(5), kk);
  CHECK(k5.in_C);
  CHECK(k5.in_Cstar);
  CHECK(k5.open_edges.empty());
  CHECK_THROWS_AS(family_report(KGraph(3, 3, {{0, 1, 2}}), kk), std::invalid_argument);
}

TEST_CASE("open edges, C and C* agree with the definitions on random graphs") {
  std::mt19937_64 rng(11);
  const std::vector<std::pair<const char*, const char*>> pairs{{"K4", "K3"}, {"K3", "K3"}, {"C4", "C5"}, {"K3", "P3"}};
  for (auto [a, b] : pairs) {
    PairContext ctx = pair(a, b);
    const bool strict = ctx.regime == Regime::Strict;
    for (int it = 0; it < 200; ++it) {
      KGraph g = oracle::random_graph_m(rng, 2, 5 + it % 3, 5 + it % 6);
      FamilyReport r = family_report(g, ctx);
      CHECK(r.open_edges == oracle::open_edges(g, ctx.h1, ctx.h2, strict));
      auto eq_open = oracle::open_edges(g, ctx.h1, ctx.h2, false);
      CHECK(r.in_C == eq_open.empty());
      CHECK((!r.in_Cstar || r.in_C));
      if (strict) {
        CHECK(r.in_Cstar == r.open_edges.empty());
      }
    }
  }
}

TEST_CASE("removing an edge of a C* graph reopens an edge") {
  PairContext kk = pair("K4", "K3");
  for (int e = 0; e < 10; ++e) {
    CopyIndex idx(K(5), kk);
    REQUIRE(idx.open_edges().empty());
    idx.remove_edge(e);
    CHECK_FALSE(idx.open_edges().empty());
    CHECK(idx.alive_edge_count() == 9);
  }
}

TEST_CASE("flower detection") {
  PairContext kk = pair("K4", "K3");
  CHECK(detect_flowers(K(4), kk).empty());

  KGraph f = k4_with_flower(kk);
  CHECK(f.n() == 9);
  CHECK(f.m() == 18);
  // The composite is a triangle with a K4 on each side, and the original K4
  // is indistinguishable from the two petals: one flower per triangle edge,
  // all in a single automorphism orbit.
  auto fl = detect_flowers(f, kk);
  REQUIRE(fl.size() == 3);
  CHECK(flowers_overlap(fl));
  FamilyReport r = family_report(f, kk);
  std::set<Vertex> core_vertices;
  for (const Flower& x : fl) {
    CHECK(x.petals.size() == 2);
    CHECK(x.internal_vertices.size() == 5);
    CHECK(x.petal_edges.size() == 10);
    CHECK(x.flower_edges.size() == 12);
    for (int e : x.petal_edges)
      CHECK(std::find(r.open_edges.begin(), r.open_edges.end(), e) != r.open_edges.end());
    CHECK(x.str(f).find("attachment") == 0);
    core_vertices.insert(x.attachment_edge.begin(), x.attachment_edge.end());
  }
  CHECK(core_vertices.size() == 3);
  CHECK(contains_copy(K(3), f.induced({core_vertices.begin(), core_vertices.end()})));

  // Equal regime: two triangles sharing an edge. Each triangle is
  // structurally a flower attached to the other one.
  PairContext tt = pair("K3", "K3");
  KGraph diamond(2, 4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
  auto fd = detect_flowers(diamond, tt);
  CHECK(fd.size() == 2);
  FamilyReport rd = family_report(diamond, tt);
  for (const Flower& x : fd) {
    CHECK(x.attachment_edge == Edge{0, 1});
    CHECK(x.petal_edges.size() == 2);
    for (int e : x.petal_edges)
      CHECK(std::find(rd.open_edges.begin(), rd.open_edges.end(), e) != rd.open_edges.end());
  }
  CHECK_FALSE(flowers_overlap(fd));
  // A lone triangle is not attached to anything.
  CHECK(detect_flowers(K(3), tt).empty());
}

TEST_CASE("petal edges of a freshly attached flower are open") {
  // Attach a non-degenerate flower at every edge orbit of several hosts and
  // check the petal edges in the composite.
  for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{{"K4", "K3"}, {"K3", "K3"}}) {
    PairContext ctx = pair(a, b);
    std::vector<KGraph> hosts{K(4), K(5), gen::triforce()};
    for (const KGraph& host : hosts) {
      GrowState s = make_state(host, ctx);
      if (!s.live(ctx)) continue;
      int seen = 0;
      for (const Successor& su : successors(s, ctx)) {
        if (su.step.cls != StepClass::NonDegenerate) continue;
        ++seen;
        const KGraph& g = su.state.graph;
        FamilyReport r = family_report(g, ctx);
        auto fl = detect_flowers(g, ctx);
        CHECK_FALSE(fl.empty());
        for (const Flower& x : fl)
          for (int e : x.petal_edges)
            CHECK(std::find(r.open_edges.begin(), r.open_edges.end(), e) != r.open_edges.end());
      }
      CHECK(seen > 0);
    }
  }
}

TEST_CASE("S^B family and B-hat graph classification") {
  const KGraph k5 = K(5);
  const std::vector<KGraph> bhat{k5};
  PairContext kk = pair("K4", "K3");

  SBFamily none = sb_family(k5, {});
  CHECK(none.members.empty());
  CHECK(std::all_of(none.per_edge_count.begin(), none.per_edge_count.end(), [](int c) { return c == 0; }));

  KGraph two = disjoint_union(k5, k5);
  SBFamily s2 = sb_family(two, bhat);
  CHECK(s2.members.size() == 2);
  CHECK(std::all_of(s2.per_edge_count.begin(), s2.per_edge_count.end(), [](int c) { return c == 1; }));
  CHECK(std::holds_alternative<BhatSparse>(classify_bhat_graph(two, kk, bhat)));

  // Two copies of K5 sharing the edge {0,1}.
  KGraph shared = glue({k5, k5}, {{0, 1, 2, 3, 4}, {0, 1, 5, 6, 7}}, 8);
  SBFamily ss = sb_family(shared, bhat);
  int e01 = shared.edge_index({0, 1});
  CHECK(ss.per_edge_count[e01] == 2);
  BhatClass c = classify_bhat_graph(shared, kk, bhat);
  REQUIRE(std::holds_alternative<NotBhatGraph>(c));
  CHECK(std::get<NotBhatGraph>(c).edge == e01);

  // Three copies of K5 in a ring, consecutive ones sharing a vertex: the
  // triangle 0-4-8 uses one edge of each.
  KGraph ring = glue({k5, k5, k5}, {{0, 1, 2, 3, 4}, {4, 5, 6, 7, 8}, {8, 9, 10, 11, 0}}, 12);
  BhatClass cr = classify_bhat_graph(ring, kk, bhat);
  REQUIRE(std::holds_alternative<BhatNotSparse>(cr));
  const Copy& w = std::get<BhatNotSparse>(cr).witness;
  CHECK(w.vertices == std::vector<Vertex>{0, 4, 8});

  // Maximality: a member contained in a larger one is dropped.
  SBFamily nested = sb_family(k5, {K(4), k5});
  CHECK(nested.members.size() == 1);
  CHECK(nested.members[0].pattern == 1);
}

TEST_CASE("z parameter and the minimum-density bound for K_{a,b}") {
  CHECK(z_param(gen::complete_bipartite(2, 3)) == 1);
  CHECK(z_param(gen::complete_bipartite(2, 5)) == 3);
  CHECK(z_param(gen::complete_bipartite(3, 3)) == 0);
  CHECK(z_param(gen::cycle(5)) == 0);

  // Every member of C(K_{2,3}, C4) on at most 7 vertices obeys
  // d(A) >= x(x+z)/(2x+z), x = delta1+delta2-1, z = max z.
  const KGraph h1 = gen::complete_bipartite(2, 3), h2 = gen::cycle(4);
  PairContext ctx = PairContext::make(h1, h2);
  const int x = h1.min_degree() + h2.min_degree() - 1;
  const int z = std::max(z_param(h1), z_param(h2));
  const Rational bound(x * (x + z), 2 * x + z);
  int members = 0;
  for (int n = 5; n <= 7; ++n)
    for (const KGraph& g : all_graphs(2, n)) {
      if (g.min_degree() < x) continue;
      if (!family_report(g, ctx).in_C) continue;
      ++members;
      CHECK(d_density(g) >= bound);
    }
  MESSAGE("members of C(K_{2,3}, C4) checked: " << members);
}
