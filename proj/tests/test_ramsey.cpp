#include <random>

#include "doctest.h"
#include "hrw/grow.hpp"
#include "hrw/ramsey.hpp"
#include "oracle.hpp"

using namespace hrw;

namespace {

KGraph K(int a) { return gen::complete(a); }

// Arrow by trying all r^m colourings against brute-force copy lists.
bool brute_arrow(const KGraph& g, const std::vector<KGraph>& pats) {
  std::vector<std::vector<std::vector<int>>> copies;
  for (const KGraph& h : pats) copies.push_back(oracle::copy_edge_sets(h, g));
  const int r = static_cast<int>(pats.size());
  std::vector<int> col(g.m(), 0);
  while (true) {
    bool valid = true;
    for (int i = 0; i < r && valid; ++i)
      for (const auto& c : copies[i])
        if (std::all_of(c.begin(), c.end(), [&](int e) { return col[e] == i; })) {
          valid = false;
          break;
        }
    if (valid) return false;
    int p = 0;
    while (p < g.m() && ++col[p] == r) col[p++] = 0;
    if (p == g.m()) return true;
  }
}

}  // namespace

TEST_CASE("classical arrow facts") {
  CHECK(arrow(K(6), {K(3), K(3)}).arrows);
  ArrowResult r5 = arrow(K(5), {K(3), K(3)});
  CHECK_FALSE(r5.arrows);
  REQUIRE(r5.witness.has_value());
  CHECK(is_valid_colouring(K(5), {K(3), K(3)}, *r5.witness));
  // The only valid split of K5 is two pentagons.
  std::vector<int> red;
  for (int e = 0; e < 10; ++e)
    if (r5.witness->colour[e] == 0) red.push_back(e);
  KGraph red_graph = K(5).edge_subgraph(red, false);
  CHECK(isomorphic(red_graph, gen::cycle(5)));

  CHECK(arrow(gen::triforce(), {K(3), gen::path(2)}).arrows);
  CHECK_FALSE(valid_colouring(gen::triforce(), K(3), gen::path(2)).has_value());

  KGraph big = gen::plusk(K(6), 4), small = gen::plusk(K(3), 4);
  CHECK(big.m() == 15);
  ArrowResult rp = arrow(big, {small, small});
  CHECK(rp.arrows);

  CHECK(arrow(K(9), {K(4), K(3)}).arrows);
  CHECK_FALSE(arrow(K(8), {K(4), K(3)}).arrows);
  CHECK(arrow(K(7), {K(3), gen::cycle(4)}).arrows);
  CHECK_FALSE(arrow(K(6), {K(3), gen::cycle(4)}).arrows);
  // Three colours: R(3,3,3) = 17, so K5 has a 3-colouring and the witness checks out.
  ArrowResult r3 = arrow(K(5), {K(3), K(3), K(3)});
  CHECK_FALSE(r3.arrows);
  CHECK(is_valid_colouring(K(5), {K(3), K(3), K(3)}, *r3.witness));

  CHECK_THROWS_AS(arrow(K(4), {}), std::invalid_argument);
  CHECK_THROWS_AS(arrow(K(4), {KGraph(3, 3, {{0, 1, 2}})}), std::invalid_argument);
}

TEST_CASE("arrow agrees with exhaustive colouring on random graphs") {
  std::mt19937_64 rng(17);
  const std::vector<std::vector<KGraph>> pattern_sets{
      {K(3), K(3)}, {K(3), gen::path(2)}, {gen::cycle(4), K(3)}, {gen::path(3), gen::path(2)}, {K(3), K(3), gen::path(2)}};
  int arrows = 0, total = 0;
  for (const auto& pats : pattern_sets)
    for (int it = 0; it < 40; ++it) {
      const int m = pats.size() == 3 ? 6 + it % 4 : 7 + it % 7;
      KGraph g = oracle::random_graph_m(rng, 2, 6 + it % 2, m);
      ArrowResult r = arrow(g, pats);
      CHECK(r.arrows == brute_arrow(g, pats));
      if (!r.arrows) CHECK(is_valid_colouring(g, pats, *r.witness));
      arrows += r.arrows;
      ++total;
    }
  MESSAGE(arrows << " of " << total << " random instances arrow");
  CHECK(arrows > 0);
  CHECK(arrows < total);
}

TEST_CASE("3-uniform arrows against brute force") {
  std::mt19937_64 rng(23);
  KGraph k4_3 = gen::complete(4, 3);
  KGraph two = KGraph(3, 4, {{0, 1, 2}, {0, 1, 3}});
  for (int it = 0; it < 30; ++it) {
    KGraph g = oracle::random_graph_m(rng, 3, 6, 6 + it % 8);
    CHECK(arrow(g, {k4_3, two}).arrows == brute_arrow(g, {k4_3, two}));
  }
}

TEST_CASE("monotonicity under adding edges and subpattern colourings") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 20; ++it) {
    KGraph g = oracle::random_graph_m(rng, 2, 7, 14);
    if (!arrow(g, {K(3), gen::path(2)}).arrows) continue;
    std::vector<Edge> extra;
    for (int u = 0; u < 7; ++u)
      for (int v = u + 1; v < 7; ++v)
        if (!g.has_edge({u, v}) && rng() % 2) extra.push_back({u, v});
    CHECK(arrow(g.with_edges(extra, 7), {K(3), gen::path(2)}).arrows);
  }
  // A colouring valid for a subpair stays valid for the full pair.
  for (int n = 5; n <= 7; ++n) {
    KGraph g = oracle::random_graph_m(rng, 2, n, 2 * n);
    auto c = valid_colouring(g, K(3), K(3));
    if (!c) continue;
    CHECK(is_valid_colouring(g, {K(4), K(4)}, *c));
    CHECK(is_valid_colouring(g, {gen::plusk(K(3), 2), K(4)}, *c));
  }
}

TEST_CASE("colouring serialisation round trip") {
  Colouring c{{0, 1, 1, 0, 2}};
  Colouring d = Colouring::parse(c.serialise());
  CHECK(d.colour == c.colour);
  CHECK_THROWS_AS(Colouring::parse("0 1\n2 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(Colouring::parse("x y\n"), std::invalid_argument);
}

TEST_CASE("Ramsey-minimal subgraphs") {
  auto m6 = ramsey_minimal(K(6), K(3), K(3));
  REQUIRE(m6.has_value());
  CHECK(isomorphic(*m6, K(6)));
  KGraph pend = K(6).with_edges({{5, 6}}, 7);
  auto mp = ramsey_minimal(pend, K(3), K(3));
  REQUIRE(mp.has_value());
  CHECK(isomorphic(*mp, K(6)));
  CHECK_FALSE(ramsey_minimal(K(5), K(3), K(3)).has_value());

  // Every one-edge deletion of a returned graph fails to arrow.
  auto m7 = ramsey_minimal(K(7), K(3), gen::cycle(4));
  REQUIRE(m7.has_value());
  for (int e = 0; e < m7->m(); ++e) {
    std::vector<int> ids;
    for (int f = 0; f < m7->m(); ++f)
      if (f != e) ids.push_back(f);
    CHECK_FALSE(arrow(m7->edge_subgraph(ids, false), {K(3), gen::cycle(4)}).arrows);
  }
}

TEST_CASE("Ramsey-minimal graphs for cliques have large minimum degree") {
  // For (K_a, H2) with delta(H2) >= 2 the minimum degree is at least 2(a-1).
  std::mt19937_64 rng(31);
  struct Case {
    int a;
    KGraph h2;
  };
  std::vector<Case> cases{{3, K(3)}, {3, gen::cycle(4)}, {3, gen::cycle(5)}, {4, K(3)}};
  for (const Case& c : cases) {
    int found = 0;
    for (int n = 6; n <= 9; ++n) {
      std::vector<KGraph> hosts{K(n)};
      for (int t = 0; t < 3; ++t) hosts.push_back(oracle::random_graph(rng, 2, n, 0.85));
      for (const KGraph& host : hosts) {
        if (c.a == 4 && host.m() < 30) continue;
        auto mg = ramsey_minimal(host, K(c.a), c.h2);
        if (!mg) continue;
        ++found;
        CHECK(mg->min_degree() >= 2 * (c.a - 1));
      }
    }
    CHECK(found > 0);
  }
}

TEST_CASE("z parameter") {
  CHECK(z_param(gen::complete_bipartite(2, 5)) == 3);
  CHECK(z_param(K(3)) == 0);
  CHECK(z_param(gen::complete_bipartite(1, 3)) == 2);
  CHECK_THROWS_AS(z_param(gen::complete(4, 3)), std::invalid_argument);
}

TEST_CASE("members of B-hat(K4,K3) have valid colourings") {
  BhatFamily f = enumerate_bhat(K(4), K(3), Rational(0), [] {
    GrowLimits l;
    l.max_vertices = 9;
    return l;
  }());
  REQUIRE_FALSE(f.members.empty());
  for (const KGraph& g : f.members) {
    auto c = valid_colouring(g, K(4), K(3));
    REQUIRE(c.has_value());
    CHECK(is_valid_colouring(g, {K(4), K(3)}, *c));
  }
}
