#include <random>

#include "doctest.h"
#include "hrw/density.hpp"
#include "oracle.hpp"

using namespace hrw;

namespace {
KGraph K(int a) { return gen::complete(a); }
Rational R(long a, long b = 1) { return Rational(a, b); }
}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(R(1, 2) + R(1, 3) == R(5, 6));
  CHECK(R(2, 4) == R(1, 2));
  CHECK(R(-3, 6).str() == "-1/2");
  CHECK(R(2).str() == "2/1");
  CHECK(Rational::parse("15/8") == R(15, 8));
  CHECK(Rational::parse("-3") == R(-3));
  CHECK(R(7, 2).floor() == 3);
  CHECK(R(-7, 2).floor() == -4);
  CHECK(R(1, 3) < R(1, 2));
  CHECK_THROWS(R(1, 0));
}

TEST_CASE("mediant inequalities for random rationals") {
  // a/b < c/d implies a/b < (a+c)/(b+d) < c/d, for positive denominators.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 40);
  for (int t = 0; t < 1000; ++t) {
    int a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational x(a, b), y(c, d), med(a + c, b + d);
    if (x < y) {
      CHECK(x < med);
      CHECK(med < y);
    } else if (x == y) {
      CHECK(med == x);
    }
  }
}

TEST_CASE("density exact values") {
  for (int a = 3; a <= 7; ++a) CHECK(mk_density(K(a)).value == R(a + 1, 2));
  CHECK(mk_density(gen::complete_bipartite(2, 2)).value == R(3, 2));
  CHECK(mk_density(gen::complete_bipartite(3, 3)).value == R(2));
  CHECK(mk_density(gen::complete_bipartite(4, 4)).value == R(5, 2));
  CHECK(mk_pair_density(K(3), gen::complete_bipartite(1, 2)).value == R(3, 2));
  CHECK(mk_pair_density(K(4), K(3)).value == R(12, 5));
  CHECK(mk_pair_density(K(3), K(3)).value == R(2));
  CHECK(m_density(gen::triforce()).value == R(3, 2));
  CHECK(m_density(graph_from_name("K6plus4")).value == R(15, 8));
  CHECK(mk_density(graph_from_name("K3^+4")).value == R(2));
  CHECK(m_density(KGraph(2, 2, {{0, 1}})).value == R(1, 2));
  CHECK(arboricity(K(4)).value == R(2));
  CHECK(arboricity(gen::path(3)).value == R(1));
  CHECK(arboricity(gen::complete_bipartite(4, 4)).value == R(16, 7));
  CHECK(mk_density(KGraph(3, 3, {{0, 1, 2}})).value == R(1, 3));
  CHECK(m_density(gen::empty(4)).value == R(0));
}

TEST_CASE("witnesses re-evaluate to their value") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    KGraph g = oracle::random_graph(rng, 2 + t % 2, 7, t % 2 ? 0.3 : 0.45);
    if (g.m() == 0) continue;
    DensityWitness m = m_density(g), a = arboricity(g), mk = mk_density(g);
    CHECK(d_density(m.subgraph(g)) == m.value);
    CHECK(d1_density(a.subgraph(g)) == a.value);
    CHECK(dk_density(mk.subgraph(g)) == mk.value);
  }
}

TEST_CASE("flow engine equals brute force") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    int k = 2 + t % 3;
    KGraph g = oracle::random_graph_m(rng, k, 4 + t % 5, 1 + t % 12);
    CHECK(m_density(g).value == oracle::max_m(g));
    CHECK(arboricity(g).value == oracle::max_ar(g));
    CHECK(mk_density(g).value == oracle::max_mk(g));
    CHECK(m_density(g, Engine::Exhaustive).value == oracle::max_m(g));
    CHECK(mk_density(g, Engine::Exhaustive).value == oracle::max_mk(g));
    Rational mp = Rational(5 + t % 7, 3);
    PairContext fake;
    fake.k = k;
    fake.mk_pair = mp;
    CHECK(min_lambda_subgraph(g, fake).value == oracle::min_lambda(g, mp));
    CHECK(min_lambda_subgraph(g, fake, Engine::Exhaustive).value == oracle::min_lambda(g, mp));
    CHECK(min_lambda_value(g, mp) == oracle::min_lambda(g, mp));
    Rational m2 = Rational(4 + t % 5, 3);
    CHECK(mk_pair_density_given(g, m2).value == oracle::max_pair(g, m2));
  }
}

TEST_CASE("balancedness") {
  CHECK(balancedness(K(4), Balance::StrictKBalanced));
  KGraph c4tri(2, 6, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}, {1, 5}, {2, 5}});
  KGraph c7 = gen::cycle(7);
  CHECK(balancedness(c4tri, Balance::StrictBalancedWrt, &c7));
  CHECK_FALSE(balancedness(c4tri, Balance::KBalanced));
  KGraph k3pend(2, 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  CHECK_FALSE(balancedness(k3pend, Balance::StrictKBalanced));
  CHECK(balancedness(gen::cycle(5), Balance::StrictKBalanced));
  CHECK(balancedness(gen::cycle(5), Balance::KBalanced));
}

TEST_CASE("heart extraction") {
  auto [a, b] = heart(K(4), K(3));
  CHECK(isomorphic(a, K(4)));
  CHECK(isomorphic(b, K(3)));
  KGraph k3pend(2, 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  KGraph c4pend(2, 5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {3, 4}});
  auto [c, d] = heart(k3pend, c4pend);
  CHECK(isomorphic(c, K(3)));
  CHECK(isomorphic(d, gen::cycle(4)));
  auto [e, f] = heart(gen::cycle(4), gen::cycle(6));
  CHECK(isomorphic(e, gen::cycle(4)));
  CHECK(isomorphic(f, gen::cycle(6)));
  CHECK_THROWS(heart(gen::cycle(6), gen::cycle(4)));
}

TEST_CASE("lambda and gamma") {
  PairContext c = PairContext::make(K(4), K(3));
  CHECK(lambda(K(4), c) == R(3, 2));
  PairContext c33 = PairContext::make(K(3), K(3));
  for (int l = 4; l <= 6; ++l) CHECK(lambda(gen::cyclic_concat(K(4), l), c33) == R(0));
  CHECK(lambda(gen::empty(5), c) == R(5));
  CHECK(min_lambda_subgraph(K(4), c).value == R(3, 2));
  CHECK(min_lambda_subgraph(K(4), c).edges.size() == 6);
  CHECK(min_lambda_subgraph(KGraph(2, 2, {{0, 1}}), c).value == R(2) - R(5, 12));
  CHECK(gamma(K(4), K(3), R(0)) == R(0));
  CHECK(gamma(K(4), K(3), R(1, 10)) == R(1, 60));
  CHECK(gamma(K(3), K(3), R(1)) == R(1, 6));
  CHECK(gamma(K(4), K(3), R(1, 5)) > gamma(K(4), K(3), R(1, 10)));
}

TEST_CASE("delta_max and weak chromatic number") {
  CHECK(delta_max(K(4)) == 3);
  CHECK(delta_max(gen::path(5)) == 1);
  CHECK(delta_max(gen::triforce()) == 2);
  CHECK(weak_chromatic_number(K(3)) == 3);
  CHECK(weak_chromatic_number(gen::cycle(4)) == 2);
  CHECK(weak_chromatic_number(gen::complete(4, 3)) == 2);
  CHECK(weak_chromatic_number(K(5)) == 5);
}

TEST_CASE("heart structure check") {
  CHECK(heart_structure_check(K(4), K(3)).ok());
  HeartStructureReport r = heart_structure_check(gen::cycle(4), gen::cycle(6));
  CHECK(r.ok());
  CHECK(r.h1_min_degree == 2);
  CHECK(r.h2_min_degree == 2);
  KGraph two = disjoint_union(K(3), K(3));
  CHECK_FALSE(is_heart(two, K(3)));
  CHECK_THROWS(heart_structure_check(two, K(3)));
}
