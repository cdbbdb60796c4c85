#include <cmath>
#include <random>

#include "doctest.h"
#include "hrw/edgecol.hpp"
#include "hrw/verify.hpp"
#include "oracle.hpp"
#include "pipeline_inputs.hpp"

using namespace hrw;

namespace {

KGraph K(int a) { return gen::complete(a); }

struct Setup {
  PairContext ctx;
  std::vector<KGraph> members;
};

const Setup& k4k3() {
  static const Setup s = [] {
    GrowLimits l;
    l.max_vertices = 9;
    BhatFamily f = enumerate_bhat(K(4), K(3), Rational(0), l);
    return Setup{f.ctx, f.members};
  }();
  return s;
}

const Setup& k3k3() {
  static const Setup s = [] {
    GrowLimits l;
    l.max_vertices = 8;
    BhatFamily f = enumerate_bhat(K(3), K(3), Rational(0), l);
    return Setup{f.ctx, f.members};
  }();
  return s;
}

// No colour-i copy of pattern i, checked against brute-force copy lists.
bool oracle_valid(const KGraph& g, const PairContext& ctx, const Colouring& c) {
  const KGraph* pats[2] = {&ctx.h1, &ctx.h2};
  for (int i = 0; i < 2; ++i)
    for (const auto& es : oracle::copy_edge_sets(*pats[i], g))
      if (std::all_of(es.begin(), es.end(), [&](int e) { return c.colour[e] == i; })) return false;
  return true;
}

// Residual of a stuck run lies in C (and C* in the strict regime), by the
// definitions directly.
bool residual_ok(const StuckReport& st, const PairContext& ctx) {
  const bool strict = ctx.regime == Regime::Strict;
  if (!oracle::open_edges(st.residual, ctx.h1, ctx.h2, false).empty()) return false;
  return !strict || oracle::open_edges(st.residual, ctx.h1, ctx.h2, true).empty();
}

// A dense 10-vertex graph that does not arrow (K4,K3) and on which the
// first loop gets stuck with an edge outside every B-hat member.
KGraph strict_grow_fixture() {
  std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {0, 6}, {0, 7}, {0, 8}, {0, 9}, {1, 2}, {1, 3}, {1, 5}, {1, 7}, {1, 8},
                      {1, 9}, {2, 3}, {2, 4}, {2, 6}, {2, 7}, {2, 9}, {3, 4}, {3, 5}, {3, 7}, {3, 9}, {4, 5}, {4, 6},
                      {4, 7}, {4, 8}, {4, 9}, {5, 6}, {5, 7}, {5, 9}, {6, 7}, {6, 8}, {6, 9}, {7, 8}, {8, 9}};
  return KGraph(2, 10, e);
}

}  // namespace

TEST_CASE("colouring book transports colourings across labellings") {
  const Setup& s = k4k3();
  ColouringBook book(s.ctx.h1, s.ctx.h2);
  const KGraph& k5 = s.members.front();
  CHECK_FALSE(book.contains(k5));
  Colouring c = book.colouring_for(k5);
  CHECK(book.searches() == 1);
  CHECK(book.contains(k5));
  std::vector<Vertex> perm{3, 0, 4, 1, 2};
  KGraph relabelled = k5.relabel(perm, 5);
  Colouring d = book.colouring_for(relabelled);
  CHECK(book.searches() == 1);
  CHECK(is_valid_colouring(relabelled, {K(4), K(3)}, d));

  CHECK_THROWS_AS(book.add(k5, Colouring{std::vector<int>(10, kBlue)}), std::invalid_argument);
  ColouringBook strict_book(s.ctx.h1, s.ctx.h2, false);
  CHECK_THROWS_AS(strict_book.colouring_for(k5), std::runtime_error);
  ColouringBook tt(K(3), K(3));
  CHECK_THROWS_AS(tt.colouring_for(K(6)), std::runtime_error);
}

TEST_CASE("Asym-Edge-Col on K4 strips every edge and swaps") {
  const Setup& s = k4k3();
  ColouringBook book(s.ctx.h1, s.ctx.h2);
  EdgeColResult r = asym_edge_col(K(4), s.ctx, s.members, book);
  REQUIRE_FALSE(r.stuck());
  CHECK(r.stats.edges_removed == 6);
  CHECK(r.stats.b_colour_members == 0);
  // Every triangle is pushed with its first removed edge.
  CHECK(r.stats.l_pushed_with_edge + r.stats.l_pushed_alone == 4);
  CHECK(r.stats.swaps >= 1);
  const Colouring& c = std::get<Colouring>(r.outcome);
  CHECK(oracle_valid(K(4), s.ctx, c));
}

TEST_CASE("a single member goes straight to B-Colour") {
  const Setup& s = k4k3();
  for (const KGraph& m : s.members) {
    ColouringBook book(s.ctx.h1, s.ctx.h2);
    EdgeColResult r = asym_edge_col(m, s.ctx, s.members, book);
    REQUIRE_FALSE(r.stuck());
    CHECK(r.stats.edges_removed == 0);
    CHECK(r.stats.b_colour_members == 1);
    CHECK(std::get<Colouring>(r.outcome).colour == book.colouring_for(m).colour);
  }
}

TEST_CASE("two members sharing an edge get stuck and Special returns both") {
  const Setup& s = k4k3();
  const KGraph& k5 = s.members.front();
  // Two K5 on a common edge are themselves the 8-vertex member.
  REQUIRE(s.members.size() == 3);
  CHECK(isomorphic(pipeline_inputs::glue_on_edge(k5, 0, k5), s.members[2]));
  KGraph g = pipeline_inputs::glue_on_edge(k5, 0, s.members[1]);
  CHECK(g.n() == 9);
  CHECK(g.m() == 23);
  ColouringBook book(s.ctx.h1, s.ctx.h2);
  PipelineResult p = run_pipeline(g, s.ctx, s.members, book);
  REQUIRE(p.edgecol.stuck());
  const StuckReport& st = std::get<StuckReport>(p.edgecol.outcome);
  CHECK(st.edges.size() == 23);
  CHECK(residual_ok(st, s.ctx));
  CHECK(st.family.in_Cstar);
  REQUIRE(p.special.has_value());
  CHECK(p.special->branch == 2);
  CHECK(p.special->edges.size() == 23);
  CHECK_FALSE(p.grow.has_value());
}

TEST_CASE("B-Colour") {
  const Setup& s = k4k3();
  ColouringBook book(s.ctx.h1, s.ctx.h2);
  CHECK(b_colour(KGraph(2, 3, {}), s.ctx, s.members, book).colour.empty());

  const KGraph& a = s.members[0];
  const KGraph& b = s.members.back();
  KGraph u = disjoint_union(a, b);
  Colouring c = b_colour(u, s.ctx, s.members, book);
  CHECK(oracle_valid(u, s.ctx, c));
  // Each component carries exactly its stored colouring.
  Colouring ca = book.colouring_for(a), cb = book.colouring_for(b);
  for (int e = 0; e < a.m(); ++e) CHECK(c.colour[u.edge_index(a.edge(e))] == ca.colour[e]);
  for (int e = 0; e < b.m(); ++e) {
    Edge f;
    for (Vertex v : b.edge(e)) f.push_back(v + a.n());
    CHECK(c.colour[u.edge_index(f)] == cb.colour[e]);
  }
  CHECK_THROWS_AS(b_colour(pipeline_inputs::glue_on_edge(a, 0, s.members[1]), s.ctx, s.members, book),
                  std::invalid_argument);
  CHECK_THROWS_AS(b_colour(K(4), s.ctx, s.members, book), std::invalid_argument);
}

TEST_CASE("Special branches") {
  const Setup& s = k4k3();
  const KGraph k5 = K(5);
  CHECK_FALSE(special(disjoint_union(k5, k5), s.members, s.ctx).has_value());
  // One member plus a pendant edge: counts 1 and 0, neither branch fires.
  CHECK_FALSE(special(k5.with_edges({{4, 5}}, 6), s.members, s.ctx).has_value());

  // Three K5 in a ring through single vertices: every edge is in exactly
  // one member, and the triangle on the three shared vertices is non-trivial.
  KGraph ring = pipeline_inputs::glue_into(k5, k5, {4, -1, -1, -1, -1});
  ring = pipeline_inputs::glue_into(ring, k5, {8, -1, -1, -1, 0});
  REQUIRE(ring.n() == 12);
  REQUIRE(ring.m() == 30);
  auto sp = special(ring, s.members, s.ctx);
  REQUIRE(sp.has_value());
  CHECK(sp->branch == 1);
  CHECK(sp->edges.size() == 30);
  CHECK(isomorphic(sp->graph, ring.edge_subgraph(sp->edges, true)));
}

TEST_CASE("Minimising-Subhypergraph is the maximal minimiser") {
  std::mt19937_64 rng(41);
  const PairContext& ctx = k3k3().ctx;
  int checked = 0;
  for (int it = 0; it < 200; ++it) {
    KGraph f = oracle::random_graph_m(rng, 2, 6 + it % 3, 9 + it % 6);
    Rational best = oracle::min_lambda(f, ctx.mk_pair);
    if (best > Rational(0)) {
      CHECK_THROWS_AS(minimising_subgraph(f, ctx), std::invalid_argument);
      continue;
    }
    ++checked;
    std::vector<Vertex> vs = minimising_subgraph(f, ctx);
    KGraph sub = f.induced(vs);
    CHECK(lambda(sub, ctx) == best);
    // Every minimising edge set spans only vertices of the output.
    std::vector<char> in(f.n(), 0);
    for (Vertex v : vs) in[v] = 1;
    oracle::for_each_edge_subset(f, [&](int e, int v, unsigned long long mask) {
      if (lambda_value(v, e, ctx.mk_pair) != best) return;
      for (int i = 0; i < f.m(); ++i)
        if (mask >> i & 1ULL)
          for (Vertex x : f.edge(i)) CHECK(in[x]);
    });
    // Relabelling does not change the isomorphism class of the output.
    std::vector<Vertex> perm(f.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    KGraph g = f.relabel(perm, f.n());
    CHECK(isomorphic(g.induced(minimising_subgraph(g, ctx)), sub));
  }
  CHECK(checked > 20);
}

TEST_CASE("Grow-Alt on equal-regime residuals") {
  const Setup& s = k3k3();
  int runs = 0;
  for (int n = 5; n <= 7; ++n)
    for (const KGraph& g : all_graphs(2, n)) {
      if (g.min_degree() < 2) continue;
      ColouringBook book(s.ctx.h1, s.ctx.h2);
      EdgeColResult r = asym_edge_col(g, s.ctx, s.members, book);
      if (!r.stuck()) {
        CHECK(is_valid_colouring(g, {K(3), K(3)}, std::get<Colouring>(r.outcome)));
        continue;
      }
      const StuckReport& st = std::get<StuckReport>(r.outcome);
      CHECK(residual_ok(st, s.ctx));
      if (special(st.residual, s.members, s.ctx)) continue;
      for (long n_param : {0L, 1000000000L}) {
        GrowRun run = grow_runtime(st.residual, s.ctx, s.members, n_param);
        ++runs;
        TraceReport tr = classify_trace(run.trace, s.ctx);
        CHECK_MESSAGE(tr.consistent, tr.counterexample);
        for (const GrowStep& step : run.trace) {
          CHECK(step.new_edges >= 1);
          CHECK((step.kind == StepKind::CloseEAltL || step.kind == StepKind::CloseEAltR));
        }
        const double cap = std::log(n_param > 0 ? double(n_param) : double(g.n()) * g.n());
        if (run.via_iteration_cap) {
          CHECK(run.iterations >= cap);
        } else {
          CHECK(run.output_lambda <= -s.ctx.gamma);
          CHECK(contains_copy(run.output, st.residual));
        }
        if (n_param > 0) CHECK_FALSE(run.via_iteration_cap);
      }
    }
  CHECK(runs >= 10);
  MESSAGE("Grow-Alt runs: " << runs);
}

TEST_CASE("Grow on a strict-regime residual") {
  const Setup& s = k4k3();
  KGraph g = strict_grow_fixture();
  ColouringBook book(s.ctx.h1, s.ctx.h2);
  EdgeColResult r = asym_edge_col(g, s.ctx, s.members, book);
  REQUIRE(r.stuck());
  const StuckReport& st = std::get<StuckReport>(r.outcome);
  CHECK(residual_ok(st, s.ctx));
  REQUIRE_FALSE(special(st.residual, s.members, s.ctx).has_value());

  // n = 1 stops before the first iteration: the output is the seed copy.
  GrowRun seed = grow_runtime(st.residual, s.ctx, s.members, 1);
  CHECK(seed.iterations == 0);
  CHECK(seed.via_iteration_cap);
  CHECK(isomorphic(seed.output, K(4)));

  for (long n_param : {0L, 1000000000L}) {
    GrowRun run = grow_runtime(st.residual, s.ctx, s.members, n_param);
    TraceReport tr = classify_trace(run.trace, s.ctx);
    CHECK_MESSAGE(tr.consistent, tr.counterexample);
    CHECK(run.iterations >= 1);
    if (!run.via_iteration_cap) CHECK(run.output_lambda <= -s.ctx.gamma);
    CHECK(run.final_edges.size() > run.seed_edges.size());
    REQUIRE(run.path.size() == run.trace.size() + 1);
    std::vector<KGraph> graphs;
    for (const auto& ids : run.path) graphs.push_back(st.residual.edge_subgraph(ids, false));
    FlowerAudit audit = audit_trace(graphs, run.trace, s.ctx);
    CHECK_MESSAGE(audit.ok(), audit.counterexample);
  }
  CHECK_THROWS_AS(grow_runtime(K(5), s.ctx, s.members), std::invalid_argument);
}

TEST_CASE("pipeline on generated inputs") {
  for (const Setup* s : {&k4k3(), &k3k3()}) {
    auto inputs = pipeline_inputs::generate(s->ctx, s->members, 40, 97);
    int coloured = 0, stuck = 0;
    for (const auto& in : inputs) {
      ColouringBook book(s->ctx.h1, s->ctx.h2);
      PipelineResult p = run_pipeline(in.graph, s->ctx, s->members, book);
      if (!p.edgecol.stuck()) {
        ++coloured;
        const Colouring& c = std::get<Colouring>(p.edgecol.outcome);
        CHECK_MESSAGE(is_valid_colouring(in.graph, {s->ctx.h1, s->ctx.h2}, c), in.kind);
        if (in.graph.m() <= 22) CHECK(oracle_valid(in.graph, s->ctx, c));
        if (in.kind == "sparse-union" || in.kind == "member-plus") CHECK(p.edgecol.stats.b_colour_members >= 1);
      } else {
        ++stuck;
        const StuckReport& st = std::get<StuckReport>(p.edgecol.outcome);
        CHECK_MESSAGE(residual_ok(st, s->ctx), in.kind);
        CHECK((p.special.has_value() || p.grow.has_value()));
      }
      if (in.kind == "shared-edge") CHECK(p.edgecol.stuck());
    }
    CHECK(coloured > 0);
    CHECK(stuck > 0);
  }
}
