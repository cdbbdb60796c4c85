#pragma once
// Isomorph-free enumeration of the family B-hat(H1, H2, eps): the
// strict-regime procedure with Attach-H1 / Close-e / Close-e-closededge and
// the equal-regime procedure built on Close-e-Alt.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrw/density.hpp"
#include "hrw/hypergraph.hpp"
#include "hrw/rational.hpp"

namespace hrw {

struct GrowState {
  KGraph graph;             // canonical representative
  CanonicalForm canonical;  // of graph (identity labelling)
  Rational min_lambda;      // min over non-empty subgraphs
  int open_edge_count = 0;
  int fully_open_flower_count = 0;
  int depth = 0;
  int nondeg_run = 0;       // consecutive non-degenerate steps on the path that reached it

  bool live(const PairContext& ctx) const { return min_lambda > -ctx.gamma; }
  bool emitted() const { return open_edge_count == 0; }
};

enum class StepKind { AttachH1, CloseE, CloseEClosed, CloseEAltL, CloseEAltR };
enum class StepClass { Degenerate, NonDegenerate };

std::string to_string(StepKind k);
std::string to_string(StepClass c);

struct GrowStep {
  StepKind kind = StepKind::AttachH1;
  StepClass cls = StepClass::Degenerate;
  std::uint64_t from = 0, to = 0;  // canonical digests
  Edge at;                         // attachment edge (Close-e variants), in the parent's labels
  int new_vertices = 0;
  int new_edges = 0;
  std::vector<Edge> attached;      // edges of the attached structure J, in the child's raw labels
  Rational lambda_before, lambda_after;  // whole-graph lambda
};

struct Successor {
  GrowState state;
  GrowStep step;
};

GrowState make_state(const KGraph& g, const PairContext& ctx, int depth = 0);

// The open edge chosen by Eligible-Edge (strict) or Eligible-Edge-Alt
// (equal): open edges outside every detected flower are preferred, ties
// broken by the smallest image under the canonical labelling.
std::optional<Edge> eligible_edge(const KGraph& f, const PairContext& ctx);

struct SuccessorOptions {
  int max_vertices = -1;          // negative: unlimited
  bool full_state = true;         // fill open-edge and flower counts
  long* vertex_capped = nullptr;  // incremented per result dropped by max_vertices
};

// One legal iteration from a state, every overlap pattern, one entry per
// (isomorphism class of the result, step class). Only successors passing the
// lambda guard are returned.
std::vector<Successor> successors(const GrowState& s, const PairContext& ctx, const SuccessorOptions& opt = {});

struct GrowLimits {
  long max_states = 20000;      // states expanded
  int max_vertices = 14;        // larger successors are not generated
  int max_depth = 64;
  double max_seconds = 120.0;
  Rational kappa_hat{0};        // 0: probe from the successors of H1
  bool degree_prune = true;
  bool record_trace = false;
};

struct BhatFamily {
  PairContext ctx;
  std::vector<KGraph> members;   // canonical, sorted by canonical order
  long states_expanded = 0;
  long states_seen = 0;
  long cap_vertices = 0;         // successors dropped by the vertex cap
  long cap_depth = 0;
  long run_cuts = 0;             // branches cut by the non-degenerate run bound
  bool cap_states = false;
  bool cap_time = false;
  bool root_pruned = false;      // degree bound proved the family empty
  bool kappa_violated = false;   // an observed degenerate drop fell below kappa_hat
  Rational kappa_hat{0};
  std::optional<Rational> min_degenerate_drop;
  long run_bound = 0;            // 2XY+2
  std::vector<GrowStep> trace;

  bool partial() const { return cap_vertices > 0 || cap_depth > 0 || cap_states || cap_time || kappa_violated; }
  std::string stats() const;
};

// Throws std::invalid_argument when m_k(H2) <= 1 or the pair order is wrong.
// The pair is replaced by its heart first.
BhatFamily enumerate_bhat(const KGraph& h1, const KGraph& h2, const Rational& eps, const GrowLimits& limits = {});

// Sound root test: every member of C* (or C) has minimum degree at least
// delta(H1)+delta(H2)-1, so m(F) >= that/k; if this exceeds m_k(H1,H2)+eps
// the family is empty.
bool degree_bound_empty(const PairContext& ctx);

struct TraceReport {
  bool consistent = true;
  long degenerate = 0;
  long nondegenerate = 0;
  std::optional<Rational> min_drop;  // empirical kappa
  std::string counterexample;
};

TraceReport classify_trace(const std::vector<GrowStep>& trace, const PairContext& ctx);

// Largest eps in the schedule (all > 0) whose family equals the eps = 0
// family. Throws std::invalid_argument on a non-positive entry and
// std::runtime_error when no entry qualifies or a run is partial.
Rational epsilon_star(const KGraph& h1, const KGraph& h2, const std::vector<Rational>& schedule,
                      const GrowLimits& limits = {});

}  // namespace hrw
