#pragma once
// The colouring pipeline: Asym-Edge-Col over B-hat with its edge/copy stack
// and colour-swap phase, B-Colour, and the Special / Grow procedures run on
// a residual graph the first loop got stuck on.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hrw/density.hpp"
#include "hrw/grow.hpp"
#include "hrw/hypergraph.hpp"
#include "hrw/ramsey.hpp"
#include "hrw/structure.hpp"

namespace hrw {

// Colour 0 is red (no red H1), colour 1 is blue (no blue H2).
inline constexpr int kRed = 0;
inline constexpr int kBlue = 1;

// Valid colourings of B-hat members, stored against the canonical form so
// that any labelled copy of a member can be coloured. Missing members are
// searched on demand unless that is switched off.
class ColouringBook {
 public:
  ColouringBook(KGraph h1, KGraph h2, bool search_missing = true);

  // Throws std::invalid_argument if c is not a valid colouring of g.
  void add(const KGraph& g, const Colouring& c);
  bool contains(const KGraph& g) const;
  // Colouring of g in g's own edge order. Throws std::runtime_error if g is
  // unknown and searching is off, or if g arrows (H1, H2).
  Colouring colouring_for(const KGraph& g);

  int size() const { return static_cast<int>(book_.size()); }
  int searches() const { return searches_; }

 private:
  KGraph h1_, h2_;
  bool search_missing_;
  int searches_ = 0;
  std::map<std::vector<Edge>, std::vector<int>> book_;  // canonical edges -> colour per canonical edge
};

struct StackItem {
  enum class Kind { Edge, LCopy };
  Kind kind = Kind::Edge;
  int index = 0;  // edge index of G, or index into the H2-copy list of G
};

struct StuckReport {
  KGraph residual;         // G' on the vertex set of G
  std::vector<int> edges;  // edge indices of G that are still present
  FamilyReport family;     // of the residual
  std::string diagnostics;
};

struct EdgeColStats {
  int edges_removed = 0;
  int l_pushed_with_edge = 0;
  int l_pushed_alone = 0;
  int swaps = 0;
  int b_colour_members = 0;  // members coloured by B-Colour (0 if G' was empty)
};

struct EdgeColResult {
  std::variant<Colouring, StuckReport> outcome;
  EdgeColStats stats;
  bool stuck() const { return std::holds_alternative<StuckReport>(outcome); }
};

// Runs the two while-loops. The returned colouring is verified against
// fresh copy enumeration; a failed verification or a missing swap edge is a
// std::logic_error, since the procedure guarantees neither can happen.
EdgeColResult asym_edge_col(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat,
                            ColouringBook& book);

// Union of per-member colourings of an (H1,H2)-sparse B-hat-graph.
// Throws std::invalid_argument when g is not one.
Colouring b_colour(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat, ColouringBook& book);

struct SpecialResult {
  int branch = 0;          // 1: union over a non-trivial copy T, 2: S1 u S2
  std::vector<int> edges;  // edge indices of the input
  KGraph graph;            // those edges, compacted
};

// Both branches of Special; the equal-regime Special-Alt is the same procedure.
std::optional<SpecialResult> special(const KGraph& g, const std::vector<KGraph>& bhat, const PairContext& ctx);

struct GrowRun {
  KGraph output;                     // compacted
  std::vector<int> seed_edges;       // F_0 as edge indices of G'
  std::vector<int> final_edges;      // F_i as edge indices of G'
  int iterations = 0;
  bool via_iteration_cap = false;    // i >= ln(n) rather than the lambda guard
  Rational output_lambda;
  std::vector<GrowStep> trace;       // kinds reuse the grow module's names
  std::vector<std::vector<int>> path;  // F_0, F_1, ... as edge indices of G'
};

// Grow (strict regime) or Grow-Alt (equal regime) on the residual g.
// n_param <= 0 means v(g)^2. Throws std::invalid_argument when no edge of g
// lies outside every S^B member, and std::logic_error when an assignment the
// procedure promises fails.
GrowRun grow_runtime(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat, long n_param = 0);

// The inclusion-maximal subgraph of f minimising lambda. It is unique, so
// it depends only on the isomorphism class of f. Returns vertex ids of f.
std::vector<Vertex> minimising_subgraph(const KGraph& f, const PairContext& ctx);

struct PipelineResult {
  EdgeColResult edgecol;
  std::optional<SpecialResult> special;
  std::optional<GrowRun> grow;
};

// asym_edge_col, then Special or Grow on a stuck residual.
PipelineResult run_pipeline(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat,
                            ColouringBook& book, long n_param = 0);

}  // namespace hrw
