#pragma once
// Constructive colourings from density bounds: k-forest decompositions by
// matroid partition, sparse partitions by bipartite matching, degeneracy
// colourings and the vertex-class reduction, plus a case dispatcher that
// picks the applicable construction for a pair (H1, H2).

#include <optional>
#include <string>
#include <vector>

#include "hrw/hypergraph.hpp"
#include "hrw/ramsey.hpp"
#include "hrw/rational.hpp"

namespace hrw {

struct Decomposition {
  enum class Kind { KForest, SparsePart };
  Kind kind = Kind::KForest;
  std::vector<std::vector<int>> parts;  // edge indices, each sorted; parts partition E(G)

  // part index of every edge, -1 if an edge is missing
  std::vector<int> part_of_edge(int m) const;
  // One "edge part" line per edge.
  std::string serialise(int m) const;
};

// True iff e(S[X]) <= |X| - 1 for every non-empty vertex set X, where S is
// the given edge set of g. Uses max-closure flows.
bool is_k_forest(const KGraph& g, const std::vector<int>& edges);

// A partition of E(g) into l k-forests, or none when ar(g) > l. Built by
// matroid partition with shortest augmenting paths. Throws
// std::invalid_argument for l < 1.
std::optional<Decomposition> forest_decomposition(const KGraph& g, int l);

// A partition of E(g) into l parts with m(part) <= 1, or none when
// m(g) > l: every edge is matched to one of l copies of one of its vertices.
std::optional<Decomposition> sparse_partition(const KGraph& g, int l);

// Edge colouring with colours 0..r-1 in which no vertex, taken in reverse
// min-degree removal order, has more than delta_i - 1 back edges of colour
// i. No colour-i subgraph then has minimum degree delta_i. None when some
// vertex has more than sum(delta_i - 1) back edges. Throws for delta_i < 1.
std::optional<Colouring> degeneracy_colouring(const KGraph& g, const std::vector<int>& deltas);

// Splits V(g) into `classes` parts with no monochromatic copy of a
// subgraph of h1 of minimum degree delta_max(h1), then colours edges inside
// a part red (0) and crossing edges blue (1). The blue graph has weak
// chromatic number at most `classes`. None if some vertex finds no class
// (possible only when classes < k). Throws std::invalid_argument unless
// m(g) < delta_max(h1) and classes >= 1.
std::optional<Colouring> chi_reduction_colouring(const KGraph& g, const KGraph& h1, int classes);

// Largest integer strictly below x.
long floor_below(const Rational& x);

struct DispatchResult {
  std::string label;  // "(i)".."(viii)", "hyper(i)", "hyper(ii)"
  std::string route;  // "forest", "sparse", "degeneracy", "chi", "search"
  Colouring colouring;
  std::string note;
};

// Case labels whose hypotheses on (H1, H2) hold, in dispatch order:
// (i) (ii) (iii) (iv) (vii) (viii) (v) (vi) hyper(i) hyper(ii).
// Cases (i)-(viii) are for k = 2 only.
std::vector<std::string> applicable_cases(const KGraph& h1, const KGraph& h2);

// The colouring produced by one case's construction, if its hypotheses hold
// and the construction's own condition is met on g. Verified before return.
std::optional<DispatchResult> colour_by_case(const KGraph& g, const KGraph& h1, const KGraph& h2,
                                             const std::string& label);

// First applicable case in dispatch order whose construction succeeds.
// Requires m_k(H1) >= m_k(H2) > 1, (H1, H2) a heart and m(G) <= m_k(H1,H2)
// (std::invalid_argument otherwise). None means no case covers the pair.
std::optional<DispatchResult> colouring_dispatch(const KGraph& g, const KGraph& h1, const KGraph& h2);

}  // namespace hrw
