#pragma once
// Arrow relations G -> (H_1, ..., H_r) decided by backtracking over edge
// colours with two-watched-edge clause propagation.

#include <optional>
#include <string>
#include <vector>

#include "hrw/hypergraph.hpp"

namespace hrw {

// colour[e] in 0..r-1 for every edge index e of the host.
struct Colouring {
  std::vector<int> colour;

  // One "edge-index colour" line per edge.
  std::string serialise() const;
  static Colouring parse(const std::string& text);
};

struct SearchStats {
  long nodes = 0;
  long propagations = 0;
  long conflicts = 0;
  long clauses = 0;
};

struct ArrowResult {
  bool arrows = false;
  std::optional<Colouring> witness;  // present iff !arrows, already verified
  SearchStats stats;
};

// Throws std::invalid_argument on a uniformity mismatch or an empty pattern list.
ArrowResult arrow(const KGraph& g, const std::vector<KGraph>& patterns);

// True iff no copy of patterns[i] is monochromatic in colour i. Uses its own
// embedding enumeration, independent of the solver's clause database.
bool is_valid_colouring(const KGraph& g, const std::vector<KGraph>& patterns, const Colouring& c);

// A colouring with no red (0) H1 and no blue (1) H2, or none if G arrows.
std::optional<Colouring> valid_colouring(const KGraph& g, const KGraph& h1, const KGraph& h2);

// A subgraph that arrows (H1, H2) while none of its proper subgraphs do,
// found by deleting edges in canonical order; isolated vertices are dropped.
// None if g itself does not arrow.
std::optional<KGraph> ramsey_minimal(const KGraph& g, const KGraph& h1, const KGraph& h2);

// z(G): 0 if two minimum-degree vertices are adjacent, otherwise the largest
// t such that the vertices of degree at most delta(G)-1+t are independent.
// Throws std::invalid_argument unless k = 2.
int z_param(const KGraph& g);

}  // namespace hrw
