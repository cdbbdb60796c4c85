#pragma once
// Copy families R_G / L_G / L*_G, the classes C and C*, open edges,
// flower detection and the B-hat relative families S^B_G and T^B_G.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hrw/density.hpp"
#include "hrw/hypergraph.hpp"

namespace hrw {

// Copies of H1 (R) and H2 (L) in a fixed base graph, indexed by edge.
// Edges can be deleted one at a time; copies through a deleted edge die.
class CopyIndex {
 public:
  CopyIndex(const KGraph& g, const PairContext& ctx);

  const KGraph& base() const { return g_; }
  Regime regime() const { return regime_; }

  void remove_edge(int e);
  bool edge_alive(int e) const { return edge_alive_[e]; }
  int alive_edge_count() const;
  // The base graph restricted to alive edges (same vertex set).
  KGraph current() const;

  const std::vector<Copy>& r_copies() const { return r_; }
  const std::vector<Copy>& l_copies() const { return l_; }
  bool r_alive(int i) const { return r_dead_[i] == 0; }
  bool l_alive(int i) const { return l_dead_[i] == 0; }
  const std::vector<int>& r_through(int e) const { return r_by_edge_[e]; }
  const std::vector<int>& l_through(int e) const { return l_by_edge_[e]; }

  // True iff E(L_li) and E(R_ri) intersect exactly in {e}.
  bool meet_exactly(int li, int ri, int e) const;
  // Some alive (L, R) pair meets exactly in e.
  bool pair_closes(int e) const;
  // Alive L-copies in which every edge is the exact intersection with some R.
  std::vector<char> lstar_mask() const;
  // Open edges for the regime, as base edge indices (alive edges only).
  std::vector<int> open_edges() const;
  bool in_C() const;
  bool in_Cstar() const;

 private:
  KGraph g_;
  Regime regime_;
  std::vector<Copy> r_, l_;
  std::vector<std::vector<int>> r_by_edge_, l_by_edge_;
  std::vector<char> edge_alive_;
  std::vector<int> r_dead_, l_dead_;  // number of dead edges in each copy
};

struct FamilyReport {
  bool in_C = false;
  bool in_Cstar = false;
  std::vector<int> open_edges;    // edge indices of G
  std::vector<Copy> lstar_copies;
  std::string str(const KGraph& g) const;
};

FamilyReport family_report(const KGraph& g, const PairContext& ctx);

struct Flower {
  Edge attachment_edge;
  Copy core;                      // H2 copy (strict) or the single attached copy (equal)
  std::vector<Copy> petals;       // H1 copies, one per non-attachment core edge (strict only)
  std::vector<Vertex> internal_vertices;
  std::vector<int> petal_edges;   // edge indices of the host
  std::vector<int> flower_edges;  // all flower edges except the attachment edge
  std::string str(const KGraph& g) const;
};

// Every sub-structure of f matching the fully-open-flower pattern.
std::vector<Flower> detect_flowers(const KGraph& f, const PairContext& ctx);
// Same, reusing an existing copy index of f.
std::vector<Flower> detect_flowers(const CopyIndex& idx, const PairContext& ctx);
// Pairs of flowers whose internal vertex sets intersect.
bool flowers_overlap(const std::vector<Flower>& fl);

struct SBFamily {
  std::vector<Copy> members;       // Copy::pattern = index into the bhat list
  std::vector<int> per_edge_count; // |S^B_G(e)|
};

SBFamily sb_family(const KGraph& g, const std::vector<KGraph>& bhat);

struct BhatSparse {};
struct BhatNotSparse {
  Copy witness;  // pattern 1 = H1, 2 = H2
};
struct NotBhatGraph {
  int edge;
};
using BhatClass = std::variant<BhatSparse, BhatNotSparse, NotBhatGraph>;

BhatClass classify_bhat_graph(const KGraph& g, const PairContext& ctx, const std::vector<KGraph>& bhat);

}  // namespace hrw
