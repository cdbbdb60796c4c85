#pragma once
// Desk-scale checks of the proof devices: the attachment families H and H*
// around an edge of a base graph F, F-external density, the edge ordering
// with its Delta bookkeeping, and flower-count audits on labelled Grow paths.

#include <optional>
#include <string>
#include <vector>

#include "hrw/density.hpp"
#include "hrw/grow.hpp"
#include "hrw/hypergraph.hpp"
#include "hrw/rational.hpp"

namespace hrw {

// J = F + an H2-copy on the anchor edge + an H1-copy on every other edge of
// that H2-copy. F keeps its vertex ids; new vertices follow.
struct AttachmentInstance {
  KGraph base;                          // F
  int anchor = 0;                       // edge index of the anchor in F
  KGraph composite;                     // J
  std::vector<Vertex> inner_map;        // H2 vertex -> J vertex
  std::vector<Edge> inner_edges;        // E_J, in H2 edge order
  std::vector<std::vector<Vertex>> outer_maps;      // per inner edge: H1 vertex -> J vertex
  std::vector<std::vector<Vertex>> outer_vertices;  // U_J(f), sorted
  std::vector<std::vector<Edge>> outer_edges;       // D_J(f), sorted
  bool star = false;                    // J in H*

  int v_plus() const { return composite.n() - base.n(); }
  int e_plus() const { return composite.m() - base.m(); }
  // V(H_anchor): the anchor's vertices and the inner vertices, sorted.
  std::vector<Vertex> inner_vertex_set() const;
  std::string str() const;
};

// Builds and validates an instance. Vertex ids in the maps below v(F) are
// vertices of F; the rest are new and must be contiguous. Throws
// std::invalid_argument when a construction constraint fails.
AttachmentInstance make_attachment(const KGraph& f, int anchor, const KGraph& h1, const KGraph& h2,
                                   const std::vector<Vertex>& inner_map,
                                   const std::vector<std::vector<Vertex>>& outer_maps);

// The H* instance with every attached vertex new: H2's edge `h2_edge` goes
// onto the anchor and H1's edge 0 onto each inner edge.
AttachmentInstance star_attachment(const KGraph& f, int anchor, const KGraph& h1, const KGraph& h2, int h2_edge = 0);

struct AttachLimits {
  int max_vertices = 0;      // on J; 0 means v(F) + v2 + (e2 - 1) * v1
  long max_nodes = 2000000;  // search nodes
};

struct AttachmentFamily {
  std::vector<AttachmentInstance> instances;  // one per (isomorphism class of J, star flag)
  long leaves = 0;           // constructions reached before deduplication
  long nodes = 0;
  bool capped_vertices = false;
  bool capped_nodes = false;
  bool partial() const { return capped_nodes; }
};

// Every construction within the caps. A vertex cap below the H* size
// leaves H* out; that is reported through capped_vertices, not partial().
// Throws std::invalid_argument for a bad anchor or uniformity mismatch.
AttachmentFamily enumerate_attachments(const KGraph& f, int anchor, const KGraph& h1, const KGraph& h2,
                                       const AttachLimits& limits = {});

// e+(J) / v+(J). Throws std::domain_error when v+ = 0.
Rational external_density(const AttachmentInstance& inst);
// The common value over H*: e1 (e2 - 1) / ((v1 - k)(e2 - 1) + v2 - k).
Rational star_external_density(const KGraph& h1, const KGraph& h2);

struct Lemma21Report {
  long star = 0, nonstar = 0;
  long violations = 0;            // non-star instances with density <= the H* value
  Rational star_density;
  std::optional<Rational> min_nonstar;
  std::string counterexample;
  bool ok() const { return violations == 0; }
};

Lemma21Report check_lemma21(const AttachmentFamily& family, const KGraph& h1, const KGraph& h2);

struct DeltaLedger {
  std::vector<int> order;                   // inner edge indices, in push order
  std::vector<std::vector<int>> groups;     // E_1, E_2, ...
  std::vector<std::vector<Vertex>> group_vertices;  // V_1, V_2, ...
  std::vector<int> leftover;                // pushed by the final loop
  std::vector<int> delta_e, delta_v;        // per inner edge index
};

// The ordering procedure, followed line by line; "any" choices take the
// smallest inner edge index.
DeltaLedger order_edges(const AttachmentInstance& inst);

struct LedgerCheck {
  bool total_order = true;   // every inner edge exactly once
  bool sum_e = true, sum_v = true;
  long inei_violations = 0;
  long notinei_violations = 0;
  bool ok() const { return total_order && sum_e && sum_v && inei_violations == 0 && notinei_violations == 0; }
  std::string str() const;
};

// e+ and v+ are recomputed from J and F rather than from the ledger.
LedgerCheck check_ledger(const AttachmentInstance& inst, const DeltaLedger& ledger, const KGraph& h1,
                         const KGraph& h2, const Rational& mk_pair);

// ------------------------------------------------------------ flower audit

// Flowers are the structures J_i added by non-degenerate steps; J_i is
// read off the path as the new edges plus the attachment edge, which is
// the k vertices it shares with F_i. J_i stays fully open until a later
// edge contains one of its internal vertices.
struct FlowerAudit {
  std::vector<int> counts;   // fully open flowers at times 0, 1, ...
  long closed_petals = 0;    // a petal edge of a fully open flower is not open
  long shared_internal = 0;  // two fully open flowers share an internal vertex
  long flower_step_lost = 0; // a flower step ended more than one fully open flower
  long pair_decrease = 0;    // two flower steps, the first ending one, the second lowering the count
  long degenerate_drop = 0;  // count fell by more than Y = v2 + (e2 - 1)(v1 - k)
  long malformed = 0;        // a non-degenerate step that does not meet F_i in exactly k vertices
  std::string counterexample;
  bool ok() const {
    return closed_petals == 0 && shared_internal == 0 && flower_step_lost == 0 && pair_decrease == 0 &&
           degenerate_drop == 0 && malformed == 0;
  }
};

// path[i] are labelled graphs (one vertex labelling throughout) with
// E(path[i]) contained in E(path[i+1]); only the class of steps[i] is read.
// Throws std::invalid_argument on a size mismatch.
FlowerAudit audit_trace(const std::vector<KGraph>& path, const std::vector<GrowStep>& steps, const PairContext& ctx);

struct GrowPath {
  std::vector<KGraph> graphs;
  std::vector<GrowStep> steps;
};

// Strict regime: starting from `start`, attach a fresh H* flower at the
// eligible edge `steps` times (fewer if no open edge remains).
GrowPath free_grow_path(const KGraph& start, const PairContext& ctx, int steps);

}  // namespace hrw
