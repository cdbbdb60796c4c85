#pragma once
// Maximum-weight closure on the vertex/edge incidence structure of a k-graph,
// solved by Dinic max-flow.

#include <cstdint>
#include <vector>

#include "hrw/hypergraph.hpp"

namespace hrw {

struct ClosureResult {
  std::int64_t value = 0;          // gain * e(S) - cost * |S|
  std::vector<Vertex> vertices;    // the inclusion-minimal optimal S, sorted
  int edges_inside = 0;            // e(G[S])
};

// Maximises gain * e(G[S]) - cost * |S| over vertex sets S that contain
// every vertex in `forced`. Among optimal sets the minimal one is returned.
ClosureResult max_closure(const KGraph& g, std::int64_t gain, std::int64_t cost, const std::vector<Vertex>& forced);

}  // namespace hrw
