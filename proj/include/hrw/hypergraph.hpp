#pragma once
// k-uniform hypergraphs ("k-graphs"), canonical labelling, copy enumeration,
// generators and the .khg text format.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrw {

using Vertex = int;
using Edge = std::vector<Vertex>;  // sorted, k distinct vertices

// Immutable k-graph on vertices 0..n-1. Edges are kept sorted
// lexicographically, so edge indices are stable for a given graph value.
class KGraph {
 public:
  KGraph() = default;
  // Throws std::invalid_argument if an edge has the wrong arity, repeats a
  // vertex, is out of range or is listed twice.
  KGraph(int k, int n, std::vector<Edge> edges);

  int k() const { return k_; }
  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int i) const { return edges_[i]; }

  // Index of e (which must be sorted) or -1.
  int edge_index(const Edge& e) const;
  bool has_edge(const Edge& e) const { return edge_index(e) >= 0; }

  // Edge indices incident to each vertex.
  const std::vector<std::vector<int>>& incidence() const { return inc_; }
  int degree(Vertex v) const { return static_cast<int>(inc_[v].size()); }
  int min_degree() const;
  // Sorted list of vertices sharing an edge with v.
  std::vector<Vertex> neighbours(Vertex v) const;

  // Vertices lying in at least one edge.
  std::vector<Vertex> spanned_vertices() const;

  // Subgraph formed by the given edge indices; if compact, vertices are
  // renumbered 0.. in increasing order of their old id and only spanned
  // vertices are kept, otherwise the vertex set is unchanged.
  KGraph edge_subgraph(const std::vector<int>& edge_ids, bool compact) const;
  // Subgraph induced on a vertex set, relabelled 0.. in increasing id order.
  KGraph induced(const std::vector<Vertex>& verts) const;
  // Same graph with edges added (duplicates of existing edges are ignored)
  // and the vertex count raised to n.
  KGraph with_edges(const std::vector<Edge>& extra, int n) const;
  // Apply a vertex relabelling perm (old id -> new id), new vertex count n.
  KGraph relabel(const std::vector<Vertex>& perm, int n) const;

  friend bool operator==(const KGraph& a, const KGraph& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int k_ = 2;
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> inc_;
};

Edge make_edge(std::vector<Vertex> vs);

KGraph disjoint_union(const KGraph& a, const KGraph& b);

// ---------------------------------------------------------------- .khg I/O

enum class ParseErrorKind { MalformedHeader, MalformedEdge, EdgeArity, VertexOutOfRange, RepeatedVertex, DuplicateEdge, EdgeCount };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

KGraph parse_khg(const std::string& text);
// Header "k n m" followed by one sorted edge per line, edges in
// lexicographic order. An optional comment is written as '#' lines first.
std::string serialise_khg(const KGraph& g, const std::string& comment = "");
KGraph read_khg_file(const std::string& path);
void write_khg_file(const std::string& path, const KGraph& g, const std::string& comment = "");

// ---------------------------------------------------------------- generators
//
// Labellings:
//   complete(a, k)          vertices 0..a-1, all k-subsets.
//   complete_bipartite(a,b) parts {0..a-1} and {a..a+b-1}.
//   cycle(l)                edges {i, i+1 mod l}.
//   path(l)                 l edges {i, i+1}, vertices 0..l.
//   triforce()              central triangle 0,1,2; vertex 3 on edge 01,
//                           4 on 12, 5 on 02.
//   plusk(G, k)             every edge of the 2-graph G gets the extra
//                           vertices n(G)..n(G)+k-3.
//   cyclic_concat(A, l)     l copies of A; copy i maps vertex x of A to
//                           i*(v(A)-1) + x, with copy i's last vertex equal
//                           to copy i+1's vertex 0 (indices mod l*(v(A)-1)).

class GenerateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace gen {
KGraph empty(int n, int k = 2);
KGraph complete(int a, int k = 2);
KGraph complete_bipartite(int a, int b);
KGraph cycle(int l);
KGraph path(int l);
KGraph triforce();
KGraph plusk(const KGraph& base, int k);
KGraph cyclic_concat(const KGraph& a, int l);
}  // namespace gen

// Generate from a family name and integer parameters, e.g.
// ("complete", {4}), ("plusk_complete", {3, 4}), ("cyclic_concat_complete", {4, 6}).
KGraph generate(const std::string& family, const std::vector<int>& params);

// Short names used by the CLI and tests: K4, K3_3 (K_{3,3}), C5, P3,
// triforce, K3^+4 (plusk), K6plus4, C6^K4 (cyclic concat), E5 (edgeless).
KGraph graph_from_name(const std::string& name);

// ---------------------------------------------------------------- canonical form

struct CanonicalForm {
  int k = 2;
  int n = 0;
  std::vector<Edge> edges;                 // canonical relabelled edge list, sorted
  std::vector<std::vector<Vertex>> generators;  // automorphism generators (old ids)
  std::vector<Vertex> labelling;           // old vertex id -> canonical id
  std::uint64_t digest = 0;

  KGraph graph() const { return KGraph(k, n, edges); }
  std::string digest_hex() const;
  // Orders by (k, n, number of edges, edge list).
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b);
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.k == b.k && a.n == b.n && a.edges == b.edges;
  }
};

CanonicalForm canonical_form(const KGraph& g);
bool isomorphic(const KGraph& a, const KGraph& b);
// One representative per isomorphism class of k-graphs on exactly n
// vertices with at most max_edges edges (all if negative), built edge by
// edge with canonical deduplication. Representatives are canonical forms.
std::vector<KGraph> all_graphs(int k, int n, int max_edges = -1);

// Orbits of the automorphism group (vertex -> orbit representative).
std::vector<Vertex> automorphism_orbits(const CanonicalForm& cf, int n);

// ---------------------------------------------------------------- copies

struct Copy {
  int pattern = 0;
  std::vector<Vertex> map;       // pattern vertex -> host vertex
  std::vector<int> edges;        // host edge indices, sorted
  std::vector<Vertex> vertices;  // host vertices, sorted

  friend bool operator==(const Copy& a, const Copy& b) {
    return a.edges == b.edges && a.vertices == b.vertices;
  }
  friend bool operator<(const Copy& a, const Copy& b) {
    return a.edges != b.edges ? a.edges < b.edges : a.vertices < b.vertices;
  }
};

// All subgraphs of g isomorphic to h (not necessarily induced), each once.
// Throws std::invalid_argument on a uniformity mismatch or empty pattern.
std::vector<Copy> copies_of(const KGraph& h, const KGraph& g, int pattern_id = 0);
// Stop after the first copy; cheaper than copies_of when only existence matters.
bool contains_copy(const KGraph& h, const KGraph& g);

// Every injective map of h's vertices into g that sends edges to edges,
// calling f(map) for each. Used by copy enumeration and by tests.
template <class F>
void for_each_embedding(const KGraph& h, const KGraph& g, F&& f);

struct Connectivity {
  bool connected = true;
  std::vector<std::vector<Vertex>> components;  // sorted, isolated vertices as singletons
};
Connectivity connectivity(const KGraph& g);

}  // namespace hrw

#include "hrw/detail/embedding.hpp"
