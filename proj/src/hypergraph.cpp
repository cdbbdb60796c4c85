#include "hrw/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

namespace hrw {

Edge make_edge(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  return vs;
}

KGraph::KGraph(int k, int n, std::vector<Edge> edges) : k_(k), n_(n), edges_(std::move(edges)) {
  if (k < 1) throw std::invalid_argument("uniformity must be positive");
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (Edge& e : edges_) {
    if (static_cast<int>(e.size()) != k) throw std::invalid_argument("edge arity differs from k");
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] >= n) throw std::invalid_argument("vertex out of range");
      if (i > 0 && e[i] == e[i - 1]) throw std::invalid_argument("repeated vertex in edge");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");
  inc_.assign(n, {});
  for (int i = 0; i < m(); ++i)
    for (Vertex v : edges_[i]) inc_[v].push_back(i);
}

int KGraph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

int KGraph::min_degree() const {
  int d = n_ == 0 ? 0 : m();
  for (Vertex v = 0; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

std::vector<Vertex> KGraph::neighbours(Vertex v) const {
  std::vector<Vertex> out;
  for (int ei : inc_[v])
    for (Vertex u : edges_[ei])
      if (u != v) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vertex> KGraph::spanned_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n_; ++v)
    if (!inc_[v].empty()) out.push_back(v);
  return out;
}

KGraph KGraph::edge_subgraph(const std::vector<int>& edge_ids, bool compact) const {
  std::vector<Edge> es;
  es.reserve(edge_ids.size());
  for (int i : edge_ids) es.push_back(edges_[i]);
  if (!compact) return KGraph(k_, n_, std::move(es));
  std::vector<Vertex> id(n_, -1);
  for (const Edge& e : es)
    for (Vertex v : e) id[v] = 0;
  int next = 0;
  for (Vertex v = 0; v < n_; ++v)
    if (id[v] == 0) id[v] = next++;
  for (Edge& e : es)
    for (Vertex& v : e) v = id[v];
  return KGraph(k_, next, std::move(es));
}

KGraph KGraph::induced(const std::vector<Vertex>& verts) const {
  std::vector<Vertex> id(n_, -1);
  std::vector<Vertex> sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) id[sorted[i]] = static_cast<Vertex>(i);
  std::vector<Edge> es;
  for (const Edge& e : edges_) {
    Edge f;
    for (Vertex v : e) {
      if (id[v] < 0) break;
      f.push_back(id[v]);
    }
    if (static_cast<int>(f.size()) == k_) es.push_back(std::move(f));
  }
  return KGraph(k_, static_cast<int>(sorted.size()), std::move(es));
}

KGraph KGraph::with_edges(const std::vector<Edge>& extra, int n) const {
  std::vector<Edge> es = edges_;
  for (const Edge& e : extra) {
    Edge s = make_edge(e);
    if (!has_edge(s)) es.push_back(std::move(s));
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return KGraph(k_, std::max(n, n_), std::move(es));
}

KGraph KGraph::relabel(const std::vector<Vertex>& perm, int n) const {
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (const Edge& e : edges_) {
    Edge f;
    for (Vertex v : e) f.push_back(perm[v]);
    es.push_back(make_edge(std::move(f)));
  }
  return KGraph(k_, n, std::move(es));
}

KGraph disjoint_union(const KGraph& a, const KGraph& b) {
  if (a.k() != b.k()) throw std::invalid_argument("uniformity mismatch");
  std::vector<Edge> es = a.edges();
  for (Edge e : b.edges()) {
    for (Vertex& v : e) v += a.n();
    es.push_back(std::move(e));
  }
  return KGraph(a.k(), a.n() + b.n(), std::move(es));
}

// ---------------------------------------------------------------- .khg

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool to_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return false;
  try {
    out = std::stoll(s);
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

KGraph parse_khg(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  long long k = 0, n = 0, m = 0;
  std::vector<Edge> edges;
  std::vector<int> edge_line;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::vector<std::string> tk = tokens(line);
    if (!have_header) {
      if (tk.size() != 3 || !to_int(tk[0], k) || !to_int(tk[1], n) || !to_int(tk[2], m) || k < 1 || n < 0 || m < 0)
        throw ParseError(ParseErrorKind::MalformedHeader, lineno, "malformed header, expected \"k n m\"");
      have_header = true;
      continue;
    }
    if (static_cast<long long>(tk.size()) != k)
      throw ParseError(ParseErrorKind::EdgeArity, lineno,
                       "edge has " + std::to_string(tk.size()) + " vertices, expected " + std::to_string(k));
    Edge e;
    for (const std::string& t : tk) {
      long long v = 0;
      if (!to_int(t, v)) throw ParseError(ParseErrorKind::MalformedEdge, lineno, "non-integer vertex '" + t + "'");
      if (v < 0 || v >= n)
        throw ParseError(ParseErrorKind::VertexOutOfRange, lineno, "vertex " + t + " out of range [0," + std::to_string(n) + ")");
      e.push_back(static_cast<Vertex>(v));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw ParseError(ParseErrorKind::RepeatedVertex, lineno, "edge repeats a vertex");
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i] == e)
        throw ParseError(ParseErrorKind::DuplicateEdge, lineno,
                         "duplicate edge (first listed on line " + std::to_string(edge_line[i]) + ")");
    edges.push_back(std::move(e));
    edge_line.push_back(lineno);
  }
  if (!have_header) throw ParseError(ParseErrorKind::MalformedHeader, lineno, "missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(ParseErrorKind::EdgeCount, lineno,
                     "header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return KGraph(static_cast<int>(k), static_cast<int>(n), std::move(edges));
}

std::string serialise_khg(const KGraph& g, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream cin(comment);
    std::string line;
    while (std::getline(cin, line)) out << (line.rfind('#', 0) == 0 ? "" : "#") << line << '\n';
  }
  out << g.k() << ' ' << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
  return out.str();
}

KGraph read_khg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_khg(ss.str());
}

void write_khg_file(const std::string& path, const KGraph& g, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialise_khg(g, comment);
}

// ---------------------------------------------------------------- generators

namespace gen {

KGraph empty(int n, int k) {
  if (n < 0 || k < 1) throw GenerateError("empty: invalid parameters");
  return KGraph(k, n, {});
}

KGraph complete(int a, int k) {
  if (a < 0 || k < 1) throw GenerateError("complete: invalid parameters");
  std::vector<Edge> es;
  if (k <= a) {
    std::vector<char> pick(a, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    do {
      Edge e;
      for (int i = 0; i < a; ++i)
        if (pick[i]) e.push_back(i);
      es.push_back(std::move(e));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return KGraph(k, a, std::move(es));
}

KGraph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw GenerateError("complete_bipartite: parts must be non-empty");
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.push_back({i, a + j});
  return KGraph(2, a + b, std::move(es));
}

KGraph cycle(int l) {
  if (l < 3) throw GenerateError("cycle: length must be at least 3");
  std::vector<Edge> es;
  for (int i = 0; i < l; ++i) es.push_back(make_edge({i, (i + 1) % l}));
  return KGraph(2, l, std::move(es));
}

KGraph path(int l) {
  if (l < 0) throw GenerateError("path: negative length");
  std::vector<Edge> es;
  for (int i = 0; i < l; ++i) es.push_back({i, i + 1});
  return KGraph(2, l + 1, std::move(es));
}

KGraph triforce() {
  return KGraph(2, 6, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}, {0, 5}, {2, 5}});
}

KGraph plusk(const KGraph& base, int k) {
  if (base.k() != 2) throw GenerateError("plusk: base must be a 2-graph");
  if (k < 2) throw GenerateError("plusk: k must be at least 2");
  std::vector<Edge> es;
  for (Edge e : base.edges()) {
    for (int j = 0; j < k - 2; ++j) e.push_back(base.n() + j);
    es.push_back(std::move(e));
  }
  return KGraph(k, base.n() + k - 2, std::move(es));
}

KGraph cyclic_concat(const KGraph& a, int l) {
  if (l < 2) throw GenerateError("cyclic_concat: need at least 2 copies");
  if (a.n() < 2) throw GenerateError("cyclic_concat: pattern needs two distinct port vertices");
  const int step = a.n() - 1;
  const int n = l * step;
  std::vector<Edge> es;
  for (int i = 0; i < l; ++i)
    for (const Edge& e : a.edges()) {
      Edge f;
      for (Vertex x : e) f.push_back((i * step + x) % n);
      f = make_edge(std::move(f));
      if (std::adjacent_find(f.begin(), f.end()) != f.end())
        throw GenerateError("cyclic_concat: copies collapse, too few copies");
      es.push_back(std::move(f));
    }
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(es.begin(), es.end()) != es.end())
    throw GenerateError("cyclic_concat: copies share an edge, too few copies");
  return KGraph(a.k(), n, std::move(es));
}

}  // namespace gen

KGraph generate(const std::string& family, const std::vector<int>& p) {
  auto need = [&](std::size_t c) {
    if (p.size() != c) throw GenerateError(family + ": expected " + std::to_string(c) + " parameter(s)");
  };
  if (family == "empty") { need(1); return gen::empty(p[0]); }
  if (family == "complete") {
    if (p.size() == 1) return gen::complete(p[0]);
    need(2);
    return gen::complete(p[0], p[1]);
  }
  if (family == "complete_bipartite") { need(2); return gen::complete_bipartite(p[0], p[1]); }
  if (family == "cycle") { need(1); return gen::cycle(p[0]); }
  if (family == "path") { need(1); return gen::path(p[0]); }
  if (family == "triforce") { need(0); return gen::triforce(); }
  if (family == "plusk_complete") { need(2); return gen::plusk(gen::complete(p[0]), p[1]); }
  if (family == "cyclic_concat_complete") { need(2); return gen::cyclic_concat(gen::complete(p[0]), p[1]); }
  throw GenerateError("unknown family '" + family + "'");
}

KGraph graph_from_name(const std::string& raw) {
  static const std::regex plus_re(R"((.+)\^\+(\d+))");
  static const std::regex plus_alias(R"(K(\d+)plus(\d+))");
  static const std::regex concat_re(R"(C(\d+)\^(.+))");
  static const std::regex kuni_re(R"(K(\d+)\^\((\d+)\))");
  static const std::regex bip_re(R"(K(\d+)_(\d+))");
  static const std::regex simple_re(R"(([KCPE])(\d+))");
  std::smatch mt;
  const std::string name = raw;
  if (name == "triforce") return gen::triforce();
  if (std::regex_match(name, mt, plus_alias))
    return gen::plusk(gen::complete(std::stoi(mt[1])), std::stoi(mt[2]));
  if (std::regex_match(name, mt, kuni_re)) return gen::complete(std::stoi(mt[1]), std::stoi(mt[2]));
  if (std::regex_match(name, mt, plus_re)) return gen::plusk(graph_from_name(mt[1]), std::stoi(mt[2]));
  if (std::regex_match(name, mt, concat_re)) return gen::cyclic_concat(graph_from_name(mt[2]), std::stoi(mt[1]));
  if (std::regex_match(name, mt, bip_re)) return gen::complete_bipartite(std::stoi(mt[1]), std::stoi(mt[2]));
  if (std::regex_match(name, mt, simple_re)) {
    int a = std::stoi(mt[2]);
    switch (mt[1].str()[0]) {
      case 'K': return gen::complete(a);
      case 'C': return gen::cycle(a);
      case 'P': return gen::path(a);
      case 'E': return gen::empty(a);
    }
  }
  throw GenerateError("unknown graph name '" + raw + "'");
}

// ---------------------------------------------------------------- connectivity

Connectivity connectivity(const KGraph& g) {
  std::vector<int> parent(g.n());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Edge& e : g.edges())
    for (std::size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
  std::vector<std::vector<Vertex>> byroot(g.n());
  for (Vertex v = 0; v < g.n(); ++v) byroot[find(v)].push_back(v);
  Connectivity c;
  for (auto& comp : byroot)
    if (!comp.empty()) c.components.push_back(std::move(comp));
  std::sort(c.components.begin(), c.components.end());
  c.connected = c.components.size() <= 1;
  return c;
}

}  // namespace hrw
