#include "hrw/ramsey.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hrw {

std::string Colouring::serialise() const {
  std::ostringstream o;
  for (std::size_t e = 0; e < colour.size(); ++e) o << e << ' ' << colour[e] << '\n';
  return o.str();
}

Colouring Colouring::parse(const std::string& text) {
  std::istringstream in(text);
  Colouring c;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long e = -1, col = -1;
    if (!(ls >> e >> col) || e < 0 || col < 0) throw std::invalid_argument("colouring: malformed line '" + line + "'");
    if (e != static_cast<long>(c.colour.size())) throw std::invalid_argument("colouring: edge indices must be 0,1,2,...");
    c.colour.push_back(static_cast<int>(col));
  }
  return c;
}

namespace {

// Clause "not every edge of this copy has colour c".
struct Clause {
  int colour;
  std::vector<int> edges;
  int w[2];  // positions in edges of the two watched edges
};

class Solver {
 public:
  Solver(int m, int r) : m_(m), r_(r), col_(m, -1), dom_(m, (1u << r) - 1), watch_(m * r) {}

  void add(int colour, std::vector<int> edges) {
    std::sort(edges.begin(), edges.end());
    if (edges.size() == 1) {
      unary_.push_back({edges[0], colour});
      return;
    }
    Clause c{colour, std::move(edges), {0, 1}};
    int id = static_cast<int>(cl_.size());
    watch_[c.edges[0] * r_ + colour].push_back(id);
    watch_[c.edges[1] * r_ + colour].push_back(id);
    for (int e : c.edges) ++occ_[e];
    cl_.push_back(std::move(c));
  }

  void reserve_occurrences() { occ_.assign(m_, 0); }

  std::optional<std::vector<int>> solve(SearchStats& st) {
    st.clauses = static_cast<long>(cl_.size() + unary_.size());
    for (auto [e, c] : unary_)
      if (!restrict(e, c)) return std::nullopt;
    if (!propagate(st)) return std::nullopt;
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return occ_[a] > occ_[b]; });
    if (!search(st)) return std::nullopt;
    return col_;
  }

 private:
  struct Undo {
    int edge;
    unsigned dom;
    bool assigned;
  };

  int m_, r_;
  std::vector<int> col_;
  std::vector<unsigned> dom_;
  std::vector<std::vector<int>> watch_;  // (edge, colour) -> clauses watching that edge
  std::vector<Clause> cl_;
  std::vector<std::pair<int, int>> unary_;
  std::vector<int> occ_;
  std::vector<int> order_;
  std::vector<Undo> trail_;
  std::vector<int> queue_;

  // Remove colour c from edge e's domain; assigns when one colour remains.
  bool restrict(int e, int c) {
    if (!(dom_[e] >> c & 1u)) return true;
    if (col_[e] == c) return false;
    trail_.push_back({e, dom_[e], false});
    dom_[e] &= ~(1u << c);
    if (dom_[e] == 0) return false;
    if (col_[e] < 0 && (dom_[e] & (dom_[e] - 1)) == 0) assign(e, std::countr_zero(dom_[e]));
    return true;
  }

  void assign(int e, int c) {
    trail_.push_back({e, dom_[e], true});
    col_[e] = c;
    dom_[e] = 1u << c;
    queue_.push_back(e);
  }

  bool propagate(SearchStats& st) {
    while (!queue_.empty()) {
      int e = queue_.back();
      queue_.pop_back();
      const int c = col_[e];
      auto& wl = watch_[e * r_ + c];
      for (std::size_t i = 0; i < wl.size();) {
        Clause& cl = cl_[wl[i]];
        int me = cl.edges[cl.w[0]] == e ? 0 : 1;
        int other = cl.edges[cl.w[1 - me]];
        // Look for a replacement watch whose literal is not false.
        int found = -1;
        for (int p = 0; p < static_cast<int>(cl.edges.size()); ++p) {
          if (p == cl.w[0] || p == cl.w[1]) continue;
          if (col_[cl.edges[p]] != c) {
            found = p;
            break;
          }
        }
        if (found >= 0) {
          cl.w[me] = found;
          watch_[cl.edges[found] * r_ + c].push_back(wl[i]);
          wl[i] = wl.back();
          wl.pop_back();
          continue;
        }
        ++i;
        if (col_[other] == c) {
          ++st.conflicts;
          queue_.clear();
          return false;
        }
        if (col_[other] < 0) {
          ++st.propagations;
          if (!restrict(other, c)) {
            ++st.conflicts;
            queue_.clear();
            return false;
          }
        }
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      Undo u = trail_.back();
      trail_.pop_back();
      dom_[u.edge] = u.dom;
      if (u.assigned) col_[u.edge] = -1;
    }
  }

  bool search(SearchStats& st) {
    int e = -1;
    for (int x : order_)
      if (col_[x] < 0) {
        e = x;
        break;
      }
    if (e < 0) return true;
    ++st.nodes;
    for (int c = 0; c < r_; ++c) {
      if (!(dom_[e] >> c & 1u)) continue;
      std::size_t mark = trail_.size();
      assign(e, c);
      if (propagate(st) && search(st)) return true;
      undo_to(mark);
    }
    return false;
  }
};

}  // namespace

bool is_valid_colouring(const KGraph& g, const std::vector<KGraph>& patterns, const Colouring& c) {
  if (static_cast<int>(c.colour.size()) != g.m()) return false;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const KGraph& h = patterns[i];
    bool mono = false;
    for_each_embedding(h, g, [&](const std::vector<Vertex>& map) {
      for (const Edge& pe : h.edges()) {
        Edge img;
        for (Vertex v : pe) img.push_back(map[v]);
        std::sort(img.begin(), img.end());
        if (c.colour[g.edge_index(img)] != static_cast<int>(i)) return true;
      }
      mono = true;
      return false;
    });
    if (mono) return false;
  }
  return true;
}

ArrowResult arrow(const KGraph& g, const std::vector<KGraph>& patterns) {
  if (patterns.empty()) throw std::invalid_argument("arrow: no patterns");
  if (patterns.size() > 16) throw std::invalid_argument("arrow: at most 16 colours");
  for (const KGraph& h : patterns) {
    if (h.k() != g.k()) throw std::invalid_argument("arrow: uniformity mismatch");
    if (h.m() == 0) throw std::invalid_argument("arrow: pattern without edges");
  }
  const int r = static_cast<int>(patterns.size());
  Solver s(g.m(), r);
  s.reserve_occurrences();
  for (int i = 0; i < r; ++i)
    for (const Copy& c : copies_of(patterns[i], g)) s.add(i, c.edges);
  ArrowResult res;
  auto sol = s.solve(res.stats);
  if (!sol) {
    res.arrows = true;
    return res;
  }
  Colouring col{*sol};
  if (!is_valid_colouring(g, patterns, col))
    throw std::logic_error("arrow: solver produced a colouring that fails verification");
  res.witness = std::move(col);
  return res;
}

std::optional<Colouring> valid_colouring(const KGraph& g, const KGraph& h1, const KGraph& h2) {
  return arrow(g, {h1, h2}).witness;
}

std::optional<KGraph> ramsey_minimal(const KGraph& g, const KGraph& h1, const KGraph& h2) {
  if (!arrow(g, {h1, h2}).arrows) return std::nullopt;
  CanonicalForm cf = canonical_form(g);
  std::vector<int> order(g.m());
  std::iota(order.begin(), order.end(), 0);
  auto canon = [&](int e) {
    Edge img;
    for (Vertex v : g.edge(e)) img.push_back(cf.labelling[v]);
    std::sort(img.begin(), img.end());
    return img;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return canon(a) < canon(b); });
  std::vector<char> keep(g.m(), 1);
  auto current = [&](int skip) {
    std::vector<int> ids;
    for (int e = 0; e < g.m(); ++e)
      if (keep[e] && e != skip) ids.push_back(e);
    return g.edge_subgraph(ids, false);
  };
  for (int e : order)
    if (arrow(current(e), {h1, h2}).arrows) keep[e] = 0;
  std::vector<int> ids;
  for (int e = 0; e < g.m(); ++e)
    if (keep[e]) ids.push_back(e);
  return g.edge_subgraph(ids, true);
}

int z_param(const KGraph& g) {
  if (g.k() != 2) throw std::invalid_argument("z_param: defined for 2-graphs only");
  if (g.m() == 0) return 0;
  const int d = g.min_degree();
  auto independent = [&](int t) {
    for (const Edge& e : g.edges())
      if (g.degree(e[0]) <= d - 1 + t && g.degree(e[1]) <= d - 1 + t) return false;
    return true;
  };
  int t = 0;
  while (independent(t + 1)) ++t;
  return t;
}

}  // namespace hrw
