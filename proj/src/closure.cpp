#include "hrw/closure.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace hrw {

namespace {

class Dinic {
 public:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  explicit Dinic(int n) : adj_(n), level_(n), it_(n) {}

  void add(int u, int v, std::int64_t cap) {
    adj_[u].push_back({v, static_cast<int>(adj_[v].size()), cap});
    adj_[v].push_back({u, static_cast<int>(adj_[u].size()) - 1, 0});
  }

  std::int64_t maxflow(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, kInf)) flow += f;
    }
    return flow;
  }

  // Vertices reachable from s in the residual network.
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const Arc& a : adj_[u])
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to, rev;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Arc& a : adj_[u])
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          q.push(a.to);
        }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int u, int t, std::int64_t f) {
    if (u == t) return f;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      Arc& a = adj_[u][i];
      if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
      std::int64_t d = dfs(a.to, t, std::min(f, a.cap));
      if (d > 0) {
        a.cap -= d;
        adj_[a.to][a.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

ClosureResult max_closure(const KGraph& g, std::int64_t gain, std::int64_t cost, const std::vector<Vertex>& forced) {
  const int m = g.m(), n = g.n();
  const int s = 0, t = 1, e0 = 2, v0 = 2 + m;
  Dinic net(2 + m + n);
  for (int i = 0; i < m; ++i) {
    if (gain > 0) net.add(s, e0 + i, gain);
    for (Vertex v : g.edge(i)) net.add(e0 + i, v0 + v, Dinic::kInf);
  }
  for (Vertex v = 0; v < n; ++v)
    if (cost > 0) net.add(v0 + v, t, cost);
  for (Vertex v : forced) net.add(s, v0 + v, Dinic::kInf);
  net.maxflow(s, t);
  std::vector<char> side = net.source_side(s);
  ClosureResult r;
  std::vector<char> in(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (side[v0 + v]) {
      in[v] = 1;
      r.vertices.push_back(v);
    }
  for (const Edge& e : g.edges())
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v]; })) ++r.edges_inside;
  r.value = gain * r.edges_inside - cost * static_cast<std::int64_t>(r.vertices.size());
  return r;
}

}  // namespace hrw
