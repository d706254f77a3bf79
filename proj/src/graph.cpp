#include "cliquesdp/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "cliquesdp/errors.hpp"

namespace cliquesdp {

void SparsityGraph::add_edge(int i, int j) {
  if (i == j) return;
  edges.insert({std::min(i, j), std::max(i, j)});
}

bool SparsityGraph::has_edge(int i, int j) const {
  return edges.count({std::min(i, j), std::max(i, j)}) > 0;
}

std::vector<std::vector<int>> SparsityGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

namespace {

// Rotate/orient a cycle so the smallest vertex leads and its smaller cycle
// neighbor comes second.
std::vector<int> canonical_cycle(std::vector<int> cyc) {
  const size_t k = cyc.size();
  size_t pos = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
  std::rotate(cyc.begin(), cyc.begin() + pos, cyc.end());
  if (cyc[k - 1] < cyc[1]) std::reverse(cyc.begin() + 1, cyc.end());
  return cyc;
}

// Maximum-cardinality search visit order; ties break to the lowest index.
std::vector<int> mcs_order(const SparsityGraph& g) {
  const auto adj = g.adjacency();
  std::vector<int> weight(g.n, 0);
  std::vector<bool> visited(g.n, false);
  std::vector<int> order;
  order.reserve(g.n);
  for (int step = 0; step < g.n; ++step) {
    int best = -1;
    for (int v = 0; v < g.n; ++v)
      if (!visited[v] && (best == -1 || weight[v] > weight[best])) best = v;
    visited[best] = true;
    order.push_back(best);
    for (int u : adj[best])
      if (!visited[u]) ++weight[u];
  }
  return order;
}

// Shortest path from a to b by BFS within the allowed vertex set.
std::vector<int> bfs_path(const std::vector<std::vector<int>>& adj, int a, int b,
                          const std::vector<bool>& allowed) {
  std::vector<int> prev(adj.size(), -1);
  std::deque<int> queue{a};
  std::vector<bool> seen(adj.size(), false);
  seen[a] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == b) break;
    for (int u : adj[v]) {
      if (!allowed[u] || seen[u]) continue;
      seen[u] = true;
      prev[u] = v;
      queue.push_back(u);
    }
  }
  std::vector<int> path;
  for (int v = b; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

ChordalityResult is_chordal(const SparsityGraph& g) {
  const auto adj = g.adjacency();
  const std::vector<int> visit = mcs_order(g);
  std::vector<int> peo(visit.rbegin(), visit.rend());
  std::vector<int> pos(g.n);
  for (int k = 0; k < g.n; ++k) pos[peo[k]] = k;

  for (int k = 0; k < g.n; ++k) {
    const int v = peo[k];
    std::vector<int> later;
    for (int u : adj[v])
      if (pos[u] > k) later.push_back(u);
    for (size_t a = 0; a < later.size(); ++a) {
      for (size_t b = a + 1; b < later.size(); ++b) {
        const int x = later[a];
        const int y = later[b];
        if (g.has_edge(x, y)) continue;
        // v with non-adjacent neighbors x,y: a chordless cycle runs through
        // v,x,...,y over a shortest x-y path avoiding N[v] \ {x,y}.
        std::vector<bool> allowed(g.n, true);
        allowed[v] = false;
        for (int u : adj[v]) allowed[u] = false;
        allowed[x] = true;
        allowed[y] = true;
        std::vector<int> path = bfs_path(adj, x, y, allowed);
        std::vector<int> cyc{v};
        cyc.insert(cyc.end(), path.begin(), path.end());
        return {false, canonical_cycle(cyc)};
      }
    }
  }
  return {true, {}};
}

CliqueDecomposition chordal_extend(const SparsityGraph& g) {
  CliqueDecomposition d;
  d.n = g.n;
  d.extension = g;

  std::vector<std::set<int>> adj(g.n);
  for (const auto& [i, j] : g.edges) {
    adj[i].insert(j);
    adj[j].insert(i);
  }

  std::vector<bool> eliminated(g.n, false);
  for (int step = 0; step < g.n; ++step) {
    int best = -1;
    size_t best_deg = 0;
    for (int v = 0; v < g.n; ++v) {
      if (eliminated[v]) continue;
      if (best == -1 || adj[v].size() < best_deg) {
        best = v;
        best_deg = adj[v].size();
      }
    }
    d.peo.push_back(best);
    eliminated[best] = true;

    std::vector<int> nbrs(adj[best].begin(), adj[best].end());
    for (size_t a = 0; a < nbrs.size(); ++a) {
      for (size_t b = a + 1; b < nbrs.size(); ++b) {
        const int x = nbrs[a];
        const int y = nbrs[b];
        if (adj[x].count(y)) continue;
        adj[x].insert(y);
        adj[y].insert(x);
        d.extension.add_edge(x, y);
        d.fill_edges.push_back({std::min(x, y), std::max(x, y)});
      }
    }
    for (int u : nbrs) adj[u].erase(best);
    adj[best].clear();
  }
  std::sort(d.fill_edges.begin(), d.fill_edges.end());
  return d;
}

std::vector<std::vector<int>> maximal_cliques(const CliqueDecomposition& d) {
  const auto adj = d.extension.adjacency();
  std::vector<int> pos(d.n);
  for (int k = 0; k < d.n; ++k) pos[d.peo[k]] = k;

  std::vector<std::vector<int>> candidates;
  for (int k = 0; k < d.n; ++k) {
    const int v = d.peo[k];
    std::vector<int> c{v};
    for (int u : adj[v])
      if (pos[u] > k) c.push_back(u);
    std::sort(c.begin(), c.end());
    candidates.push_back(std::move(c));
  }

  std::vector<std::vector<int>> cliques;
  for (const auto& c : candidates) {
    bool maximal = true;
    for (const auto& other : candidates) {
      if (&other == &c || other.size() <= c.size()) continue;
      if (std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal && (cliques.empty() || std::find(cliques.begin(), cliques.end(), c) == cliques.end()))
      cliques.push_back(c);
  }
  return cliques;
}

std::vector<std::pair<int, int>> clique_tree(const std::vector<std::vector<int>>& cliques,
                                             bool* connected) {
  const int l = static_cast<int>(cliques.size());
  auto overlap = [&](int s, int t) {
    std::vector<int> out;
    std::set_intersection(cliques[s].begin(), cliques[s].end(), cliques[t].begin(),
                          cliques[t].end(), std::back_inserter(out));
    return static_cast<int>(out.size());
  };

  std::vector<bool> in_tree(l, false);
  std::vector<std::pair<int, int>> edges;
  bool all_connected = true;
  int remaining = l;
  while (remaining > 0) {
    // Root a new component at the smallest unvisited clique.
    int root = -1;
    for (int s = 0; s < l; ++s)
      if (!in_tree[s]) {
        root = s;
        break;
      }
    in_tree[root] = true;
    --remaining;
    if (root != 0) all_connected = false;

    while (true) {
      int best_w = 0, best_s = -1, best_t = -1;
      for (int s = 0; s < l; ++s) {
        if (!in_tree[s]) continue;
        for (int t = 0; t < l; ++t) {
          if (in_tree[t]) continue;
          const int w = overlap(s, t);
          if (w == 0) continue;
          const auto cand = std::minmax(s, t);
          const auto best_pair = std::minmax(best_s, best_t);
          if (w > best_w || (w == best_w && cand < best_pair)) {
            best_w = w;
            best_s = s;
            best_t = t;
          }
        }
      }
      if (best_s == -1) break;
      in_tree[best_t] = true;
      --remaining;
      edges.push_back({std::min(best_s, best_t), std::max(best_s, best_t)});
    }
  }
  std::sort(edges.begin(), edges.end());
  if (connected) *connected = all_connected;
  return edges;
}

int CliqueDecomposition::sigma(int s, int v) const {
  const auto& c = cliques[s];
  for (size_t k = 0; k < c.size(); ++k)
    if (c[k] == v) return static_cast<int>(k);
  return -1;
}

std::vector<int> CliqueDecomposition::separator_of(int s, int t) const {
  std::vector<int> cs = cliques[s];
  std::vector<int> ct = cliques[t];
  std::sort(cs.begin(), cs.end());
  std::sort(ct.begin(), ct.end());
  std::vector<int> out;
  std::set_intersection(cs.begin(), cs.end(), ct.begin(), ct.end(), std::back_inserter(out));
  return out;
}

std::vector<int> CliqueDecomposition::separator(int edge_index) const {
  const auto& [s, t] = tree_edges[edge_index];
  return separator_of(s, t);
}

void build_sigma(CliqueDecomposition& d) {
  const int l = d.clique_count();
  std::vector<std::set<int>> shared(l);
  for (const auto& [s, t] : d.tree_edges) {
    for (int v : d.separator_of(s, t)) {
      shared[s].insert(v);
      shared[t].insert(v);
    }
  }
  for (int s = 0; s < l; ++s) {
    std::vector<int> order(shared[s].begin(), shared[s].end());
    std::vector<int> rest;
    for (int v : d.cliques[s])
      if (!shared[s].count(v)) rest.push_back(v);
    std::sort(rest.begin(), rest.end());
    order.insert(order.end(), rest.begin(), rest.end());
    d.cliques[s] = std::move(order);
  }
}

CliqueDecomposition decompose(const SparsityGraph& g) {
  CliqueDecomposition d = chordal_extend(g);
  d.cliques = maximal_cliques(d);
  d.tree_edges = clique_tree(d.cliques, &d.tree_connected);
  build_sigma(d);
  return d;
}

}  // namespace cliquesdp
