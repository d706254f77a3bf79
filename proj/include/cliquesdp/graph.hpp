#pragma once

#include <set>
#include <utility>
#include <vector>

namespace cliquesdp {

// Undirected graph on vertices 0..n-1; edges stored once in (min,max) order.
struct SparsityGraph {
  int n = 0;
  std::set<std::pair<int, int>> edges;

  SparsityGraph() = default;
  explicit SparsityGraph(int n_) : n(n_) {}

  void add_edge(int i, int j);
  bool has_edge(int i, int j) const;
  std::vector<std::vector<int>> adjacency() const;
};

struct ChordalityResult {
  bool chordal = false;
  // One chordless cycle of length >= 4 when not chordal, rotated so the
  // smallest vertex comes first and its smaller neighbor second.
  std::vector<int> cycle;
};

// Maximum-cardinality search: chordal iff the reverse visit order is a
// perfect elimination ordering.
ChordalityResult is_chordal(const SparsityGraph& g);

struct CliqueDecomposition {
  int n = 0;
  SparsityGraph extension;                      // G(N, F), F >= E
  std::vector<std::pair<int, int>> fill_edges;  // F \ E, sorted
  std::vector<int> peo;                         // elimination order for F
  // Each clique lists its vertices in local position order, i.e.
  // sigma_s(cliques[s][k]) = k. Before build_sigma the order is ascending.
  std::vector<std::vector<int>> cliques;
  std::vector<std::pair<int, int>> tree_edges;  // (s,t) with s < t, sorted
  bool tree_connected = true;

  int clique_count() const { return static_cast<int>(cliques.size()); }
  // Local position of vertex v in clique s; -1 when absent.
  int sigma(int s, int v) const;
  // Sorted original vertices of C_s intersect C_t for tree edge e.
  std::vector<int> separator(int edge_index) const;
  std::vector<int> separator_of(int s, int t) const;
};

// Minimum-degree elimination with fill tracking; ties break to the lowest
// vertex index. Populates extension, fill_edges and peo.
CliqueDecomposition chordal_extend(const SparsityGraph& g);

// Maximal cliques of the chordal extension, from the PEO scan; each clique
// sorted ascending, listed in order of its generating PEO vertex.
std::vector<std::vector<int>> maximal_cliques(const CliqueDecomposition& d);

// Maximum-overlap-weight spanning tree (Prim) over the cliques; ties break to
// the lexicographically smaller index pair. Returns a forest and sets
// *connected = false when the overlap graph is disconnected.
std::vector<std::pair<int, int>> clique_tree(const std::vector<std::vector<int>>& cliques,
                                             bool* connected = nullptr);

// Reorders every clique so that vertices shared with any tree neighbor come
// first (ascending), then the rest ascending. The prefix-agreement property
// sigma_s(i) == sigma_t(i) <= |C_st| then holds per edge whenever a single
// per-clique order can achieve it; consumers that need per-edge alignment use
// the sigma positions of the sorted separator directly.
void build_sigma(CliqueDecomposition& d);

// chordal_extend + maximal_cliques + clique_tree + build_sigma.
CliqueDecomposition decompose(const SparsityGraph& g);

}  // namespace cliquesdp
