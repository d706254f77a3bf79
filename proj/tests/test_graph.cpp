#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "cliquesdp/graph.hpp"
#include "cliquesdp/model.hpp"
#include "oracles.hpp"

using namespace cliquesdp;

namespace {

SparsityGraph four_cycle() {
  SparsityGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  return g;
}

}  // namespace

TEST_CASE("the demo 4-cycle is not chordal and yields the expected witness") {
  const ChordalityResult r = is_chordal(four_cycle());
  CHECK_FALSE(r.chordal);
  // cycle (1,2,4,3) in 1-based labels
  CHECK(r.cycle == std::vector<int>{0, 1, 3, 2});
}

TEST_CASE("adding the fill edge makes it chordal") {
  SparsityGraph g = four_cycle();
  g.add_edge(1, 2);
  CHECK(is_chordal(g).chordal);
}

TEST_CASE("complete graphs are chordal") {
  SparsityGraph g(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) g.add_edge(i, j);
  CHECK(is_chordal(g).chordal);
}

TEST_CASE("chordal_extend on the 4-cycle adds exactly the (2,3) fill edge") {
  const CliqueDecomposition d = chordal_extend(four_cycle());
  REQUIRE(d.fill_edges.size() == 1);
  CHECK(d.fill_edges[0] == std::pair<int, int>(1, 2));
  CHECK(is_chordal(d.extension).chordal);
  CHECK(d.peo == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("chordal_extend leaves chordal graphs untouched") {
  SparsityGraph g = four_cycle();
  g.add_edge(1, 2);
  const CliqueDecomposition d = chordal_extend(g);
  CHECK(d.fill_edges.empty());
  CHECK(d.extension.edges == g.edges);
}

TEST_CASE("chordal_extend output is chordal and contains the input") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const SparsityGraph g = oracles::random_graph(rng, 10, 0.3);
    const CliqueDecomposition d = chordal_extend(g);
    CHECK(is_chordal(d.extension).chordal);
    for (const auto& e : g.edges) CHECK(d.extension.edges.count(e) == 1);
    CHECK(oracles::valid_peo(d.extension, d.peo));
  }
}

TEST_CASE("maximal cliques of the extended 4-cycle match the demo decomposition") {
  CliqueDecomposition d = chordal_extend(four_cycle());
  d.cliques = maximal_cliques(d);
  REQUIRE(d.cliques.size() == 2);
  CHECK(d.cliques[0] == std::vector<int>{0, 1, 2});
  CHECK(d.cliques[1] == std::vector<int>{1, 2, 3});
}

TEST_CASE("K4 is a single clique") {
  SparsityGraph g(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) g.add_edge(i, j);
  CliqueDecomposition d = chordal_extend(g);
  d.cliques = maximal_cliques(d);
  REQUIRE(d.cliques.size() == 1);
  CHECK(d.cliques[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("maximal cliques match subset enumeration on random chordal graphs") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const SparsityGraph g = oracles::random_graph(rng, 9, 0.35);
    CliqueDecomposition d = chordal_extend(g);
    d.cliques = maximal_cliques(d);
    std::vector<std::vector<int>> got = d.cliques;
    std::sort(got.begin(), got.end());
    CHECK(got == oracles::brute_force_maximal_cliques(d.extension));
  }
}

TEST_CASE("clique tree of the demo decomposition is the single (1,2) edge") {
  CliqueDecomposition d = chordal_extend(four_cycle());
  d.cliques = maximal_cliques(d);
  bool connected = false;
  d.tree_edges = clique_tree(d.cliques, &connected);
  CHECK(connected);
  REQUIRE(d.tree_edges.size() == 1);
  CHECK(d.tree_edges[0] == std::pair<int, int>(0, 1));
  CHECK(d.separator(0) == std::vector<int>{1, 2});
}

TEST_CASE("single clique has no tree edges") {
  bool connected = false;
  CHECK(clique_tree({{0, 1, 2}}, &connected).empty());
  CHECK(connected);
}

TEST_CASE("a path of three cliques gives two edges with RIP") {
  CliqueDecomposition d;
  d.n = 4;
  d.cliques = {{0, 1}, {1, 2}, {2, 3}};
  d.tree_edges = clique_tree(d.cliques, &d.tree_connected);
  CHECK(d.tree_connected);
  REQUIRE(d.tree_edges.size() == 2);
  CHECK(oracles::running_intersection(d));
}

TEST_CASE("build_sigma puts shared vertices first, matching the demo ordering") {
  const CliqueDecomposition d = decompose(four_cycle());
  REQUIRE(d.cliques.size() == 2);
  CHECK(d.cliques[0] == std::vector<int>{1, 2, 0});  // {2,3,1} in 1-based labels
  CHECK(d.cliques[1] == std::vector<int>{1, 2, 3});  // {2,3,4}
  CHECK(d.sigma(0, 1) == 0);
  CHECK(d.sigma(0, 2) == 1);
  CHECK(d.sigma(0, 0) == 2);
  CHECK(d.sigma(1, 1) == 0);
  CHECK(d.sigma(1, 2) == 1);
  CHECK(d.sigma(1, 3) == 2);
  // prefix agreement on the only tree edge
  for (int v : d.separator(0)) CHECK(d.sigma(0, v) == d.sigma(1, v));
}

TEST_CASE("build_sigma on a single clique sorts ascending") {
  SparsityGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  const CliqueDecomposition d = decompose(g);
  REQUIRE(d.cliques.size() == 1);
  CHECK(d.cliques[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("per-edge alignment is consistent on a chain of cliques") {
  SparsityGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  const CliqueDecomposition d = decompose(g);
  // Every separator vertex has a valid local position in both endpoint
  // cliques; that is all the per-edge alignment the certificates rely on.
  for (size_t e = 0; e < d.tree_edges.size(); ++e) {
    const auto& [s, t] = d.tree_edges[e];
    for (int v : d.separator(static_cast<int>(e))) {
      CHECK(d.sigma(s, v) >= 0);
      CHECK(d.sigma(t, v) >= 0);
    }
  }
  CHECK(oracles::running_intersection(d));
}

TEST_CASE("decomposition invariants over random graphs") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    const SparsityGraph g = oracles::random_graph(rng, n, 0.3);
    const CliqueDecomposition d = decompose(g);

    // cliques cover all vertices
    std::vector<bool> seen(n, false);
    for (const auto& c : d.cliques)
      for (int v : c) seen[v] = true;
    for (int v = 0; v < n; ++v) CHECK(seen[v]);

    // every extension edge lies inside some clique
    for (const auto& [i, j] : d.extension.edges) {
      bool inside = false;
      for (int s = 0; s < d.clique_count() && !inside; ++s)
        inside = d.sigma(s, i) >= 0 && d.sigma(s, j) >= 0;
      CHECK(inside);
    }

    // no clique contains another
    for (int s = 0; s < d.clique_count(); ++s)
      for (int t = 0; t < d.clique_count(); ++t) {
        if (s == t) continue;
        std::vector<int> cs = d.cliques[s], ct = d.cliques[t];
        std::sort(cs.begin(), cs.end());
        std::sort(ct.begin(), ct.end());
        CHECK_FALSE(std::includes(ct.begin(), ct.end(), cs.begin(), cs.end()));
      }

    CHECK(oracles::running_intersection(d));
    CHECK(oracles::valid_peo(d.extension, d.peo));
  }
}

TEST_CASE("isolated vertices become their own cliques") {
  SparsityGraph g(4);
  g.add_edge(0, 1);
  const CliqueDecomposition d = decompose(g);
  CHECK(d.clique_count() == 3);
  CHECK_FALSE(d.tree_connected);
  CHECK(oracles::running_intersection(d));
}
