#include "cliquesdp/jsonio.hpp"

namespace cliquesdp {

namespace {

json pairs_1based(const std::vector<std::pair<int, int>>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back({a + 1, b + 1});
  return out;
}

json ints_1based(const std::vector<int>& v) {
  json out = json::array();
  for (int a : v) out.push_back(a + 1);
  return out;
}

}  // namespace

json to_json(const SymMatrix& m) {
  json out = json::array();
  for (const auto& row : m.rows()) out.push_back(row);
  return out;
}

SymMatrix sym_from_json(const json& j) {
  const int n = static_cast<int>(j.size());
  std::vector<double> data;
  data.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : j)
    for (const auto& v : row) data.push_back(v.get<double>());
  return SymMatrix(n, std::move(data));
}

json to_json(const SparsityGraph& g) {
  std::vector<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
  return json{{"n", g.n}, {"edges", pairs_1based(edges)}};
}

json to_json(const CliqueDecomposition& d) {
  json cliques = json::array();
  for (const auto& c : d.cliques) cliques.push_back(ints_1based(c));
  json seps = json::array();
  for (size_t e = 0; e < d.tree_edges.size(); ++e) seps.push_back(ints_1based(d.separator(static_cast<int>(e))));
  return json{{"n", d.n},
              {"fill", static_cast<int>(d.fill_edges.size())},
              {"fill_edges", pairs_1based(d.fill_edges)},
              {"peo", ints_1based(d.peo)},
              {"cliques", cliques},
              {"tree_edges", pairs_1based(d.tree_edges)},
              {"separators", seps},
              {"tree_connected", d.tree_connected}};
}

json to_json(const DegeneracyReport& r) {
  return json{{"nondegenerate", r.nondegenerate},
              {"deficiency", r.deficiency},
              {"witness", r.witness.empty() ? json() : json(r.witness)},
              {"smallest_singular_value", r.smallest_singular_value}};
}

json to_json(const Certificate& c) {
  json beta = json::array();
  for (size_t k = 0; k < c.beta_hat.size(); ++k) beta.push_back(c.beta_hat[k]);
  return json{{"edge", {c.s + 1, c.t + 1}},
              {"separator", ints_1based(c.separator)},
              {"u", c.u},
              {"v_s", c.vs},
              {"v_t", c.vt},
              {"beta_hat", beta}};
}

json to_json(const KktReport& r) {
  return json{{"stationarity", r.stationarity},
              {"feasibility", r.feasibility},
              {"overlap", r.overlap},
              {"complementarity", r.complementarity},
              {"min_eig_X", r.min_eig_x},
              {"min_eig_S", r.min_eig_s},
              {"tol", r.tol},
              {"pass", r.pass}};
}

json to_json(const MultiplierFamily& f) {
  json ss = json::array();
  for (const auto& s : f.base.Ss) ss.push_back(to_json(s));
  return json{{"certificate", to_json(f.cert)},
              {"gamma", f.gamma},
              {"minus_block", f.minus_block + 1},
              {"delta_range", {0.0, f.gamma}},
              {"zeta", f.base.zeta},
              {"xi", f.base.xi},
              {"S_blocks", ss}};
}

json solve_summary(const IpmResult& r) {
  return json{{"status", to_string(r.status)},
              {"objective", r.primal_obj},
              {"dual_objective", r.dual_obj},
              {"mu", r.mu},
              {"iterations", r.iterations}};
}

}  // namespace cliquesdp
