#pragma once

#include <string>
#include <vector>

#include "cliquesdp/graph.hpp"
#include "cliquesdp/linalg.hpp"
#include "cliquesdp/model.hpp"

namespace cliquesdp {

// One overlap equality E_s . X_s = E_t . X_t for tree edge (s,t) and original
// index pair (i,j), i <= j.
struct OverlapConstraint {
  int s = 0, t = 0;  // clique indices, s < t
  int i = 0, j = 0;  // original vertex indices, i <= j (0-based)
  SymMatrix Es, Et;
};

struct ConvertedSdp {
  CliqueDecomposition decomp;
  std::vector<int> block_dims;
  // Asp[s][p] for p = 0..m; each original nonzero lands in exactly one clique,
  // the smallest-index clique containing both endpoints.
  std::vector<std::vector<SymMatrix>> Asp;
  std::vector<OverlapConstraint> overlaps;  // (tree-edge order, then i, then j)
  std::vector<double> b;
  int m = 0;
  long nbar = 0;  // sum over cliques of |C_s|(|C_s|+1)/2

  // Multi-block sparse SDPA: one block per clique, overlap equalities appended
  // as extra constraint rows with rhs 0.
  std::string emit_sdpa() const;
};

// Per-clique primal blocks, optionally with dual multipliers attached.
struct BlockSolution {
  std::vector<SymMatrix> Xs;
  bool has_duals = false;
  std::vector<double> zeta;   // length m
  std::vector<double> xi;     // one per overlap constraint
  std::vector<SymMatrix> Ss;  // one per clique
};

// Throws CoverageError when some nonzero of some A_p lies in no clique.
ConvertedSdp convert_sdp(const SdpProblem& p, const CliqueDecomposition& d);

// X_s[sigma_s(i)][sigma_s(j)] = X[i][j].
BlockSolution restrict_solution(const SymMatrix& x, const CliqueDecomposition& d);

// Clique-tree completion: root at clique 0, fill breadth-first via
// X_uv = X_uw pinv(X_ww) X_wv at each tree edge (w = separator). Unrelated
// components stay zero. Throws NotCompletable / OverlapMismatch.
SymMatrix psd_complete(const BlockSolution& bs, const CliqueDecomposition& d, double tol = 1e-8);

// LP analogue of the conversion.
struct ConvertedLp {
  std::vector<std::vector<int>> sets;  // variables of each piece, position order
  std::vector<std::pair<int, int>> tree_edges;
  int m = 0;
  bool bound_once = false;
  // asp[s][p] for p = 0..m over local positions; assignment rule: coefficient
  // of variable i goes to the smallest-index set containing i.
  std::vector<std::vector<std::vector<double>>> asp;
  struct Link {
    int s = 0, t = 0, i = 0;  // x_s(i) = x_t(i), i original index
  };
  std::vector<Link> links;
  // (set, local position) pairs carrying an x >= 0 bound row.
  std::vector<std::pair<int, int>> bounds;
  std::vector<double> b;

  int total_vars() const;
  int var_offset(int s) const;
};

ConvertedLp convert_lp(const LpProblem& p, const std::vector<std::vector<int>>& sets,
                       const std::vector<std::pair<int, int>>& tree_edges, bool bound_once);

// Rows of the active-constraint matrix at xs: all equality rows, all linking
// rows, and every emitted bound row whose variable sits at 0 within tol.
// Columns are the stacked block variables.
std::vector<std::vector<double>> lp_active_matrix(const ConvertedLp& c,
                                                  const std::vector<std::vector<double>>& xs,
                                                  double tol = 1e-8);

}  // namespace cliquesdp
