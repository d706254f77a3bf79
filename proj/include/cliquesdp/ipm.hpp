#pragma once

#include <string>
#include <vector>

#include "cliquesdp/convert.hpp"
#include "cliquesdp/linalg.hpp"
#include "cliquesdp/model.hpp"

namespace cliquesdp {

// min sum_s C_s . X_s  s.t.  sum_s A_{row,s} . X_s = rhs_row,  X_s psd.
// The original problem is one block; the conversion problem is one block per
// clique with the overlap equalities appended as extra rows.
struct ConstraintRow {
  std::vector<std::pair<int, SymMatrix>> terms;  // (block, coefficient matrix)
  double rhs = 0.0;
};

struct BlockSdp {
  std::vector<int> dims;
  std::vector<SymMatrix> objective;
  std::vector<ConstraintRow> rows;

  static BlockSdp from_original(const SdpProblem& p);
  static BlockSdp from_converted(const ConvertedSdp& c);

  int total_dim() const;
};

struct IpmConfig {
  double tol_gap = 1e-8;
  double tol_feas = 1e-8;
  int max_iter = 100;
  double tau = 0.98;        // fraction of the step to the cone boundary
  double init_scale = 1.0;  // multiplies the documented starting radius
};

struct IterRow {
  int iter = 0;
  double mu = 0.0;
  double gap = 0.0;
  double pinfeas = 0.0;
  double dinfeas = 0.0;
  double schur_cond = 0.0;
  double step_p = 0.0;
  double step_d = 0.0;
};

struct IterateTrace {
  std::vector<IterRow> rows;
  // Header: iter,mu,gap,pinfeas,dinfeas,schur_cond,step_p,step_d
  std::string to_csv() const;
};

enum class IpmStatus { Converged, MaxIterations, LineSearchFailure, SingularSchur };

std::string to_string(IpmStatus s);

struct IpmResult {
  IpmStatus status = IpmStatus::MaxIterations;
  std::vector<SymMatrix> X, S;
  std::vector<double> y;  // one multiplier per constraint row
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double mu = 0.0;
  int iterations = 0;
  IterateTrace trace;
};

// Primal-dual path following with the HKM direction, Mehrotra-style adaptive
// centering and fractional-boundary steps. Start point X = S = rho I with
// rho = max(1, |b|_inf, max_p |A_p|_F), y = 0.
IpmResult ipm_solve(const BlockSdp& p, const IpmConfig& cfg = {});

// Schur complement M_pq = sum_s A_{p,s} . (X_s A_{q,s} S_s^{-1}), symmetrized.
SymMatrix schur_matrix(const BlockSdp& p, const std::vector<SymMatrix>& x,
                       const std::vector<SymMatrix>& s);

// Least-squares slope of log(cond) against log(1/mu) over the last `window`
// trace rows with finite condition numbers.
double condition_slope(const IterateTrace& trace, int window = 4);

// Attach the solver output to the conversion structure (zeta, xi, S blocks).
BlockSolution to_block_solution(const ConvertedSdp& c, const IpmResult& r);

}  // namespace cliquesdp
