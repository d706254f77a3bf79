#pragma once

#include <vector>

#include "cliquesdp/convert.hpp"
#include "cliquesdp/linalg.hpp"
#include "cliquesdp/model.hpp"

namespace cliquesdp {

// Orthonormal eigenbasis of a psd solution matrix, eigenvalues descending:
// columns 0..r-1 span the range, the rest the kernel.
struct TangentFrame {
  int n = 0;
  int r = 0;
  std::vector<double> q;       // row-major n x n
  std::vector<double> values;  // descending
  double vec(int i, int k) const { return q[static_cast<size_t>(i) * n + k]; }
};

TangentFrame tangent_frame(const SymMatrix& x, double tol = 1e-8);

// Coordinates of the tangent-space component of A at the frame: svec of the
// leading r x r block of Q^T A Q followed by the sqrt(2)-scaled r x (n-r)
// off-diagonal block (column-major). The dropped trailing block is the
// component orthogonal to the tangent space.
std::vector<double> tangent_project(const SymMatrix& a, const TangentFrame& frame);

struct DegeneracyReport {
  bool nondegenerate = false;
  int deficiency = 0;
  // Null coefficient vector when degenerate: one entry per constraint for the
  // original problem; alpha coordinates then one beta per overlap constraint
  // for the conversion problem.
  std::vector<double> witness;
  double smallest_singular_value = 0.0;
};

// Definition of Alizadeh et al: X is primal nondegenerate iff the projected
// constraint matrices are linearly independent on the tangent space.
DegeneracyReport primal_nondegeneracy_original(const SdpProblem& p, const SymMatrix& x,
                                               double tol = 1e-8);

// Conversion analogue: stacks projections of A_{s,p} (alpha columns) and of
// the overlap matrices (+E on the smaller edge endpoint, -E on the larger).
DegeneracyReport primal_nondegeneracy_conversion(const ConvertedSdp& c, const BlockSolution& bs,
                                                 double tol = 1e-8);

// Snap a near-optimal iterate onto the optimal face: truncates each X block
// to its numerical rank, refits (zeta, xi) by least squares restricted to the
// X eigenframes (smallest change from the supplied duals when the fit is
// non-unique) and rebuilds each S block from stationarity. Output satisfies
// complementarity to round-off.
BlockSolution polish_solution(const ConvertedSdp& c, const BlockSolution& bs, double tol = 1e-8);

// Kernel certificate for a rank-deficient separator on tree edge (s,t).
struct Certificate {
  int s = 0, t = 0;
  std::vector<int> separator;     // original vertices, ascending
  std::vector<double> u;          // unit kernel vector of the separator block
  std::vector<double> vs, vt;     // zero-padded lifts into the two blocks
  std::vector<double> beta_hat;   // one per (i <= j) separator pair, overlap order
  std::vector<int> overlap_idx;   // indices of this edge's overlap constraints
};

// Throws AssumptionViolated when the separator block has full rank.
Certificate degeneracy_certificate(const ConvertedSdp& c, const BlockSolution& bs, int s, int t,
                                   double tol = 1e-8);

// Dual multiplier line xi + delta * beta_hat with the matching rank-one
// updates of S_s and S_t, valid for delta in [0, gamma].
struct MultiplierFamily {
  Certificate cert;
  BlockSolution base;  // duals included
  double gamma = 0.0;
  int minus_block = 0;  // clique whose S block receives -delta v v^T
  // Direction applied to xi on the certificate edge: +beta_hat when the first
  // endpoint carries the minus update, -beta_hat otherwise.
  double xi_sign = 1.0;

  BlockSolution member(double delta) const;
};

MultiplierFamily multiplier_family(const ConvertedSdp& c, const BlockSolution& base,
                                   const Certificate& cert, double tol = 1e-8);

struct KktReport {
  double stationarity = 0.0;
  double feasibility = 0.0;
  double overlap = 0.0;  // conversion only
  double complementarity = 0.0;
  double min_eig_x = 0.0;
  double min_eig_s = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Stationarity S = A_0 - sum_p zeta_p A_p (dual objective b^T zeta).
KktReport verify_kkt_original(const SdpProblem& p, const SymMatrix& x,
                              const std::vector<double>& zeta, const SymMatrix& s, double tol);

// Per-clique stationarity with the overlap multipliers entering the first
// edge endpoint with minus sign and the second with plus.
KktReport verify_kkt_conversion(const ConvertedSdp& c, const BlockSolution& bs, double tol);

// S block implied by stationarity for the given multipliers (used by the kkt
// checks and the multiplier family).
SymMatrix dual_slack_block(const ConvertedSdp& c, int s, const std::vector<double>& zeta,
                           const std::vector<double>& xi);

}  // namespace cliquesdp
