#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cliquesdp/graph.hpp"
#include "cliquesdp/linalg.hpp"

namespace cliquesdp {

// Sparse upper-triangle storage of a symmetric matrix.
struct SparseSym {
  int n = 0;
  std::map<std::pair<int, int>, double> entries;  // key (i,j) with i <= j, 0-based

  SparseSym() = default;
  explicit SparseSym(int n_) : n(n_) {}

  void set(int i, int j, double v);
  double get(int i, int j) const;
  SymMatrix dense() const;
};

// min A_0 . X  s.t.  A_p . X = b_p (p = 1..m),  X psd.
struct SdpProblem {
  int n = 0;
  int m = 0;
  std::vector<SparseSym> A;  // size m+1; A[0] is the objective
  std::vector<double> b;     // size m
};

// min a_0^T x  s.t.  a_p^T x = b_p (p = 1..m),  x >= 0.
struct LpProblem {
  int n = 0;
  int m = 0;
  std::vector<std::vector<double>> a;  // size m+1; a[0] is the objective
  std::vector<double> b;
};

// Edge (i,j), i != j, present iff some A_p has a nonzero (i,j) entry.
SparsityGraph aggregate_sparsity(const SdpProblem& p);

// Sparse SDPA (".dat-s"). Multi-block inputs are flattened to one
// block-diagonal matrix per A_p; a negative block size -k denotes a diagonal
// block of size k. Comment lines start with '*' or '"'.
SdpProblem parse_sdpa(const std::string& text);

// Single-block sparse SDPA text; upper-triangle entries only, ordered by
// (p, i, j), values printed with 17 significant digits.
std::string emit_sdpa(const SdpProblem& p);

// The 4x4 demo problem: A_0 as below, A_p = e_p e_p^T, b_p = 1 for p = 1..4.
//   A_0 = [1 1 1 0; 1 1 0 1; 1 0 1 1; 0 1 1 1]
SdpProblem builtin_example();

}  // namespace cliquesdp
