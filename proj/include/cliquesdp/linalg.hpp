#pragma once

#include <optional>
#include <vector>

namespace cliquesdp {

// Dense real symmetric matrix. The constructor symmetrizes its input via
// (M + M^T)/2; an asymmetry larger than 1e-8 * max|M| is rejected.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  SymMatrix(int n, std::vector<double> row_major);

  static SymMatrix identity(int n);
  // v v^T
  static SymMatrix outer(const std::vector<double>& v);
  // 1/2 (e_i e_j^T + e_j e_i^T); equals e_i e_i^T when i == j. Indices 0-based.
  static SymMatrix elementary(int n, int i, int j);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, double v);
  void add(int i, int j, double v);

  const std::vector<double>& data() const { return data_; }
  std::vector<std::vector<double>> rows() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double a);
  // this += a * other
  void add_scaled(double a, const SymMatrix& other);

  double max_abs() const;
  double frobenius_norm() const;
  double trace() const;

 private:
  int n_ = 0;
  std::vector<double> data_;  // row-major n x n, kept exactly symmetric
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double a, SymMatrix m);

// Trace inner product A . B = sum_ij A_ij B_ij.
double dot(const SymMatrix& a, const SymMatrix& b);
std::vector<double> matvec(const SymMatrix& m, const std::vector<double>& v);
// Rows/columns selected by idx (0-based, need not be sorted).
SymMatrix principal_submatrix(const SymMatrix& m, const std::vector<int>& idx);

// Eigenvalues ascending; column k of the orthonormal matrix pairs with values[k].
struct EigenDecomposition {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;  // row-major n x n
  double vec(int i, int k) const { return vectors[static_cast<size_t>(i) * n + k]; }
  std::vector<double> column(int k) const;
};

// Cyclic Jacobi; stops when the off-diagonal Frobenius norm falls below
// 1e-12 * ||M||_F. Throws InvalidMatrix on non-finite entries.
EigenDecomposition eig_sym(const SymMatrix& m);

// Number of eigenvalues with |lambda| > rel_tol * max(1, max|lambda|).
int rank_sym(const SymMatrix& m, double rel_tol = 1e-8);

// Symmetric vectorization, column-major upper triangle (11,12,22,13,23,33,...),
// off-diagonal entries scaled by sqrt(2) so that svec(A).svec(B) = A.B.
std::vector<double> svec(const SymMatrix& m);

// max|lambda| / min|lambda|; +infinity when min|lambda| <= 1e-300.
double cond_sym(const SymMatrix& m);

// Cholesky-based solve; throws NotPositiveDefinite when a pivot <= 0 appears.
std::vector<double> solve_spd(const SymMatrix& m, const std::vector<double>& rhs);

// Lower-triangular Cholesky factor M = L L^T. compute() returns nullopt when
// M is not positive definite.
class CholeskyFactor {
 public:
  static std::optional<CholeskyFactor> compute(const SymMatrix& m);

  int dim() const { return n_; }
  std::vector<double> solve(std::vector<double> rhs) const;
  SymMatrix inverse() const;
  // L^{-1} A L^{-T} for symmetric A (used by the IPM step-length rule).
  SymMatrix congruence_inverse(const SymMatrix& a) const;

 private:
  int n_ = 0;
  std::vector<double> l_;  // row-major, lower triangle
  double lval(int i, int j) const { return l_[static_cast<size_t>(i) * n_ + j]; }
  void forward(std::vector<double>& x) const;
  void backward(std::vector<double>& x) const;
};

// Small vector helpers shared across modules.
double norm_inf(const std::vector<double>& v);
double norm2(const std::vector<double>& v);
double dot_vec(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cliquesdp
