#include "cliquesdp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cliquesdp/errors.hpp"

namespace cliquesdp {

namespace {
constexpr double kAsymmetryTol = 1e-8;
constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
}  // namespace

SymMatrix::SymMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * n, 0.0) {
  if (n < 1) throw InvalidMatrix("matrix dimension must be >= 1");
}

SymMatrix::SymMatrix(int n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
  if (n < 1) throw InvalidMatrix("matrix dimension must be >= 1");
  if (data_.size() != static_cast<size_t>(n) * n)
    throw InvalidMatrix("entry count does not match dimension");
  double scale = 0.0;
  for (double v : data_) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const double a = data_[static_cast<size_t>(i) * n_ + j];
      const double b = data_[static_cast<size_t>(j) * n_ + i];
      if (std::abs(a - b) > kAsymmetryTol * scale)
        throw InvalidMatrix("input is not symmetric");
      const double m = 0.5 * (a + b);
      data_[static_cast<size_t>(i) * n_ + j] = m;
      data_[static_cast<size_t>(j) * n_ + i] = m;
    }
  }
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::outer(const std::vector<double>& v) {
  SymMatrix m(static_cast<int>(v.size()));
  for (int i = 0; i < m.n_; ++i)
    for (int j = 0; j < m.n_; ++j) m.data_[static_cast<size_t>(i) * m.n_ + j] = v[i] * v[j];
  return m;
}

SymMatrix SymMatrix::elementary(int n, int i, int j) {
  SymMatrix m(n);
  if (i == j) {
    m.set(i, i, 1.0);
  } else {
    m.set(i, j, 0.5);
  }
  return m;
}

void SymMatrix::set(int i, int j, double v) {
  data_[static_cast<size_t>(i) * n_ + j] = v;
  data_[static_cast<size_t>(j) * n_ + i] = v;
}

void SymMatrix::add(int i, int j, double v) {
  data_[static_cast<size_t>(i) * n_ + j] += v;
  if (i != j) data_[static_cast<size_t>(j) * n_ + i] += v;
}

std::vector<std::vector<double>> SymMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (int i = 0; i < n_; ++i)
    out[i].assign(data_.begin() + static_cast<size_t>(i) * n_,
                  data_.begin() + static_cast<size_t>(i + 1) * n_);
  return out;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double a) {
  for (double& v : data_) v *= a;
  return *this;
}

void SymMatrix::add_scaled(double a, const SymMatrix& other) {
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += a * other.data_[k];
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::trace() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double a, SymMatrix m) { return m *= a; }

double dot(const SymMatrix& a, const SymMatrix& b) {
  double s = 0.0;
  const auto& da = a.data();
  const auto& db = b.data();
  for (size_t k = 0; k < da.size(); ++k) s += da[k] * db[k];
  return s;
}

std::vector<double> matvec(const SymMatrix& m, const std::vector<double>& v) {
  const int n = m.dim();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

SymMatrix principal_submatrix(const SymMatrix& m, const std::vector<int>& idx) {
  SymMatrix out(static_cast<int>(idx.size()));
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = 0; b < idx.size(); ++b)
      out.set(static_cast<int>(a), static_cast<int>(b), m(idx[a], idx[b]));
  return out;
}

std::vector<double> EigenDecomposition::column(int k) const {
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) c[i] = vec(i, k);
  return c;
}

EigenDecomposition eig_sym(const SymMatrix& m) {
  const int n = m.dim();
  for (double v : m.data())
    if (!std::isfinite(v)) throw InvalidMatrix("non-finite matrix entry");

  std::vector<double> a = m.data();
  std::vector<double> q(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<size_t>(i) * n + i] = 1.0;

  auto at = [&](std::vector<double>& v, int i, int j) -> double& {
    return v[static_cast<size_t>(i) * n + j];
  };

  const double norm = m.frobenius_norm();
  if (norm > 0.0) {
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
      double off = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) off += 2.0 * at(a, i, j) * at(a, i, j);
      off = std::sqrt(off);
      if (off <= kJacobiTol * norm) break;

      for (int p = 0; p < n - 1; ++p) {
        for (int r = p + 1; r < n; ++r) {
          const double apr = at(a, p, r);
          if (apr == 0.0) continue;
          const double theta = (at(a, r, r) - at(a, p, p)) / (2.0 * apr);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;

          for (int k = 0; k < n; ++k) {
            const double akp = at(a, k, p);
            const double akr = at(a, k, r);
            at(a, k, p) = c * akp - s * akr;
            at(a, k, r) = s * akp + c * akr;
          }
          for (int k = 0; k < n; ++k) {
            const double apk = at(a, p, k);
            const double ark = at(a, r, k);
            at(a, p, k) = c * apk - s * ark;
            at(a, r, k) = s * apk + c * ark;
          }
          for (int k = 0; k < n; ++k) {
            const double qkp = at(q, k, p);
            const double qkr = at(q, k, r);
            at(q, k, p) = c * qkp - s * qkr;
            at(q, k, r) = s * qkp + c * qkr;
          }
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return at(a, x, x) < at(a, y, y); });

  EigenDecomposition e;
  e.n = n;
  e.values.resize(n);
  e.vectors.resize(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    e.values[k] = at(a, order[k], order[k]);
    for (int i = 0; i < n; ++i)
      e.vectors[static_cast<size_t>(i) * n + k] = at(q, i, order[k]);
  }
  return e;
}

int rank_sym(const SymMatrix& m, double rel_tol) {
  const EigenDecomposition e = eig_sym(m);
  double maxabs = 0.0;
  for (double v : e.values) maxabs = std::max(maxabs, std::abs(v));
  const double thresh = rel_tol * std::max(1.0, maxabs);
  int r = 0;
  for (double v : e.values)
    if (std::abs(v) > thresh) ++r;
  return r;
}

std::vector<double> svec(const SymMatrix& m) {
  const int n = m.dim();
  const double root2 = std::sqrt(2.0);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n) * (n + 1) / 2);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) out.push_back(i == j ? m(i, j) : root2 * m(i, j));
  return out;
}

double cond_sym(const SymMatrix& m) {
  const EigenDecomposition e = eig_sym(m);
  double maxabs = 0.0;
  double minabs = std::numeric_limits<double>::infinity();
  for (double v : e.values) {
    maxabs = std::max(maxabs, std::abs(v));
    minabs = std::min(minabs, std::abs(v));
  }
  if (minabs <= 1e-300) return std::numeric_limits<double>::infinity();
  return maxabs / minabs;
}

std::optional<CholeskyFactor> CholeskyFactor::compute(const SymMatrix& m) {
  const int n = m.dim();
  CholeskyFactor f;
  f.n_ = n;
  f.l_.assign(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= f.lval(j, k) * f.lval(j, k);
    if (d <= 0.0 || !std::isfinite(d)) return std::nullopt;
    const double ljj = std::sqrt(d);
    f.l_[static_cast<size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= f.lval(i, k) * f.lval(j, k);
      f.l_[static_cast<size_t>(i) * n + j] = s / ljj;
    }
  }
  return f;
}

void CholeskyFactor::forward(std::vector<double>& x) const {
  for (int i = 0; i < n_; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= lval(i, k) * x[k];
    x[i] = s / lval(i, i);
  }
}

void CholeskyFactor::backward(std::vector<double>& x) const {
  for (int i = n_ - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n_; ++k) s -= lval(k, i) * x[k];
    x[i] = s / lval(i, i);
  }
}

std::vector<double> CholeskyFactor::solve(std::vector<double> rhs) const {
  forward(rhs);
  backward(rhs);
  return rhs;
}

SymMatrix CholeskyFactor::inverse() const {
  SymMatrix inv(n_);
  std::vector<double> col(n_);
  for (int j = 0; j < n_; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    forward(col);
    backward(col);
    for (int i = 0; i < n_; ++i) inv.set(i, j, col[i]);
  }
  // symmetrize round-off
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) inv.set(i, j, 0.5 * (inv(i, j) + inv(j, i)));
  return inv;
}

SymMatrix CholeskyFactor::congruence_inverse(const SymMatrix& a) const {
  // W = L^{-1} A L^{-T}: solve L row-wise then column-wise.
  std::vector<double> w = a.data();
  // Apply L^{-1} to each column.
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      double s = w[static_cast<size_t>(i) * n_ + j];
      for (int k = 0; k < i; ++k) s -= lval(i, k) * w[static_cast<size_t>(k) * n_ + j];
      w[static_cast<size_t>(i) * n_ + j] = s / lval(i, i);
    }
  }
  // Apply L^{-1} to each row (i.e. right-multiply by L^{-T}).
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      double s = w[static_cast<size_t>(i) * n_ + j];
      for (int k = 0; k < j; ++k) s -= lval(j, k) * w[static_cast<size_t>(i) * n_ + k];
      w[static_cast<size_t>(i) * n_ + j] = s / lval(j, j);
    }
  }
  // Exact symmetry can drift by round-off.
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double m = 0.5 * (w[static_cast<size_t>(i) * n_ + j] + w[static_cast<size_t>(j) * n_ + i]);
      w[static_cast<size_t>(i) * n_ + j] = m;
      w[static_cast<size_t>(j) * n_ + i] = m;
    }
  SymMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j <= i; ++j) out.set(i, j, w[static_cast<size_t>(i) * n_ + j]);
  return out;
}

std::vector<double> solve_spd(const SymMatrix& m, const std::vector<double>& rhs) {
  if (static_cast<int>(rhs.size()) != m.dim())
    throw InvalidMatrix("rhs length does not match dimension");
  auto f = CholeskyFactor::compute(m);
  if (!f) throw NotPositiveDefinite("Cholesky pivot <= 0");
  return f->solve(rhs);
}

double norm_inf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace cliquesdp
