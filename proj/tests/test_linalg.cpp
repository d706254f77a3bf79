#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cliquesdp/errors.hpp"
#include "cliquesdp/linalg.hpp"
#include "cliquesdp/model.hpp"
#include "oracles.hpp"

using namespace cliquesdp;

namespace {

SymMatrix builtin_objective() { return builtin_example().A[0].dense(); }

double reconstruction_error(const SymMatrix& m, const EigenDecomposition& e) {
  double err = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      double acc = 0.0;
      for (int k = 0; k < m.dim(); ++k) acc += e.vec(i, k) * e.values[k] * e.vec(j, k);
      err = std::max(err, std::abs(acc - m(i, j)));
    }
  return err;
}

double orthonormality_error(const EigenDecomposition& e) {
  double err = 0.0;
  for (int a = 0; a < e.n; ++a)
    for (int b = 0; b < e.n; ++b) {
      double acc = 0.0;
      for (int i = 0; i < e.n; ++i) acc += e.vec(i, a) * e.vec(i, b);
      err = std::max(err, std::abs(acc - (a == b ? 1.0 : 0.0)));
    }
  return err;
}

}  // namespace

TEST_CASE("eig of the demo objective matches the known spectrum") {
  const EigenDecomposition e = eig_sym(builtin_objective());
  REQUIRE(e.values.size() == 4);
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e.values[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e.values[3] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("eig of the identity") {
  const EigenDecomposition e = eig_sym(SymMatrix::identity(3));
  for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(orthonormality_error(e) < 1e-10);
}

TEST_CASE("eig of the rank-one conversion block") {
  // X_1 = [1 1 -1; 1 1 -1; -1 -1 1]
  const SymMatrix x(3, {1, 1, -1, 1, 1, -1, -1, -1, 1});
  const EigenDecomposition e = eig_sym(x);
  CHECK(std::abs(e.values[0]) < 1e-8);
  CHECK(std::abs(e.values[1]) < 1e-8);
  CHECK(e.values[2] == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("eig rejects non-finite entries") {
  SymMatrix m(2);
  m.set(0, 1, std::nan(""));
  CHECK_THROWS_AS(eig_sym(m), InvalidMatrix);
}

TEST_CASE("constructor symmetrizes; gross asymmetry is an error") {
  const SymMatrix m(2, {1.0, 1.0 + 1e-10, 1.0, 2.0});
  CHECK(m(0, 1) == m(1, 0));
  CHECK_THROWS_AS(SymMatrix(2, {1.0, 1.0, 2.0, 2.0}), InvalidMatrix);
}

TEST_CASE("rank_sym") {
  const SymMatrix x(3, {1, 1, -1, 1, 1, -1, -1, -1, 1});
  CHECK(rank_sym(x) == 1);
  CHECK(rank_sym(SymMatrix(4)) == 0);

  std::mt19937 rng(7);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(5), w(5);
  for (auto& z : v) z = dist(rng);
  for (auto& z : w) z = dist(rng);
  SymMatrix m = SymMatrix::outer(v);
  m += SymMatrix::outer(w);
  CHECK(rank_sym(m) == 2);
  // cross-check against elimination on the dense rows
  CHECK(oracles::gauss_rank(m.rows()) == 2);
}

TEST_CASE("svec ordering and isometry") {
  const std::vector<double> sv = svec(SymMatrix::identity(2));
  REQUIRE(sv.size() == 3);
  CHECK(sv[0] == 1.0);
  CHECK(sv[1] == 0.0);
  CHECK(sv[2] == 1.0);

  // E_{23} in dimension 3 under the (11,12,22,13,23,33) layout
  const std::vector<double> se = svec(SymMatrix::elementary(3, 0, 1));
  REQUIRE(se.size() == 6);
  CHECK(se[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  for (int k : {0, 2, 3, 4, 5}) CHECK(se[k] == 0.0);

  const SdpProblem p = builtin_example();
  const SymMatrix a0 = p.A[0].dense();
  const SymMatrix a1 = p.A[1].dense();
  CHECK(dot_vec(svec(a0), svec(a1)) == doctest::Approx(dot(a0, a1)).epsilon(1e-12));
  CHECK(dot(a0, a1) == doctest::Approx(1.0));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SymMatrix a = oracles::random_sym(rng, 6);
    const SymMatrix b = oracles::random_sym(rng, 6);
    CHECK(dot_vec(svec(a), svec(b)) ==
          doctest::Approx(dot(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("cond_sym") {
  SymMatrix d(2);
  d.set(0, 0, 1.0);
  d.set(1, 1, 10.0);
  CHECK(cond_sym(d) == doctest::Approx(10.0).epsilon(1e-12));

  SymMatrix sing(3);
  sing.set(0, 0, 3.0);
  sing.set(1, 1, 1.0);
  CHECK(std::isinf(cond_sym(sing)));

  SymMatrix lam(3);
  lam.set(1, 1, 3.0);
  lam.set(2, 2, 1.0);
  CHECK(std::isinf(cond_sym(lam)));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix m = oracles::random_psd(rng, 5, 5, 0.1);
    const double c1 = cond_sym(m);
    const double c2 = cond_sym(3.7 * m);
    CHECK(c2 == doctest::Approx(c1).epsilon(1e-10));
  }
}

TEST_CASE("solve_spd") {
  CHECK(solve_spd(SymMatrix::identity(3), {1, 2, 3}) == std::vector<double>{1, 2, 3});

  SymMatrix d(2);
  d.set(0, 0, 2.0);
  d.set(1, 1, 4.0);
  const auto x = solve_spd(d, {2, 4});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));

  std::mt19937 rng(5);
  const SymMatrix m = oracles::random_psd(rng, 6, 6, 0.5);
  std::vector<double> x0(6);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (auto& v : x0) v = dist(rng);
  const auto sol = solve_spd(m, matvec(m, x0));
  for (int i = 0; i < 6; ++i) CHECK(sol[i] == doctest::Approx(x0[i]).epsilon(1e-8));

  SymMatrix indef(2);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, -1.0);
  CHECK_THROWS_AS(solve_spd(indef, {1, 1}), NotPositiveDefinite);
}

TEST_CASE("eig reconstruction and orthonormality over random matrices") {
  std::mt19937 rng(13);
  for (int n : {1, 2, 3, 5, 8, 20}) {
    for (int trial = 0; trial < 5; ++trial) {
      const SymMatrix m = oracles::random_sym(rng, n, 2.0);
      const EigenDecomposition e = eig_sym(m);
      double maxabs = 0.0;
      for (double v : e.values) maxabs = std::max(maxabs, std::abs(v));
      CHECK(reconstruction_error(m, e) <= 1e-8 * (1.0 + maxabs));
      CHECK(orthonormality_error(e) <= 1e-10);
      // ascending order
      for (size_t k = 1; k < e.values.size(); ++k) CHECK(e.values[k - 1] <= e.values[k]);
    }
  }
}

TEST_CASE("rank monotonicity under principal submatrices") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix m = oracles::random_psd(rng, 6, 3);
    const int full = rank_sym(m);
    for (const std::vector<int>& idx :
         {std::vector<int>{0, 2, 4}, std::vector<int>{1, 3}, std::vector<int>{0, 1, 2, 3, 4}}) {
      CHECK(rank_sym(principal_submatrix(m, idx)) <= full);
    }
  }
}
