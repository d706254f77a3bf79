#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cliquesdp/degeneracy.hpp"
#include "cliquesdp/errors.hpp"
#include "cliquesdp/ipm.hpp"
#include "cliquesdp/model.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace cliquesdp;

namespace {

ConvertedSdp builtin_converted() {
  const SdpProblem p = builtin_example();
  return convert_sdp(p, decompose(aggregate_sparsity(p)));
}

// Pattern-supported problem with strictly feasible primal and dual points.
SdpProblem random_solvable_problem(std::mt19937& rng, const CliqueDecomposition& d, int m) {
  SdpProblem p = instances::random_covered_problem(rng, d, m);
  // diagonal dominance makes the objective matrix positive definite, so
  // zeta = 0 is strictly dual feasible; b from a strictly feasible X
  for (int i = 0; i < p.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < p.n; ++j)
      if (j != i) row += std::abs(p.A[0].get(i, j));
    p.A[0].set(i, i, row + 1.0);
  }
  const SymMatrix x0 = SymMatrix::identity(p.n);
  for (int cons = 1; cons <= m; ++cons) p.b[cons - 1] = dot(p.A[cons].dense(), x0);
  return p;
}

}  // namespace

TEST_CASE("trivial one-dimensional SDP") {
  SdpProblem p;
  p.n = 1;
  p.m = 1;
  p.A.assign(2, SparseSym(1));
  p.A[0].set(0, 0, 1.0);
  p.A[1].set(0, 0, 1.0);
  p.b = {1.0};
  const IpmResult r = ipm_solve(BlockSdp::from_original(p));
  CHECK(r.status == IpmStatus::Converged);
  CHECK(r.primal_obj == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.X[0](0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.trace.rows.size() >= 1);
}

TEST_CASE("builtin problem, original form") {
  const SdpProblem p = builtin_example();
  const IpmResult r = ipm_solve(BlockSdp::from_original(p));
  REQUIRE(r.status == IpmStatus::Converged);
  CHECK(r.primal_obj == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(r.dual_obj == doctest::Approx(-4.0).epsilon(1e-6));

  const KktReport kkt = verify_kkt_original(p, r.X[0], r.y, r.S[0], 1e-6);
  CHECK(kkt.pass);

  // mu strictly decreasing across accepted iterations
  for (size_t k = 1; k < r.trace.rows.size(); ++k)
    CHECK(r.trace.rows[k].mu < r.trace.rows[k - 1].mu);
}

TEST_CASE("builtin problem, conversion form") {
  const ConvertedSdp c = builtin_converted();
  // The dual multipliers of this formulation are non-unique and the raw dual
  // iterate approaches the optimal face only like sqrt(mu); a tighter gap is
  // needed before the complementarity product clears 1e-6.
  IpmConfig cfg;
  cfg.tol_gap = cfg.tol_feas = 1e-9;
  const IpmResult r = ipm_solve(BlockSdp::from_converted(c), cfg);
  REQUIRE(r.status == IpmStatus::Converged);
  CHECK(r.primal_obj == doctest::Approx(-4.0).epsilon(1e-6));

  const SymMatrix want(3, {1, 1, -1, 1, 1, -1, -1, -1, 1});
  for (const auto& x : r.X) CHECK((x - want).max_abs() <= 1e-4);

  const BlockSolution bs = to_block_solution(c, r);
  const KktReport kkt = verify_kkt_conversion(c, bs, 1e-6);
  CHECK(kkt.pass);

  // snapping onto the optimal face leaves nothing on the table
  const KktReport polished = verify_kkt_conversion(c, polish_solution(c, bs, 1e-6), 1e-9);
  CHECK(polished.pass);
}

TEST_CASE("schur matrix at scaled-identity iterates") {
  SdpProblem p;
  p.n = 3;
  p.m = 1;
  p.A.assign(2, SparseSym(3));
  p.A[0].set(0, 0, 1.0);
  p.A[1].set(0, 1, 0.5);
  p.A[1].set(2, 2, 2.0);
  p.b = {1.0};
  const BlockSdp b = BlockSdp::from_original(p);
  const SymMatrix m =
      schur_matrix(b, {SymMatrix::identity(3)}, {SymMatrix::identity(3)});
  CHECK(m.dim() == 1);
  CHECK(m(0, 0) == doctest::Approx(dot(p.A[1].dense(), p.A[1].dense())).epsilon(1e-14));
}

TEST_CASE("schur matrix of the builtin problem at the start point is the identity") {
  const SdpProblem p = builtin_example();
  const BlockSdp b = BlockSdp::from_original(p);
  const double rho = std::sqrt(12.0);  // max |A_p|_F over the data
  const SymMatrix m = schur_matrix(b, {rho * SymMatrix::identity(4)},
                                   {rho * SymMatrix::identity(4)});
  REQUIRE(m.dim() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(m(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("converted schur matrix is 7x7 and positive definite") {
  const ConvertedSdp c = builtin_converted();
  const BlockSdp b = BlockSdp::from_converted(c);
  const SymMatrix m = schur_matrix(b, {SymMatrix::identity(3), SymMatrix::identity(3)},
                                   {SymMatrix::identity(3), SymMatrix::identity(3)});
  REQUIRE(m.dim() == 7);
  CHECK(CholeskyFactor::compute(m).has_value());
}

TEST_CASE("condition_slope on synthetic traces") {
  IterateTrace linear, quadratic;
  for (int k = 0; k < 8; ++k) {
    const double mu = std::pow(10.0, -k);
    linear.rows.push_back({k, mu, 0, 0, 0, 1.0 / mu, 1, 1});
    quadratic.rows.push_back({k, mu, 0, 0, 0, 1.0 / (mu * mu), 1, 1});
  }
  CHECK(condition_slope(linear) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(condition_slope(quadratic) == doctest::Approx(2.0).epsilon(1e-6));

  IterateTrace empty;
  CHECK_THROWS_AS(condition_slope(empty), InsufficientData);
}

TEST_CASE("builtin slope contrast") {
  const SdpProblem p = builtin_example();
  const IpmResult orig = ipm_solve(BlockSdp::from_original(p));
  const IpmResult conv = ipm_solve(BlockSdp::from_converted(builtin_converted()));
  const double so = condition_slope(orig.trace);
  const double sc = condition_slope(conv.trace);
  CHECK(so <= 1.5);
  CHECK(sc >= 1.5);
  CHECK(sc - so >= 0.5);
}

TEST_CASE("objective equivalence of the two formulations on random instances") {
  std::mt19937 rng(109);
  for (int trial = 0; trial < 3; ++trial) {
    const SparsityGraph g = oracles::random_graph(rng, 6, 0.3);
    const CliqueDecomposition d = decompose(g);
    const SdpProblem p = random_solvable_problem(rng, d, 3);
    const ConvertedSdp c = convert_sdp(p, d);

    const IpmResult orig = ipm_solve(BlockSdp::from_original(p));
    const IpmResult conv = ipm_solve(BlockSdp::from_converted(c));
    REQUIRE(orig.status == IpmStatus::Converged);
    REQUIRE(conv.status == IpmStatus::Converged);
    CHECK(orig.primal_obj == doctest::Approx(conv.primal_obj).epsilon(1e-6));

    // the completed conversion optimum is feasible for the original problem
    const BlockSolution bs = to_block_solution(c, conv);
    const SymMatrix x = psd_complete(bs, d, 1e-6);
    CHECK(eig_sym(x).values.front() >= -1e-6);
    CHECK(dot(p.A[0].dense(), x) == doctest::Approx(orig.primal_obj).epsilon(1e-5));
  }
}

TEST_CASE("trace CSV format") {
  IterateTrace t;
  t.rows.push_back({0, 1.0, 2.0, 3.0, 4.0, 5.0, 0.5, 0.25});
  std::istringstream in(t.to_csv());
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "iter,mu,gap,pinfeas,dinfeas,schur_cond,step_p,step_d");
  std::getline(in, row);
  CHECK(row == "0,1,2,3,4,5,0.5,0.25");
}

TEST_CASE("emitted conversion SDPA reparses and solves to the same value") {
  const ConvertedSdp c = builtin_converted();
  const SdpProblem flat = parse_sdpa(c.emit_sdpa());
  CHECK(flat.n == 6);
  CHECK(flat.m == 7);
  const IpmResult r = ipm_solve(BlockSdp::from_original(flat));
  REQUIRE(r.status == IpmStatus::Converged);
  CHECK(r.primal_obj == doctest::Approx(-4.0).epsilon(1e-6));
}
