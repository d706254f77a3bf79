#include "cliquesdp/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cliquesdp/errors.hpp"

namespace cliquesdp {

BlockSdp BlockSdp::from_original(const SdpProblem& p) {
  BlockSdp b;
  b.dims = {p.n};
  b.objective = {p.A[0].dense()};
  for (int cons = 1; cons <= p.m; ++cons) {
    ConstraintRow row;
    row.terms.push_back({0, p.A[cons].dense()});
    row.rhs = p.b[cons - 1];
    b.rows.push_back(std::move(row));
  }
  return b;
}

BlockSdp BlockSdp::from_converted(const ConvertedSdp& c) {
  BlockSdp b;
  b.dims = c.block_dims;
  for (int s = 0; s < c.decomp.clique_count(); ++s) b.objective.push_back(c.Asp[s][0]);
  for (int cons = 1; cons <= c.m; ++cons) {
    ConstraintRow row;
    for (int s = 0; s < c.decomp.clique_count(); ++s)
      if (c.Asp[s][cons].max_abs() > 0.0) row.terms.push_back({s, c.Asp[s][cons]});
    row.rhs = c.b[cons - 1];
    b.rows.push_back(std::move(row));
  }
  for (const auto& ov : c.overlaps) {
    ConstraintRow row;
    row.terms.push_back({ov.s, ov.Es});
    SymMatrix neg = ov.Et;
    neg *= -1.0;
    row.terms.push_back({ov.t, std::move(neg)});
    row.rhs = 0.0;
    b.rows.push_back(std::move(row));
  }
  return b;
}

int BlockSdp::total_dim() const {
  int n = 0;
  for (int d : dims) n += d;
  return n;
}

std::string to_string(IpmStatus s) {
  switch (s) {
    case IpmStatus::Converged:
      return "converged";
    case IpmStatus::MaxIterations:
      return "max_iterations";
    case IpmStatus::LineSearchFailure:
      return "line_search_failure";
    case IpmStatus::SingularSchur:
      return "singular_schur";
  }
  return "unknown";
}

std::string IterateTrace::to_csv() const {
  std::ostringstream out;
  out << "iter,mu,gap,pinfeas,dinfeas,schur_cond,step_p,step_d\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.iter;
    for (double v : {r.mu, r.gap, r.pinfeas, r.dinfeas, r.schur_cond, r.step_p, r.step_d}) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << "," << buf;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

using Dense = std::vector<double>;  // row-major square

Dense product(int n, const Dense& a, const Dense& b) {
  Dense out(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a[static_cast<size_t>(i) * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j)
        out[static_cast<size_t>(i) * n + j] += aik * b[static_cast<size_t>(k) * n + j];
    }
  return out;
}

double dot_dense(const SymMatrix& a, const Dense& g) {
  const auto& da = a.data();
  double s = 0.0;
  for (size_t k = 0; k < da.size(); ++k) s += da[k] * g[k];
  return s;
}

SymMatrix symmetrized(int n, const Dense& g) {
  SymMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out.set(i, j, 0.5 * (g[static_cast<size_t>(i) * n + j] + g[static_cast<size_t>(j) * n + i]));
  return out;
}

// Largest alpha with P + alpha * D psd, via eigenvalues of L^{-1} D L^{-T}.
double max_step(const std::vector<SymMatrix>& p, const std::vector<SymMatrix>& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (size_t s = 0; s < p.size(); ++s) {
    const auto chol = CholeskyFactor::compute(p[s]);
    if (!chol) return 0.0;
    const SymMatrix w = chol->congruence_inverse(d[s]);
    const double lmin = eig_sym(w).values.front();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

bool all_pd(const std::vector<SymMatrix>& p) {
  for (const auto& m : p)
    if (!CholeskyFactor::compute(m)) return false;
  return true;
}

std::vector<SymMatrix> stepped(const std::vector<SymMatrix>& p, const std::vector<SymMatrix>& d,
                               double alpha) {
  std::vector<SymMatrix> out = p;
  for (size_t s = 0; s < p.size(); ++s) out[s].add_scaled(alpha, d[s]);
  return out;
}

struct Direction {
  std::vector<SymMatrix> dx, ds;
  std::vector<double> dy;
};

}  // namespace

SymMatrix schur_matrix(const BlockSdp& p, const std::vector<SymMatrix>& x,
                       const std::vector<SymMatrix>& s) {
  const int m = static_cast<int>(p.rows.size());
  const int l = static_cast<int>(p.dims.size());

  std::vector<SymMatrix> sinv;
  for (int k = 0; k < l; ++k) {
    const auto chol = CholeskyFactor::compute(s[k]);
    if (!chol) throw NotPositiveDefinite("S block lost definiteness");
    sinv.push_back(chol->inverse());
  }

  // Per block, X A_j Sinv for every row j touching the block.
  std::vector<std::vector<std::pair<int, Dense>>> lifted(l);
  for (int j = 0; j < m; ++j)
    for (const auto& [blk, mat] : p.rows[j].terms) {
      const int n = p.dims[blk];
      Dense xa = product(n, x[blk].data(), mat.data());
      lifted[blk].push_back({j, product(n, xa, sinv[blk].data())});
    }

  std::vector<double> raw(static_cast<size_t>(m) * m, 0.0);
  for (int blk = 0; blk < l; ++blk)
    for (int i = 0; i < m; ++i)
      for (const auto& [bi, mat] : p.rows[i].terms)
        if (bi == blk)
          for (const auto& [j, g] : lifted[blk])
            raw[static_cast<size_t>(i) * m + j] += dot_dense(mat, g);
  return symmetrized(m, raw);
}

IpmResult ipm_solve(const BlockSdp& p, const IpmConfig& cfg) {
  const int m = static_cast<int>(p.rows.size());
  const int l = static_cast<int>(p.dims.size());
  const int total = p.total_dim();

  IpmResult res;

  double rho = 1.0;
  for (const auto& row : p.rows) rho = std::max(rho, std::abs(row.rhs));
  {
    double fr = 0.0;
    for (const auto& c : p.objective) fr += c.frobenius_norm() * c.frobenius_norm();
    rho = std::max(rho, std::sqrt(fr));
    for (const auto& row : p.rows) {
      fr = 0.0;
      for (const auto& [blk, mat] : row.terms) fr += mat.frobenius_norm() * mat.frobenius_norm();
      rho = std::max(rho, std::sqrt(fr));
    }
  }
  rho *= cfg.init_scale;

  std::vector<SymMatrix> x, s;
  for (int k = 0; k < l; ++k) {
    x.push_back(rho * SymMatrix::identity(p.dims[k]));
    s.push_back(rho * SymMatrix::identity(p.dims[k]));
  }
  std::vector<double> y(m, 0.0);

  double bmax = 0.0;
  for (const auto& row : p.rows) bmax = std::max(bmax, std::abs(row.rhs));
  double cmax = 0.0;
  for (const auto& c : p.objective) cmax = std::max(cmax, c.max_abs());

  auto apply_rows = [&](const std::vector<SymMatrix>& mats) {
    std::vector<double> out(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (const auto& [blk, mat] : p.rows[i].terms) out[i] += dot(mat, mats[blk]);
    return out;
  };

  res.status = IpmStatus::MaxIterations;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const std::vector<double> ax = apply_rows(x);
    std::vector<double> rp(m);
    for (int i = 0; i < m; ++i) rp[i] = p.rows[i].rhs - ax[i];

    std::vector<SymMatrix> rd;
    for (int k = 0; k < l; ++k) {
      SymMatrix r = p.objective[k];
      r -= s[k];
      rd.push_back(std::move(r));
    }
    for (int i = 0; i < m; ++i)
      for (const auto& [blk, mat] : p.rows[i].terms) rd[blk].add_scaled(-y[i], mat);

    double xs = 0.0;
    double pobj = 0.0;
    for (int k = 0; k < l; ++k) {
      xs += dot(x[k], s[k]);
      pobj += dot(p.objective[k], x[k]);
    }
    double dobj = 0.0;
    for (int i = 0; i < m; ++i) dobj += p.rows[i].rhs * y[i];

    const double mu = xs / total;
    double dinf = 0.0;
    for (const auto& r : rd) dinf = std::max(dinf, r.max_abs());
    const double pinf = norm_inf(rp) / (1.0 + bmax);
    const double dinf_rel = dinf / (1.0 + cmax);

    res.mu = mu;
    res.primal_obj = pobj;
    res.dual_obj = dobj;
    res.iterations = iter;

    if (mu <= cfg.tol_gap && pinf <= cfg.tol_feas && dinf_rel <= cfg.tol_feas) {
      res.status = IpmStatus::Converged;
      break;
    }

    // Factor the current blocks.
    std::vector<CholeskyFactor> schol;
    bool pd = true;
    for (int k = 0; k < l; ++k) {
      auto f = CholeskyFactor::compute(s[k]);
      if (!f) {
        pd = false;
        break;
      }
      schol.push_back(std::move(*f));
    }
    if (!pd) {
      res.status = IpmStatus::LineSearchFailure;
      break;
    }
    std::vector<SymMatrix> sinv;
    for (int k = 0; k < l; ++k) sinv.push_back(schol[k].inverse());

    const SymMatrix schur = schur_matrix(p, x, s);
    const double cond = cond_sym(schur);

    // Factor the Schur matrix, escalating a diagonal ridge on failure.
    std::optional<CholeskyFactor> mf = CholeskyFactor::compute(schur);
    if (!mf) {
      const double base = std::max(1.0, schur.max_abs());
      for (double ridge = 1e-14; ridge <= 1e-6; ridge *= 10.0) {
        SymMatrix reg = schur;
        for (int i = 0; i < m; ++i) reg.add(i, i, ridge * base);
        mf = CholeskyFactor::compute(reg);
        if (mf) break;
      }
      if (!mf) {
        res.status = IpmStatus::SingularSchur;
        break;
      }
    }

    // X Rd Sinv per block, reused by both solves.
    std::vector<Dense> xrds;
    for (int k = 0; k < l; ++k) {
      Dense xr = product(p.dims[k], x[k].data(), rd[k].data());
      xrds.push_back(product(p.dims[k], xr, sinv[k].data()));
    }
    const std::vector<double> a_sinv = apply_rows(sinv);

    auto solve_direction = [&](double sigma_mu, const std::vector<Dense>* corr) {
      Direction dir;
      std::vector<double> rhs(m);
      for (int i = 0; i < m; ++i) {
        double v = p.rows[i].rhs - sigma_mu * a_sinv[i];
        for (const auto& [blk, mat] : p.rows[i].terms) {
          v += dot_dense(mat, xrds[blk]);
          if (corr) v += dot_dense(mat, (*corr)[blk]);
        }
        rhs[i] = v;
      }
      dir.dy = mf->solve(rhs);

      for (int k = 0; k < l; ++k) {
        SymMatrix dsk = rd[k];
        dir.ds.push_back(std::move(dsk));
      }
      for (int i = 0; i < m; ++i)
        for (const auto& [blk, mat] : p.rows[i].terms) dir.ds[blk].add_scaled(-dir.dy[i], mat);

      for (int k = 0; k < l; ++k) {
        const int n = p.dims[k];
        Dense xds = product(n, x[k].data(), dir.ds[k].data());
        Dense g = product(n, xds, sinv[k].data());
        // dx = sigma_mu Sinv - X - X dS Sinv - corr
        for (size_t q = 0; q < g.size(); ++q) {
          double v = -g[q] - x[k].data()[q] + sigma_mu * sinv[k].data()[q];
          if (corr) v -= (*corr)[k][q];
          g[q] = v;
        }
        dir.dx.push_back(symmetrized(n, g));
      }
      return dir;
    };

    // Predictor.
    const Direction aff = solve_direction(0.0, nullptr);
    const double ap_aff = std::min(1.0, cfg.tau * max_step(x, aff.dx));
    const double ad_aff = std::min(1.0, cfg.tau * max_step(s, aff.ds));
    double xs_aff = 0.0;
    for (int k = 0; k < l; ++k) {
      SymMatrix xa = x[k];
      xa.add_scaled(ap_aff, aff.dx[k]);
      SymMatrix sa = s[k];
      sa.add_scaled(ad_aff, aff.ds[k]);
      xs_aff += dot(xa, sa);
    }
    const double mu_aff = std::max(0.0, xs_aff / total);
    double sigma = std::pow(mu_aff / mu, 3.0);
    sigma = std::clamp(sigma, 1e-8, 1.0);

    // Corrector with the second-order term dXaff dSaff Sinv.
    std::vector<Dense> corr;
    for (int k = 0; k < l; ++k) {
      Dense prod2 = product(p.dims[k], aff.dx[k].data(), aff.ds[k].data());
      corr.push_back(product(p.dims[k], prod2, sinv[k].data()));
    }
    const Direction dir = solve_direction(sigma * mu, &corr);

    double ap = std::min(1.0, cfg.tau * max_step(x, dir.dx));
    double ad = std::min(1.0, cfg.tau * max_step(s, dir.ds));

    // Cholesky validation with backtracking.
    int guard = 0;
    while (guard < 60 && !all_pd(stepped(x, dir.dx, ap))) ap *= 0.95, ++guard;
    while (guard < 60 && !all_pd(stepped(s, dir.ds, ad))) ad *= 0.95, ++guard;
    if (guard >= 60 || ap < 1e-12 || ad < 1e-12) {
      res.status = IpmStatus::LineSearchFailure;
      break;
    }

    // Keep mu strictly decreasing: equalize steps, then halve.
    auto mu_after = [&](double a_p, double a_d) {
      double acc = 0.0;
      for (int k = 0; k < l; ++k) {
        SymMatrix xa = x[k];
        xa.add_scaled(a_p, dir.dx[k]);
        SymMatrix sa = s[k];
        sa.add_scaled(a_d, dir.ds[k]);
        acc += dot(xa, sa);
      }
      return acc / total;
    };
    if (mu_after(ap, ad) >= mu) {
      ap = ad = std::min(ap, ad);
      int halvings = 0;
      while (mu_after(ap, ad) >= mu && halvings < 30) {
        ap *= 0.5;
        ad *= 0.5;
        ++halvings;
      }
      if (halvings >= 30) {
        res.status = IpmStatus::LineSearchFailure;
        break;
      }
    }

    res.trace.rows.push_back({iter, mu, std::abs(pobj - dobj), pinf, dinf_rel, cond, ap, ad});

    for (int k = 0; k < l; ++k) {
      x[k].add_scaled(ap, dir.dx[k]);
      s[k].add_scaled(ad, dir.ds[k]);
    }
    for (int i = 0; i < m; ++i) y[i] += ad * dir.dy[i];

    if (iter + 1 == cfg.max_iter) res.iterations = iter + 1;
  }

  res.X = std::move(x);
  res.S = std::move(s);
  res.y = std::move(y);
  return res;
}

double condition_slope(const IterateTrace& trace, int window) {
  std::vector<std::pair<double, double>> pts;  // (log 1/mu, log cond)
  for (const auto& r : trace.rows)
    if (std::isfinite(r.schur_cond) && r.schur_cond > 0.0 && r.mu > 0.0)
      pts.push_back({-std::log(r.mu), std::log(r.schur_cond)});
  if (static_cast<int>(pts.size()) < window)
    throw InsufficientData("trace has fewer than " + std::to_string(window) +
                           " usable iterations");
  pts.erase(pts.begin(), pts.end() - window);

  double mx = 0.0, my = 0.0;
  for (const auto& [px, py] : pts) {
    mx += px;
    my += py;
  }
  mx /= pts.size();
  my /= pts.size();
  double num = 0.0, den = 0.0;
  for (const auto& [px, py] : pts) {
    num += (px - mx) * (py - my);
    den += (px - mx) * (px - mx);
  }
  if (den == 0.0) throw InsufficientData("mu does not vary over the window");
  return num / den;
}

BlockSolution to_block_solution(const ConvertedSdp& c, const IpmResult& r) {
  BlockSolution bs;
  bs.Xs = r.X;
  bs.Ss = r.S;
  bs.has_duals = true;
  bs.zeta.assign(r.y.begin(), r.y.begin() + c.m);
  bs.xi.assign(r.y.begin() + c.m, r.y.end());
  return bs;
}

}  // namespace cliquesdp
