#include "cliquesdp/degeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cliquesdp/errors.hpp"

namespace cliquesdp {

TangentFrame tangent_frame(const SymMatrix& x, double tol) {
  const EigenDecomposition e = eig_sym(x);
  TangentFrame f;
  f.n = e.n;
  f.values.assign(e.values.rbegin(), e.values.rend());
  f.q.resize(static_cast<size_t>(f.n) * f.n);
  for (int k = 0; k < f.n; ++k)
    for (int i = 0; i < f.n; ++i)
      f.q[static_cast<size_t>(i) * f.n + k] = e.vec(i, f.n - 1 - k);
  double maxabs = 0.0;
  for (double v : f.values) maxabs = std::max(maxabs, std::abs(v));
  const double thresh = tol * std::max(1.0, maxabs);
  f.r = 0;
  for (double v : f.values)
    if (std::abs(v) > thresh) ++f.r;
  return f;
}

std::vector<double> tangent_project(const SymMatrix& a, const TangentFrame& frame) {
  const int n = frame.n;
  const int r = frame.r;
  const double root2 = std::sqrt(2.0);

  // B = Q^T A Q, needed only for columns touching the leading r rows.
  std::vector<double> aq(static_cast<size_t>(n) * n, 0.0);  // A * Q
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += a(i, j) * frame.vec(j, k);
      aq[static_cast<size_t>(i) * n + k] = s;
    }
  auto b = [&](int row, int col) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += frame.vec(i, row) * aq[static_cast<size_t>(i) * n + col];
    return s;
  };

  std::vector<double> out;
  out.reserve(static_cast<size_t>(r) * (r + 1) / 2 + static_cast<size_t>(r) * (n - r));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i <= j; ++i) out.push_back(i == j ? b(i, j) : root2 * b(i, j));
  for (int j = r; j < n; ++j)
    for (int i = 0; i < r; ++i) out.push_back(root2 * b(i, j));
  return out;
}

namespace {

// One-sided Jacobi orthogonalization of the columns; returns singular values
// (ascending) and the matching right singular vectors. Small singular values
// come out with absolute accuracy near eps * sigma_max, which a Gram-matrix
// route cannot deliver.
void singular_values(std::vector<std::vector<double>> cols, std::vector<double>& sigma,
                     std::vector<std::vector<double>>& right) {
  const int nc = static_cast<int>(cols.size());
  right.assign(nc, std::vector<double>(nc, 0.0));
  for (int k = 0; k < nc; ++k) right[k][k] = 1.0;

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < nc; ++i) {
      for (int j = i + 1; j < nc; ++j) {
        const double a = dot_vec(cols[i], cols[i]);
        const double b = dot_vec(cols[j], cols[j]);
        const double p = dot_vec(cols[i], cols[j]);
        if (std::abs(p) <= 1e-15 * std::sqrt(a * b) || a == 0.0 || b == 0.0) continue;
        rotated = true;
        const double theta = (b - a) / (2.0 * p);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (size_t k = 0; k < cols[i].size(); ++k) {
          const double wi = cols[i][k];
          const double wj = cols[j][k];
          cols[i][k] = c * wi - s * wj;
          cols[j][k] = s * wi + c * wj;
        }
        for (int k = 0; k < nc; ++k) {
          const double vi = right[i][k];
          const double vj = right[j][k];
          right[i][k] = c * vi - s * vj;
          right[j][k] = s * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }

  sigma.resize(nc);
  std::vector<int> order(nc);
  for (int k = 0; k < nc; ++k) {
    sigma[k] = norm2(cols[k]);
    order[k] = k;
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) { return sigma[x] < sigma[y]; });
  std::vector<double> sorted(nc);
  std::vector<std::vector<double>> vright(nc);
  for (int k = 0; k < nc; ++k) {
    sorted[k] = sigma[order[k]];
    vright[k] = right[order[k]];
  }
  sigma = std::move(sorted);
  right = std::move(vright);
}

// Null-space analysis of the matrix whose columns are the projected
// constraints; deficiency counts singular values below tol * (1 + sigma_max).
DegeneracyReport analyze_columns(const std::vector<std::vector<double>>& cols, double tol) {
  std::vector<double> sigma;
  std::vector<std::vector<double>> right;
  singular_values(cols, sigma, right);

  DegeneracyReport rep;
  const double smax = sigma.back();
  const double thresh = tol * (1.0 + smax);
  rep.smallest_singular_value = sigma.front();
  rep.deficiency = 0;
  for (double s : sigma)
    if (s < thresh) ++rep.deficiency;
  rep.nondegenerate = rep.deficiency == 0;
  if (!rep.nondegenerate) {
    rep.witness = right.front();
    // Deterministic sign: first non-negligible component positive.
    for (double w : rep.witness) {
      if (std::abs(w) > 1e-12) {
        if (w < 0.0)
          for (double& v : rep.witness) v = -v;
        break;
      }
    }
  }
  return rep;
}

}  // namespace

DegeneracyReport primal_nondegeneracy_original(const SdpProblem& p, const SymMatrix& x,
                                               double tol) {
  double bmax = 0.0;
  for (double v : p.b) bmax = std::max(bmax, std::abs(v));
  for (int cons = 1; cons <= p.m; ++cons) {
    const double resid = std::abs(dot(p.A[cons].dense(), x) - p.b[cons - 1]);
    if (resid > tol * (1.0 + bmax))
      throw InfeasibleInput("constraint " + std::to_string(cons) + " residual " +
                            std::to_string(resid));
  }
  const EigenDecomposition ex = eig_sym(x);
  if (ex.values.front() < -tol * std::max(1.0, std::abs(ex.values.back())))
    throw InfeasibleInput("X is not psd within tol");

  const TangentFrame frame = tangent_frame(x, tol);
  std::vector<std::vector<double>> cols;
  for (int cons = 1; cons <= p.m; ++cons)
    cols.push_back(tangent_project(p.A[cons].dense(), frame));
  return analyze_columns(cols, tol);
}

namespace {

// Stacked tangent projections of all conversion constraints: one column per
// alpha_p, then one per overlap multiplier (+E at the first edge endpoint,
// -E at the second).
std::vector<std::vector<double>> conversion_columns(const ConvertedSdp& c,
                                                    const std::vector<TangentFrame>& frames,
                                                    const std::vector<size_t>& offset) {
  const int l = c.decomp.clique_count();
  const size_t total = offset[l];
  auto stacked = [&](int s, const SymMatrix& mat, double sign, std::vector<double>& col) {
    const std::vector<double> proj = tangent_project(mat, frames[s]);
    for (size_t k = 0; k < proj.size(); ++k) col[offset[s] + k] += sign * proj[k];
  };
  std::vector<std::vector<double>> cols;
  for (int cons = 1; cons <= c.m; ++cons) {
    std::vector<double> col(total, 0.0);
    for (int s = 0; s < l; ++s) stacked(s, c.Asp[s][cons], 1.0, col);
    cols.push_back(std::move(col));
  }
  for (const auto& ov : c.overlaps) {
    std::vector<double> col(total, 0.0);
    stacked(ov.s, ov.Es, 1.0, col);
    stacked(ov.t, ov.Et, -1.0, col);
    cols.push_back(std::move(col));
  }
  return cols;
}

std::vector<TangentFrame> block_frames(const ConvertedSdp& c, const BlockSolution& bs, double tol,
                                       std::vector<size_t>& offset) {
  const int l = c.decomp.clique_count();
  std::vector<TangentFrame> frames;
  offset.assign(l + 1, 0);
  for (int s = 0; s < l; ++s) {
    frames.push_back(tangent_frame(bs.Xs[s], tol));
    const int n = frames[s].n;
    const int r = frames[s].r;
    offset[s + 1] = offset[s] + static_cast<size_t>(r) * (r + 1) / 2 +
                    static_cast<size_t>(r) * (n - r);
  }
  return frames;
}

}  // namespace

DegeneracyReport primal_nondegeneracy_conversion(const ConvertedSdp& c, const BlockSolution& bs,
                                                 double tol) {
  const int l = c.decomp.clique_count();
  double bmax = 0.0;
  for (double v : c.b) bmax = std::max(bmax, std::abs(v));
  for (int cons = 1; cons <= c.m; ++cons) {
    double val = 0.0;
    for (int s = 0; s < l; ++s) val += dot(c.Asp[s][cons], bs.Xs[s]);
    if (std::abs(val - c.b[cons - 1]) > tol * (1.0 + bmax))
      throw InfeasibleInput("constraint " + std::to_string(cons) + " infeasible");
  }
  for (const auto& ov : c.overlaps) {
    const double gap = dot(ov.Es, bs.Xs[ov.s]) - dot(ov.Et, bs.Xs[ov.t]);
    if (std::abs(gap) > tol * (1.0 + bmax)) throw InfeasibleInput("overlap equality violated");
  }
  for (int s = 0; s < l; ++s) {
    const EigenDecomposition e = eig_sym(bs.Xs[s]);
    if (e.values.front() < -tol * std::max(1.0, std::abs(e.values.back())))
      throw InfeasibleInput("block " + std::to_string(s + 1) + " is not psd within tol");
  }

  std::vector<size_t> offset;
  const std::vector<TangentFrame> frames = block_frames(c, bs, tol, offset);
  return analyze_columns(conversion_columns(c, frames, offset), tol);
}

BlockSolution polish_solution(const ConvertedSdp& c, const BlockSolution& bs, double tol) {
  const int l = c.decomp.clique_count();
  const int ncols = c.m + static_cast<int>(c.overlaps.size());

  std::vector<size_t> offset;
  const std::vector<TangentFrame> frames = block_frames(c, bs, tol, offset);

  BlockSolution out;
  out.has_duals = true;

  // Rank-truncate each X block in its own eigenframe.
  for (int s = 0; s < l; ++s) {
    const TangentFrame& f = frames[s];
    SymMatrix x(f.n);
    for (int k = 0; k < f.r; ++k)
      for (int i = 0; i < f.n; ++i)
        for (int j = i; j < f.n; ++j) x.add(i, j, f.values[k] * f.vec(i, k) * f.vec(j, k));
    out.Xs.push_back(std::move(x));
  }

  // Least-squares stationarity fit over (zeta, xi), restricted to the tangent
  // coordinates; the orthogonal-complement part is absorbed by S below.
  const std::vector<std::vector<double>> cols = conversion_columns(c, frames, offset);
  std::vector<double> target(offset[l], 0.0);
  for (int s = 0; s < l; ++s) {
    const std::vector<double> proj = tangent_project(c.Asp[s][0], frames[s]);
    for (size_t k = 0; k < proj.size(); ++k) target[offset[s] + k] = proj[k];
  }

  std::vector<double> w0(ncols, 0.0);
  if (bs.has_duals) {
    for (int cons = 0; cons < c.m; ++cons) w0[cons] = bs.zeta[cons];
    for (size_t q = 0; q < c.overlaps.size(); ++q) w0[c.m + q] = bs.xi[q];
  }

  SymMatrix gram(ncols);
  std::vector<double> rhs(ncols, 0.0);
  for (int a = 0; a < ncols; ++a) {
    for (int b = a; b < ncols; ++b) gram.set(a, b, dot_vec(cols[a], cols[b]));
    rhs[a] = dot_vec(cols[a], target);
    for (int b = 0; b < ncols; ++b) rhs[a] -= dot_vec(cols[a], cols[b]) * w0[b];
  }
  // Minimum-norm correction via the eigenvalue-clipped pseudo-inverse keeps
  // the supplied duals' position along any multiplier family.
  const EigenDecomposition eg = eig_sym(gram);
  double gmax = 0.0;
  for (double v : eg.values) gmax = std::max(gmax, std::abs(v));
  const double clip = tol * std::max(1.0, gmax);
  std::vector<double> w = w0;
  for (int k = 0; k < ncols; ++k) {
    if (std::abs(eg.values[k]) <= clip) continue;
    const std::vector<double> qk = eg.column(k);
    const double coef = dot_vec(qk, rhs) / eg.values[k];
    for (int a = 0; a < ncols; ++a) w[a] += coef * qk[a];
  }
  out.zeta.assign(w.begin(), w.begin() + c.m);
  out.xi.assign(w.begin() + c.m, w.end());

  // S = kernel-frame component of the stationarity matrix.
  for (int s = 0; s < l; ++s) {
    const TangentFrame& f = frames[s];
    const SymMatrix resid = dual_slack_block(c, s, out.zeta, out.xi);
    SymMatrix slack(f.n);
    // W = Qk^T resid Qk over kernel columns, scattered back.
    const int nk = f.n - f.r;
    if (nk > 0) {
      std::vector<double> wk(static_cast<size_t>(nk) * nk, 0.0);
      for (int a = 0; a < nk; ++a)
        for (int b = 0; b < nk; ++b) {
          double acc = 0.0;
          for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j)
              acc += f.vec(i, f.r + a) * resid(i, j) * f.vec(j, f.r + b);
          wk[static_cast<size_t>(a) * nk + b] = acc;
        }
      for (int i = 0; i < f.n; ++i)
        for (int j = i; j < f.n; ++j) {
          double acc = 0.0;
          for (int a = 0; a < nk; ++a)
            for (int b = 0; b < nk; ++b)
              acc += f.vec(i, f.r + a) * wk[static_cast<size_t>(a) * nk + b] * f.vec(j, f.r + b);
          slack.set(i, j, acc);
        }
    }
    out.Ss.push_back(std::move(slack));
  }
  return out;
}

Certificate degeneracy_certificate(const ConvertedSdp& c, const BlockSolution& bs, int s, int t,
                                   double tol) {
  const CliqueDecomposition& d = c.decomp;
  Certificate cert;
  cert.s = s;
  cert.t = t;
  cert.separator = d.separator_of(s, t);
  const int k = static_cast<int>(cert.separator.size());
  if (k == 0) throw AssumptionViolated("cliques share no vertices");

  std::vector<int> pos_s(k), pos_t(k);
  for (int a = 0; a < k; ++a) {
    pos_s[a] = d.sigma(s, cert.separator[a]);
    pos_t[a] = d.sigma(t, cert.separator[a]);
  }

  const SymMatrix sep_block = principal_submatrix(bs.Xs[s], pos_s);
  if (rank_sym(sep_block, tol) >= k)
    throw AssumptionViolated("separator block has full rank " + std::to_string(k));

  const EigenDecomposition e = eig_sym(sep_block);
  // Smallest-|eigenvalue| vector; the block is psd so that is values.front().
  cert.u = e.column(0);
  for (double w : cert.u) {
    if (std::abs(w) > 1e-12) {
      if (w < 0.0)
        for (double& v : cert.u) v = -v;
      break;
    }
  }

  cert.vs.assign(bs.Xs[s].dim(), 0.0);
  cert.vt.assign(bs.Xs[t].dim(), 0.0);
  for (int a = 0; a < k; ++a) {
    cert.vs[pos_s[a]] = cert.u[a];
    cert.vt[pos_t[a]] = cert.u[a];
  }

  // beta_hat reproduces v v^T exactly: (E . v v^T) / (E . E), i.e. u_a^2 on
  // the diagonal and 2 u_a u_b off it.
  for (size_t q = 0; q < c.overlaps.size(); ++q) {
    const auto& ov = c.overlaps[q];
    if (ov.s != s || ov.t != t) continue;
    cert.overlap_idx.push_back(static_cast<int>(q));
    const auto ia = std::find(cert.separator.begin(), cert.separator.end(), ov.i) -
                    cert.separator.begin();
    const auto jb = std::find(cert.separator.begin(), cert.separator.end(), ov.j) -
                    cert.separator.begin();
    const double coef = ov.i == ov.j ? cert.u[ia] * cert.u[ia] : 2.0 * cert.u[ia] * cert.u[jb];
    cert.beta_hat.push_back(coef);
  }

  const double scale = std::max(1.0, bs.Xs[s].max_abs());
  if (norm2(matvec(bs.Xs[s], cert.vs)) > tol * scale * 10.0 ||
      norm2(matvec(bs.Xs[t], cert.vt)) > tol * scale * 10.0)
    throw AssumptionViolated("lifted kernel vector is not a 0-eigenvector of the blocks");
  return cert;
}

SymMatrix dual_slack_block(const ConvertedSdp& c, int s, const std::vector<double>& zeta,
                           const std::vector<double>& xi) {
  SymMatrix out = c.Asp[s][0];
  for (int cons = 1; cons <= c.m; ++cons) out.add_scaled(-zeta[cons - 1], c.Asp[s][cons]);
  for (size_t q = 0; q < c.overlaps.size(); ++q) {
    const auto& ov = c.overlaps[q];
    if (ov.s == s) out.add_scaled(-xi[q], ov.Es);
    if (ov.t == s) out.add_scaled(xi[q], ov.Et);
  }
  return out;
}

MultiplierFamily multiplier_family(const ConvertedSdp& c, const BlockSolution& base,
                                   const Certificate& cert, double tol) {
  if (!base.has_duals) throw InfeasibleInput("base solution carries no duals");
  const KktReport kkt = verify_kkt_conversion(c, base, tol);
  if (!kkt.pass)
    throw InfeasibleInput("base duals do not satisfy the optimality conditions within tol");

  const double gamma_s = dot_vec(cert.vs, matvec(base.Ss[cert.s], cert.vs));
  const double gamma_t = dot_vec(cert.vt, matvec(base.Ss[cert.t], cert.vt));

  MultiplierFamily fam;
  fam.cert = cert;
  fam.base = base;
  if (gamma_s > tol) {
    fam.gamma = gamma_s;
    fam.minus_block = cert.s;
    fam.xi_sign = 1.0;
  } else if (gamma_t > tol) {
    fam.gamma = gamma_t;
    fam.minus_block = cert.t;
    fam.xi_sign = -1.0;
  } else {
    throw HypothesisFailed("v^T S v vanishes at both edge endpoints");
  }
  return fam;
}

BlockSolution MultiplierFamily::member(double delta) const {
  if (delta < 0.0 || delta > gamma + 1e-12)
    throw HypothesisFailed("delta outside [0, gamma]");
  BlockSolution out = base;
  for (size_t k = 0; k < cert.overlap_idx.size(); ++k)
    out.xi[cert.overlap_idx[k]] += xi_sign * delta * cert.beta_hat[k];
  const int plus_block = minus_block == cert.s ? cert.t : cert.s;
  const std::vector<double>& vminus = minus_block == cert.s ? cert.vs : cert.vt;
  const std::vector<double>& vplus = minus_block == cert.s ? cert.vt : cert.vs;
  out.Ss[minus_block].add_scaled(-delta, SymMatrix::outer(vminus));
  out.Ss[plus_block].add_scaled(delta, SymMatrix::outer(vplus));
  return out;
}

KktReport verify_kkt_original(const SdpProblem& p, const SymMatrix& x,
                              const std::vector<double>& zeta, const SymMatrix& s, double tol) {
  KktReport rep;
  rep.tol = tol;

  SymMatrix resid = p.A[0].dense();
  for (int cons = 1; cons <= p.m; ++cons) resid.add_scaled(-zeta[cons - 1], p.A[cons].dense());
  resid -= s;
  rep.stationarity = resid.max_abs();

  for (int cons = 1; cons <= p.m; ++cons)
    rep.feasibility =
        std::max(rep.feasibility, std::abs(dot(p.A[cons].dense(), x) - p.b[cons - 1]));

  rep.min_eig_x = eig_sym(x).values.front();
  rep.min_eig_s = eig_sym(s).values.front();

  double compl_max = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) {
      double acc = 0.0;
      for (int k = 0; k < x.dim(); ++k) acc += x(i, k) * s(k, j);
      compl_max = std::max(compl_max, std::abs(acc));
    }
  rep.complementarity = compl_max;

  rep.pass = rep.stationarity <= tol && rep.feasibility <= tol && rep.complementarity <= tol &&
             rep.min_eig_x >= -tol && rep.min_eig_s >= -tol;
  return rep;
}

KktReport verify_kkt_conversion(const ConvertedSdp& c, const BlockSolution& bs, double tol) {
  KktReport rep;
  rep.tol = tol;
  const int l = c.decomp.clique_count();

  rep.min_eig_x = rep.min_eig_s = std::numeric_limits<double>::infinity();
  for (int s = 0; s < l; ++s) {
    SymMatrix resid = dual_slack_block(c, s, bs.zeta, bs.xi);
    resid -= bs.Ss[s];
    rep.stationarity = std::max(rep.stationarity, resid.max_abs());

    rep.min_eig_x = std::min(rep.min_eig_x, eig_sym(bs.Xs[s]).values.front());
    rep.min_eig_s = std::min(rep.min_eig_s, eig_sym(bs.Ss[s]).values.front());

    const int n = bs.Xs[s].dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += bs.Xs[s](i, k) * bs.Ss[s](k, j);
        rep.complementarity = std::max(rep.complementarity, std::abs(acc));
      }
  }

  for (int cons = 1; cons <= c.m; ++cons) {
    double val = 0.0;
    for (int s = 0; s < l; ++s) val += dot(c.Asp[s][cons], bs.Xs[s]);
    rep.feasibility = std::max(rep.feasibility, std::abs(val - c.b[cons - 1]));
  }
  for (const auto& ov : c.overlaps)
    rep.overlap =
        std::max(rep.overlap, std::abs(dot(ov.Es, bs.Xs[ov.s]) - dot(ov.Et, bs.Xs[ov.t])));

  rep.pass = rep.stationarity <= tol && rep.feasibility <= tol && rep.overlap <= tol &&
             rep.complementarity <= tol && rep.min_eig_x >= -tol && rep.min_eig_s >= -tol;
  return rep;
}

}  // namespace cliquesdp
