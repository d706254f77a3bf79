#include "cliquesdp/convert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

#include "cliquesdp/errors.hpp"

namespace cliquesdp {

namespace {

// Smallest-index clique containing both i and j, or -1.
int owner_clique(const CliqueDecomposition& d, int i, int j) {
  for (int s = 0; s < d.clique_count(); ++s)
    if (d.sigma(s, i) >= 0 && d.sigma(s, j) >= 0) return s;
  return -1;
}

}  // namespace

ConvertedSdp convert_sdp(const SdpProblem& p, const CliqueDecomposition& d) {
  ConvertedSdp c;
  c.decomp = d;
  c.m = p.m;
  c.b = p.b;
  for (const auto& cl : d.cliques) {
    c.block_dims.push_back(static_cast<int>(cl.size()));
    c.nbar += static_cast<long>(cl.size()) * (cl.size() + 1) / 2;
  }

  c.Asp.assign(d.clique_count(), {});
  for (int s = 0; s < d.clique_count(); ++s)
    c.Asp[s].assign(p.m + 1, SymMatrix(c.block_dims[s]));

  for (int cons = 0; cons <= p.m; ++cons) {
    for (const auto& [key, v] : p.A[cons].entries) {
      const auto [i, j] = key;
      const int s = owner_clique(d, i, j);
      if (s < 0) {
        std::ostringstream msg;
        msg << "entry (" << i + 1 << "," << j + 1 << ") of A_" << cons
            << " is covered by no clique";
        throw CoverageError(msg.str());
      }
      c.Asp[s][cons].set(d.sigma(s, i), d.sigma(s, j), v);
    }
  }

  for (size_t e = 0; e < d.tree_edges.size(); ++e) {
    const auto& [s, t] = d.tree_edges[e];
    const std::vector<int> sep = d.separator(static_cast<int>(e));
    for (size_t a = 0; a < sep.size(); ++a) {
      for (size_t bix = a; bix < sep.size(); ++bix) {
        OverlapConstraint ov;
        ov.s = s;
        ov.t = t;
        ov.i = sep[a];
        ov.j = sep[bix];
        ov.Es = SymMatrix::elementary(c.block_dims[s], d.sigma(s, ov.i), d.sigma(s, ov.j));
        ov.Et = SymMatrix::elementary(c.block_dims[t], d.sigma(t, ov.i), d.sigma(t, ov.j));
        c.overlaps.push_back(std::move(ov));
      }
    }
  }
  return c;
}

std::string ConvertedSdp::emit_sdpa() const {
  const int rows = m + static_cast<int>(overlaps.size());
  std::ostringstream out;
  out << rows << "\n" << decomp.clique_count() << "\n";
  for (int s = 0; s < decomp.clique_count(); ++s)
    out << block_dims[s] << (s + 1 == decomp.clique_count() ? "" : " ");
  out << "\n";
  char buf[64];
  for (int k = 0; k < rows; ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", k < m ? b[k] : 0.0);
    out << buf << (k + 1 == rows ? "" : " ");
  }
  out << "\n";

  auto emit_block = [&](int cons, int blk, const SymMatrix& mat) {
    for (int i = 0; i < mat.dim(); ++i)
      for (int j = i; j < mat.dim(); ++j)
        if (mat(i, j) != 0.0) {
          std::snprintf(buf, sizeof(buf), "%.17g", mat(i, j));
          out << cons << " " << blk + 1 << " " << i + 1 << " " << j + 1 << " " << buf << "\n";
        }
  };

  for (int cons = 0; cons <= m; ++cons)
    for (int s = 0; s < decomp.clique_count(); ++s) emit_block(cons, s, Asp[s][cons]);
  for (size_t q = 0; q < overlaps.size(); ++q) {
    const auto& ov = overlaps[q];
    emit_block(m + static_cast<int>(q) + 1, ov.s, ov.Es);
    SymMatrix neg = ov.Et;
    neg *= -1.0;
    emit_block(m + static_cast<int>(q) + 1, ov.t, neg);
  }
  return out.str();
}

BlockSolution restrict_solution(const SymMatrix& x, const CliqueDecomposition& d) {
  BlockSolution bs;
  for (int s = 0; s < d.clique_count(); ++s) {
    const auto& cl = d.cliques[s];
    SymMatrix block(static_cast<int>(cl.size()));
    for (size_t a = 0; a < cl.size(); ++a)
      for (size_t b = 0; b < cl.size(); ++b)
        block.set(static_cast<int>(a), static_cast<int>(b), x(cl[a], cl[b]));
    bs.Xs.push_back(std::move(block));
  }
  return bs;
}

namespace {

// Moore-Penrose inverse via eigenvalue clipping at rel_tol.
SymMatrix pinv_sym(const SymMatrix& m, double rel_tol) {
  const EigenDecomposition e = eig_sym(m);
  double maxabs = 0.0;
  for (double v : e.values) maxabs = std::max(maxabs, std::abs(v));
  const double clip = rel_tol * std::max(1.0, maxabs);
  SymMatrix out(m.dim());
  for (int k = 0; k < m.dim(); ++k) {
    if (std::abs(e.values[k]) <= clip) continue;
    const double w = 1.0 / e.values[k];
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j) out.add(i, j, w * e.vec(i, k) * e.vec(j, k));
  }
  return out;
}

}  // namespace

SymMatrix psd_complete(const BlockSolution& bs, const CliqueDecomposition& d, double tol) {
  const int l = d.clique_count();
  for (int s = 0; s < l; ++s) {
    const EigenDecomposition e = eig_sym(bs.Xs[s]);
    if (e.values.front() < -tol * std::max(1.0, std::abs(e.values.back())))
      throw NotCompletable("block " + std::to_string(s + 1) + " is not psd within tol");
  }
  for (size_t q = 0; q < d.tree_edges.size(); ++q) {
    const auto& [s, t] = d.tree_edges[q];
    for (int i : d.separator(static_cast<int>(q)))
      for (int j : d.separator(static_cast<int>(q))) {
        const double vs = bs.Xs[s](d.sigma(s, i), d.sigma(s, j));
        const double vt = bs.Xs[t](d.sigma(t, i), d.sigma(t, j));
        if (std::abs(vs - vt) > tol)
          throw OverlapMismatch("blocks disagree on shared entry (" + std::to_string(i + 1) +
                                "," + std::to_string(j + 1) + ")");
      }
  }

  SymMatrix x(d.n);
  for (int s = 0; s < l; ++s) {
    const auto& cl = d.cliques[s];
    for (size_t a = 0; a < cl.size(); ++a)
      for (size_t b = 0; b < cl.size(); ++b)
        x.set(cl[a], cl[b], bs.Xs[s](static_cast<int>(a), static_cast<int>(b)));
  }

  // Breadth-first traversal over each tree component rooted at its smallest
  // clique; "filled" collects vertices whose mutual entries are already set.
  std::vector<std::vector<int>> nbr(l);
  for (const auto& [s, t] : d.tree_edges) {
    nbr[s].push_back(t);
    nbr[t].push_back(s);
  }
  for (auto& v : nbr) std::sort(v.begin(), v.end());

  std::vector<bool> visited(l, false);
  for (int root = 0; root < l; ++root) {
    if (visited[root]) continue;
    std::vector<int> filled = d.cliques[root];
    std::sort(filled.begin(), filled.end());
    visited[root] = true;
    std::deque<std::pair<int, int>> queue;  // (parent, child)
    for (int t : nbr[root]) queue.push_back({root, t});
    while (!queue.empty()) {
      const auto [parent, child] = queue.front();
      queue.pop_front();
      if (visited[child]) continue;
      visited[child] = true;

      std::vector<int> sep = d.separator_of(parent, child);
      std::vector<int> fresh;  // vertices of the child outside the separator
      for (int v : d.cliques[child])
        if (!std::binary_search(sep.begin(), sep.end(), v)) fresh.push_back(v);
      std::vector<int> old;  // previously filled vertices outside the separator
      for (int v : filled)
        if (!std::binary_search(sep.begin(), sep.end(), v)) old.push_back(v);

      if (!sep.empty() && !old.empty() && !fresh.empty()) {
        const SymMatrix wsep = principal_submatrix(x, sep);
        const SymMatrix winv = pinv_sym(wsep, tol);
        // X[old,fresh] = X[old,sep] pinv(X[sep,sep]) X[sep,fresh]
        for (int u : old) {
          for (int v : fresh) {
            double acc = 0.0;
            for (size_t a = 0; a < sep.size(); ++a)
              for (size_t c = 0; c < sep.size(); ++c)
                acc += x(u, sep[a]) * winv(static_cast<int>(a), static_cast<int>(c)) *
                       x(sep[c], v);
            x.set(u, v, acc);
          }
        }
      }
      for (int v : fresh) filled.push_back(v);
      std::sort(filled.begin(), filled.end());
      for (int t : nbr[child]) queue.push_back({child, t});
    }
  }
  return x;
}

int ConvertedLp::total_vars() const {
  int n = 0;
  for (const auto& s : sets) n += static_cast<int>(s.size());
  return n;
}

int ConvertedLp::var_offset(int s) const {
  int off = 0;
  for (int k = 0; k < s; ++k) off += static_cast<int>(sets[k].size());
  return off;
}

ConvertedLp convert_lp(const LpProblem& p, const std::vector<std::vector<int>>& sets,
                       const std::vector<std::pair<int, int>>& tree_edges, bool bound_once) {
  ConvertedLp c;
  c.sets = sets;
  c.tree_edges = tree_edges;
  c.m = p.m;
  c.b = p.b;
  c.bound_once = bound_once;

  auto local_pos = [&](int s, int i) {
    const auto& st = c.sets[s];
    for (size_t k = 0; k < st.size(); ++k)
      if (st[k] == i) return static_cast<int>(k);
    return -1;
  };
  auto owner = [&](int i) {
    for (size_t s = 0; s < c.sets.size(); ++s)
      if (local_pos(static_cast<int>(s), i) >= 0) return static_cast<int>(s);
    return -1;
  };

  c.asp.assign(sets.size(), {});
  for (size_t s = 0; s < sets.size(); ++s)
    c.asp[s].assign(p.m + 1, std::vector<double>(sets[s].size(), 0.0));

  for (int cons = 0; cons <= p.m; ++cons) {
    for (int i = 0; i < p.n; ++i) {
      if (p.a[cons][i] == 0.0) continue;
      const int s = owner(i);
      if (s < 0)
        throw CoverageError("variable " + std::to_string(i + 1) + " is covered by no set");
      c.asp[s][cons][local_pos(s, i)] = p.a[cons][i];
    }
  }

  for (const auto& [s, t] : tree_edges) {
    std::vector<int> ss = sets[s], tt = sets[t];
    std::sort(ss.begin(), ss.end());
    std::sort(tt.begin(), tt.end());
    std::vector<int> shared;
    std::set_intersection(ss.begin(), ss.end(), tt.begin(), tt.end(),
                          std::back_inserter(shared));
    for (int i : shared) c.links.push_back({s, t, i});
  }

  for (size_t s = 0; s < sets.size(); ++s) {
    for (size_t k = 0; k < sets[s].size(); ++k) {
      if (bound_once && owner(sets[s][k]) != static_cast<int>(s)) continue;
      c.bounds.push_back({static_cast<int>(s), static_cast<int>(k)});
    }
  }
  return c;
}

std::vector<std::vector<double>> lp_active_matrix(const ConvertedLp& c,
                                                  const std::vector<std::vector<double>>& xs,
                                                  double tol) {
  const int nv = c.total_vars();
  std::vector<std::vector<double>> rows;

  for (int cons = 1; cons <= c.m; ++cons) {
    std::vector<double> row(nv, 0.0);
    for (size_t s = 0; s < c.sets.size(); ++s)
      for (size_t k = 0; k < c.sets[s].size(); ++k)
        row[c.var_offset(static_cast<int>(s)) + k] = c.asp[s][cons][k];
    rows.push_back(std::move(row));
  }

  auto local_pos = [&](int s, int i) {
    const auto& st = c.sets[s];
    for (size_t k = 0; k < st.size(); ++k)
      if (st[k] == i) return static_cast<int>(k);
    return -1;
  };
  for (const auto& link : c.links) {
    std::vector<double> row(nv, 0.0);
    row[c.var_offset(link.s) + local_pos(link.s, link.i)] = 1.0;
    row[c.var_offset(link.t) + local_pos(link.t, link.i)] = -1.0;
    rows.push_back(std::move(row));
  }

  for (const auto& [s, k] : c.bounds) {
    if (std::abs(xs[s][k]) > tol) continue;
    std::vector<double> row(nv, 0.0);
    row[c.var_offset(s) + k] = 1.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cliquesdp
