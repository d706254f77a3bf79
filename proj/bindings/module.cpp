#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cliquesdp/convert.hpp"
#include "cliquesdp/degeneracy.hpp"
#include "cliquesdp/errors.hpp"
#include "cliquesdp/graph.hpp"
#include "cliquesdp/ipm.hpp"
#include "cliquesdp/linalg.hpp"
#include "cliquesdp/model.hpp"

namespace py = pybind11;
using namespace cliquesdp;

namespace {

SymMatrix sym_from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> data;
  data.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw InvalidMatrix("matrix rows must be square");
    data.insert(data.end(), row.begin(), row.end());
  }
  return SymMatrix(n, std::move(data));
}

std::vector<std::vector<std::vector<double>>> blocks_out(const std::vector<SymMatrix>& blocks) {
  std::vector<std::vector<std::vector<double>>> out;
  for (const auto& b : blocks) out.push_back(b.rows());
  return out;
}

std::vector<std::vector<int>> cliques_1based(const CliqueDecomposition& d) {
  std::vector<std::vector<int>> out;
  for (const auto& c : d.cliques) {
    std::vector<int> row;
    for (int v : c) row.push_back(v + 1);
    out.push_back(std::move(row));
  }
  return out;
}

struct PySolveResult {
  IpmResult result;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Clique decomposition of sparse SDPs with degeneracy diagnostics";

  py::register_exception<Error>(m, "CliqueSdpError");

  py::class_<SparsityGraph>(m, "SparsityGraph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             SparsityGraph g(n);
             for (const auto& [i, j] : edges) g.add_edge(i - 1, j - 1);
             return g;
           }),
           py::arg("n"), py::arg("edges"))
      .def_readonly("n", &SparsityGraph::n)
      .def_property_readonly("edges",
                             [](const SparsityGraph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& [i, j] : g.edges) out.push_back({i + 1, j + 1});
                               return out;
                             })
      .def("is_chordal", [](const SparsityGraph& g) { return is_chordal(g).chordal; });

  py::class_<CliqueDecomposition>(m, "CliqueDecomposition")
      .def_readonly("n", &CliqueDecomposition::n)
      .def_property_readonly("cliques", &cliques_1based)
      .def_property_readonly("fill_edges",
                             [](const CliqueDecomposition& d) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& [i, j] : d.fill_edges)
                                 out.push_back({i + 1, j + 1});
                               return out;
                             })
      .def_property_readonly("tree_edges",
                             [](const CliqueDecomposition& d) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& [s, t] : d.tree_edges)
                                 out.push_back({s + 1, t + 1});
                               return out;
                             })
      .def_property_readonly("peo", [](const CliqueDecomposition& d) {
        std::vector<int> out;
        for (int v : d.peo) out.push_back(v + 1);
        return out;
      });

  py::class_<SdpProblem>(m, "SdpProblem")
      .def_readonly("n", &SdpProblem::n)
      .def_readonly("m", &SdpProblem::m)
      .def_readonly("b", &SdpProblem::b)
      .def("matrix", [](const SdpProblem& p, int cons) { return p.A.at(cons).dense().rows(); },
           py::arg("p"), "Dense A_p (p = 0 is the objective)");

  py::class_<ConvertedSdp>(m, "ConvertedSdp")
      .def_readonly("block_dims", &ConvertedSdp::block_dims)
      .def_readonly("nbar", &ConvertedSdp::nbar)
      .def_property_readonly("overlap_count",
                             [](const ConvertedSdp& c) { return c.overlaps.size(); })
      .def_property_readonly("decomposition",
                             [](const ConvertedSdp& c) { return c.decomp; })
      .def("matrix",
           [](const ConvertedSdp& c, int s, int cons) { return c.Asp.at(s - 1).at(cons).rows(); },
           py::arg("s"), py::arg("p"), "Dense A_{s,p} (1-based clique index)")
      .def("emit_sdpa", &ConvertedSdp::emit_sdpa);

  py::class_<BlockSolution>(m, "BlockSolution")
      .def_property_readonly("Xs", [](const BlockSolution& b) { return blocks_out(b.Xs); })
      .def_property_readonly("Ss", [](const BlockSolution& b) { return blocks_out(b.Ss); })
      .def_readonly("zeta", &BlockSolution::zeta)
      .def_readonly("xi", &BlockSolution::xi)
      .def_readonly("has_duals", &BlockSolution::has_duals);

  py::class_<DegeneracyReport>(m, "DegeneracyReport")
      .def_readonly("nondegenerate", &DegeneracyReport::nondegenerate)
      .def_readonly("deficiency", &DegeneracyReport::deficiency)
      .def_readonly("witness", &DegeneracyReport::witness)
      .def_readonly("smallest_singular_value", &DegeneracyReport::smallest_singular_value);

  py::class_<Certificate>(m, "Certificate")
      .def_property_readonly("edge",
                             [](const Certificate& c) { return std::pair(c.s + 1, c.t + 1); })
      .def_readonly("u", &Certificate::u)
      .def_readonly("v_s", &Certificate::vs)
      .def_readonly("v_t", &Certificate::vt)
      .def_readonly("beta_hat", &Certificate::beta_hat)
      .def_property_readonly("separator", [](const Certificate& c) {
        std::vector<int> out;
        for (int v : c.separator) out.push_back(v + 1);
        return out;
      });

  py::class_<KktReport>(m, "KktReport")
      .def_readonly("stationarity", &KktReport::stationarity)
      .def_readonly("feasibility", &KktReport::feasibility)
      .def_readonly("overlap", &KktReport::overlap)
      .def_readonly("complementarity", &KktReport::complementarity)
      .def_readonly("min_eig_X", &KktReport::min_eig_x)
      .def_readonly("min_eig_S", &KktReport::min_eig_s)
      .def_readonly("pass_", &KktReport::pass);

  py::class_<MultiplierFamily>(m, "MultiplierFamily")
      .def_readonly("gamma", &MultiplierFamily::gamma)
      .def_property_readonly("minus_block",
                             [](const MultiplierFamily& f) { return f.minus_block + 1; })
      .def_readonly("certificate", &MultiplierFamily::cert)
      .def("member", &MultiplierFamily::member, py::arg("delta"));

  py::class_<PySolveResult>(m, "SolveResult")
      .def_property_readonly("status",
                             [](const PySolveResult& r) { return to_string(r.result.status); })
      .def_property_readonly("converged",
                             [](const PySolveResult& r) {
                               return r.result.status == IpmStatus::Converged;
                             })
      .def_property_readonly("objective",
                             [](const PySolveResult& r) { return r.result.primal_obj; })
      .def_property_readonly("dual_objective",
                             [](const PySolveResult& r) { return r.result.dual_obj; })
      .def_property_readonly("iterations",
                             [](const PySolveResult& r) { return r.result.iterations; })
      .def_property_readonly("mu", [](const PySolveResult& r) { return r.result.mu; })
      .def_property_readonly("X_blocks",
                             [](const PySolveResult& r) { return blocks_out(r.result.X); })
      .def_property_readonly("X", [](const PySolveResult& r) { return r.result.X.at(0).rows(); })
      .def_property_readonly("y", [](const PySolveResult& r) { return r.result.y; })
      .def_property_readonly("trace_csv",
                             [](const PySolveResult& r) { return r.result.trace.to_csv(); })
      .def_property_readonly("condition_slope", [](const PySolveResult& r) {
        return condition_slope(r.result.trace);
      });

  m.def("builtin_example", &builtin_example);
  m.def("parse_sdpa", &parse_sdpa, py::arg("text"));
  m.def("emit_sdpa", &emit_sdpa, py::arg("problem"));
  m.def("aggregate_sparsity", &aggregate_sparsity, py::arg("problem"));
  m.def("decompose", &decompose, py::arg("graph"));
  m.def("convert_sdp", &convert_sdp, py::arg("problem"), py::arg("decomposition"));
  m.def(
      "restrict_solution",
      [](const std::vector<std::vector<double>>& x, const CliqueDecomposition& d) {
        return restrict_solution(sym_from_rows(x), d);
      },
      py::arg("X"), py::arg("decomposition"));
  m.def(
      "psd_complete",
      [](const BlockSolution& bs, const CliqueDecomposition& d, double tol) {
        return psd_complete(bs, d, tol).rows();
      },
      py::arg("blocks"), py::arg("decomposition"), py::arg("tol") = 1e-8);
  m.def(
      "solve_original",
      [](const SdpProblem& p, double tol) {
        IpmConfig cfg;
        cfg.tol_gap = cfg.tol_feas = tol;
        return PySolveResult{ipm_solve(BlockSdp::from_original(p), cfg)};
      },
      py::arg("problem"), py::arg("tol") = 1e-8);
  m.def(
      "solve_converted",
      [](const ConvertedSdp& c, double tol) {
        IpmConfig cfg;
        cfg.tol_gap = cfg.tol_feas = tol;
        IpmResult r = ipm_solve(BlockSdp::from_converted(c), cfg);
        BlockSolution bs = to_block_solution(c, r);
        return std::pair(PySolveResult{std::move(r)}, std::move(bs));
      },
      py::arg("converted"), py::arg("tol") = 1e-8);
  m.def(
      "primal_nondegeneracy_original",
      [](const SdpProblem& p, const std::vector<std::vector<double>>& x, double tol) {
        return primal_nondegeneracy_original(p, sym_from_rows(x), tol);
      },
      py::arg("problem"), py::arg("X"), py::arg("tol") = 1e-8);
  m.def("primal_nondegeneracy_conversion", &primal_nondegeneracy_conversion, py::arg("converted"),
        py::arg("blocks"), py::arg("tol") = 1e-8);
  m.def(
      "certify_edge",
      [](const ConvertedSdp& c, const BlockSolution& bs, int s, int t, double tol) {
        Certificate cert = degeneracy_certificate(c, bs, s - 1, t - 1, tol);
        MultiplierFamily fam = multiplier_family(c, bs, cert, tol);
        return std::pair(std::move(cert), std::move(fam));
      },
      py::arg("converted"), py::arg("blocks"), py::arg("s"), py::arg("t"), py::arg("tol") = 1e-6);
  m.def("verify_kkt_conversion", &verify_kkt_conversion, py::arg("converted"), py::arg("blocks"),
        py::arg("tol"));
  m.def(
      "condition_slope_pair",
      [](const SdpProblem& p, double tol) {
        IpmConfig cfg;
        cfg.tol_gap = cfg.tol_feas = tol;
        const IpmResult orig = ipm_solve(BlockSdp::from_original(p), cfg);
        const ConvertedSdp c = convert_sdp(p, decompose(aggregate_sparsity(p)));
        const IpmResult conv = ipm_solve(BlockSdp::from_converted(c), cfg);
        return std::pair(condition_slope(orig.trace), condition_slope(conv.trace));
      },
      py::arg("problem"), py::arg("tol") = 1e-8);
}
