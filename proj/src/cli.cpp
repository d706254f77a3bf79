#include "cliquesdp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cliquesdp/errors.hpp"
#include "cliquesdp/jsonio.hpp"

namespace cliquesdp {

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCoverage = 3;
constexpr int kExitSolution = 4;
constexpr int kExitAssumption = 5;
constexpr int kExitHypothesis = 6;
constexpr int kExitSolver = 7;

struct InputArgs {
  bool builtin = false;
  std::string path;
};

SdpProblem load_problem(const InputArgs& in) {
  if (in.builtin) return builtin_example();
  if (in.path.empty()) throw ParseError(0, "no input: pass --builtin or --input PATH");
  std::ifstream f(in.path);
  if (!f) throw ParseError(0, "cannot open " + in.path);
  std::ostringstream text;
  text << f.rdbuf();
  return parse_sdpa(text.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

void emit_report(const json& report, const std::string& out_path) {
  if (out_path.empty())
    std::cout << report.dump(2) << "\n";
  else
    write_text(out_path, report.dump(2) + "\n");
}

IpmConfig solver_config(double tol) {
  IpmConfig cfg;
  cfg.tol_gap = tol;
  cfg.tol_feas = tol;
  return cfg;
}

int cmd_convert(const InputArgs& in, const std::string& out) {
  const SdpProblem p = load_problem(in);
  const SparsityGraph g = aggregate_sparsity(p);
  const ChordalityResult chordality = is_chordal(g);
  const CliqueDecomposition d = decompose(g);
  const ConvertedSdp c = convert_sdp(p, d);

  json report = {{"schema_version", 1},
                 {"input", in.builtin ? "builtin" : in.path},
                 {"n", p.n},
                 {"m", p.m},
                 {"aggregate", to_json(g)},
                 {"chordal", chordality.chordal},
                 {"decomposition", to_json(d)},
                 {"blocks", c.block_dims},
                 {"overlap_constraints", static_cast<int>(c.overlaps.size())},
                 {"nbar", c.nbar}};
  // Keep the cmd_convert contract flat: cliques/fill at top level too.
  report["cliques"] = report["decomposition"]["cliques"];
  report["fill"] = report["decomposition"]["fill"];

  const std::string sdpa = c.emit_sdpa();
  if (out.empty()) {
    report["sdpa"] = sdpa;
    emit_report(report, "");
  } else {
    write_text(out + ".dat-s", sdpa);
    report["sdpa_path"] = out + ".dat-s";
    emit_report(report, out + ".json");
    std::cerr << "wrote " << out << ".dat-s and " << out << ".json\n";
  }
  return 0;
}

int cmd_analyze(const InputArgs& in, bool solve, const std::string& solution_path,
                const std::string& out, double tol) {
  const SdpProblem p = load_problem(in);
  const CliqueDecomposition d = decompose(aggregate_sparsity(p));
  const ConvertedSdp c = convert_sdp(p, d);

  json report = {{"schema_version", 1}, {"input", in.builtin ? "builtin" : in.path}, {"tol", tol}};

  SymMatrix x;
  BlockSolution bs;
  if (solve) {
    const IpmResult orig = ipm_solve(BlockSdp::from_original(p));
    const IpmResult conv = ipm_solve(BlockSdp::from_converted(c));
    if (orig.status != IpmStatus::Converged || conv.status != IpmStatus::Converged) {
      std::cerr << "solver failed: original " << to_string(orig.status) << ", converted "
                << to_string(conv.status) << "\n";
      return kExitSolver;
    }
    x = orig.X[0];
    bs = to_block_solution(c, conv);
    report["solve"] = {{"original", solve_summary(orig)}, {"converted", solve_summary(conv)}};
  } else if (!solution_path.empty()) {
    std::ifstream f(solution_path);
    if (!f) throw InfeasibleInput("cannot open solution file " + solution_path);
    json sol = json::parse(f, nullptr, true, true);
    if (sol.contains("original") && sol["original"].contains("X"))
      x = sym_from_json(sol["original"]["X"]);
    else if (sol.contains("X"))
      x = sym_from_json(sol["X"]);
    else
      throw InfeasibleInput("solution file carries no X matrix");
    bs = restrict_solution(x, d);
  } else {
    throw InfeasibleInput("no solution: pass --solve or --solution PATH");
  }

  report["original"] = to_json(primal_nondegeneracy_original(p, x, tol));
  report["converted"] = to_json(primal_nondegeneracy_conversion(c, bs, tol));
  emit_report(report, out);
  return 0;
}

int cmd_certify(const InputArgs& in, std::string edge_arg, int delta_samples,
                const std::string& out, double tol) {
  const SdpProblem p = load_problem(in);
  const CliqueDecomposition d = decompose(aggregate_sparsity(p));
  const ConvertedSdp c = convert_sdp(p, d);

  int s = -1, t = -1;
  if (edge_arg.empty()) {
    if (d.tree_edges.empty()) throw AssumptionViolated("decomposition has no tree edges");
    s = d.tree_edges[0].first;
    t = d.tree_edges[0].second;
  } else {
    std::replace(edge_arg.begin(), edge_arg.end(), ',', ' ');
    std::istringstream es(edge_arg);
    if (!(es >> s >> t) || s < 1 || t < 1 || s > d.clique_count() || t > d.clique_count())
      throw ParseError(0, "bad --edge, expected s,t with 1-based clique indices");
    --s;
    --t;
    if (s > t) std::swap(s, t);
  }

  // Solve the conversion form, then snap the iterate onto the optimal face:
  // with non-unique multipliers the raw dual accuracy is limited by the very
  // ill-conditioning this tool demonstrates.
  IpmConfig cfg = solver_config(1e-9);
  cfg.max_iter = 300;
  const IpmResult conv = ipm_solve(BlockSdp::from_converted(c), cfg);
  if (conv.status != IpmStatus::Converged) {
    std::cerr << "solver failed: " << to_string(conv.status) << "\n";
    return kExitSolver;
  }
  const BlockSolution bs = polish_solution(c, to_block_solution(c, conv), tol);

  const Certificate cert = degeneracy_certificate(c, bs, s, t, tol);
  const MultiplierFamily fam = multiplier_family(c, bs, cert, tol);

  json samples = json::array();
  const int k = std::max(2, delta_samples);
  for (int q = 0; q < k; ++q) {
    const double delta = fam.gamma * q / (k - 1);
    const KktReport rep = verify_kkt_conversion(c, fam.member(delta), tol);
    json entry = to_json(rep);
    entry["delta"] = delta;
    samples.push_back(entry);
  }

  json report = {{"schema_version", 1},
                 {"input", in.builtin ? "builtin" : in.path},
                 {"edge", {s + 1, t + 1}},
                 {"certificate", to_json(cert)},
                 {"gamma", fam.gamma},
                 {"minus_block", fam.minus_block + 1},
                 {"base_kkt", to_json(verify_kkt_conversion(c, bs, tol))},
                 {"family_samples", samples},
                 {"solve", solve_summary(conv)}};
  emit_report(report, out);
  return 0;
}

int cmd_solve(const InputArgs& in, const std::string& form, const std::string& trace_path,
              const std::string& out, double tol) {
  const SdpProblem p = load_problem(in);
  const bool want_orig = form == "original" || form == "both";
  const bool want_conv = form == "converted" || form == "both";
  if (!want_orig && !want_conv)
    throw ParseError(0, "bad --form, expected original|converted|both");

  json report = {{"schema_version", 1},
                 {"input", in.builtin ? "builtin" : in.path},
                 {"form", form}};
  bool failed = false;

  auto trace_file = [&](const std::string& tag) {
    if (trace_path.empty()) return std::string();
    if (form != "both") return trace_path;
    const auto dotpos = trace_path.rfind('.');
    if (dotpos == std::string::npos) return trace_path + "." + tag;
    return trace_path.substr(0, dotpos) + "." + tag + trace_path.substr(dotpos);
  };

  IpmResult orig, conv;
  if (want_orig) {
    orig = ipm_solve(BlockSdp::from_original(p), solver_config(tol));
    json summary = solve_summary(orig);
    summary["X"] = to_json(orig.X[0]);
    summary["zeta"] = orig.y;
    summary["S"] = to_json(orig.S[0]);
    report["original"] = summary;
    if (!trace_path.empty()) write_text(trace_file("original"), orig.trace.to_csv());
    failed = failed || orig.status != IpmStatus::Converged;
  }
  ConvertedSdp c;
  if (want_conv) {
    const CliqueDecomposition d = decompose(aggregate_sparsity(p));
    c = convert_sdp(p, d);
    conv = ipm_solve(BlockSdp::from_converted(c), solver_config(tol));
    json summary = solve_summary(conv);
    json blocks = json::array();
    for (const auto& b : conv.X) blocks.push_back(to_json(b));
    summary["X_blocks"] = blocks;
    const BlockSolution bs = to_block_solution(c, conv);
    summary["zeta"] = bs.zeta;
    summary["xi"] = bs.xi;
    if (conv.status == IpmStatus::Converged)
      summary["X"] = to_json(psd_complete(bs, d, 1e-6));
    report["converted"] = summary;
    if (!trace_path.empty()) write_text(trace_file("converted"), conv.trace.to_csv());
    failed = failed || conv.status != IpmStatus::Converged;
  }

  if (form == "both" && !failed) {
    report["slopes"] = {{"original_slope", condition_slope(orig.trace)},
                        {"converted_slope", condition_slope(conv.trace)}};
  }

  emit_report(report, out);
  if (failed) {
    std::cerr << "solver failure (trace still written)\n";
    return kExitSolver;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Maximal-clique decomposition of sparse SDPs with degeneracy diagnostics"};
  app.require_subcommand(1);

  InputArgs in;
  std::string out, form = "both", trace, edge, solution;
  double tol_analyze = 1e-6, tol_solve = 1e-8, tol_certify = 1e-6;
  bool do_solve = false;
  int delta_samples = 5;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_flag("--builtin", in.builtin, "use the built-in 4x4 demo problem");
    cmd->add_option("--input", in.path, "sparse SDPA (.dat-s) input file");
    cmd->add_option("--out", out, "output path (default: report to stdout)");
  };

  CLI::App* conv = app.add_subcommand("convert", "clique-decompose and emit the conversion SDP");
  add_input(conv);

  CLI::App* ana = app.add_subcommand("analyze", "primal nondegeneracy of both formulations");
  add_input(ana);
  ana->add_flag("--solve", do_solve, "solve both formulations first");
  ana->add_option("--solution", solution, "solution JSON produced by `solve`");
  ana->add_option("--tol", tol_analyze, "analysis tolerance (default 1e-6)");

  CLI::App* cert = app.add_subcommand("certify", "degeneracy certificate and multiplier family");
  add_input(cert);
  cert->add_option("--edge", edge, "clique-tree edge s,t (1-based; default: first edge)");
  cert->add_option("--delta-samples", delta_samples, "number of delta samples in [0,gamma]");
  cert->add_option("--tol", tol_certify, "certificate tolerance (default 1e-6)");

  CLI::App* sol = app.add_subcommand("solve", "interior-point solve with conditioning trace");
  add_input(sol);
  sol->add_option("--form", form, "original|converted|both (default both)");
  sol->add_option("--trace", trace, "write per-iteration CSV trace here");
  sol->add_option("--tol", tol_solve, "solver gap/feasibility tolerance (default 1e-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (conv->parsed()) return cmd_convert(in, out);
    if (ana->parsed()) return cmd_analyze(in, do_solve, solution, out, tol_analyze);
    if (cert->parsed()) return cmd_certify(in, edge, delta_samples, out, tol_certify);
    if (sol->parsed()) return cmd_solve(in, form, trace, out, tol_solve);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DimensionError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CoverageError& e) {
    std::cerr << "coverage error: " << e.what() << "\n";
    return kExitCoverage;
  } catch (const InfeasibleInput& e) {
    std::cerr << "solution error: " << e.what() << "\n";
    return kExitSolution;
  } catch (const AssumptionViolated& e) {
    std::cerr << "assumption violated: " << e.what() << "\n";
    return kExitAssumption;
  } catch (const HypothesisFailed& e) {
    std::cerr << "hypothesis failed: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cliquesdp
