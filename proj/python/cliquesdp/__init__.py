"""Maximal-clique decomposition of sparse SDPs with degeneracy diagnostics."""

from ._core import (
    BlockSolution,
    Certificate,
    CliqueDecomposition,
    ConvertedSdp,
    DegeneracyReport,
    KktReport,
    MultiplierFamily,
    SdpProblem,
    SolveResult,
    SparsityGraph,
    aggregate_sparsity,
    builtin_example,
    certify_edge,
    condition_slope_pair,
    convert_sdp,
    decompose,
    emit_sdpa,
    parse_sdpa,
    primal_nondegeneracy_conversion,
    primal_nondegeneracy_original,
    psd_complete,
    restrict_solution,
    solve_converted,
    solve_original,
    verify_kkt_conversion,
)

__all__ = [
    "BlockSolution",
    "Certificate",
    "CliqueDecomposition",
    "ConvertedSdp",
    "DegeneracyReport",
    "KktReport",
    "MultiplierFamily",
    "SdpProblem",
    "SolveResult",
    "SparsityGraph",
    "aggregate_sparsity",
    "builtin_example",
    "certify_edge",
    "condition_slope_pair",
    "convert_sdp",
    "decompose",
    "emit_sdpa",
    "parse_sdpa",
    "primal_nondegeneracy_conversion",
    "primal_nondegeneracy_original",
    "psd_complete",
    "restrict_solution",
    "solve_converted",
    "solve_original",
    "verify_kkt_conversion",
]

__version__ = "0.1.0"
