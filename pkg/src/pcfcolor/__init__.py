"""Proper conflict-free (PCF) graph coloring toolkit.

Exact solvers, randomized samplers, counting kernels, rigorous numeric
certification of the supporting inequalities, and an exact rational LP for
the fractional variant.
"""

from .colorings import (Coloring, ListAssignment, SetColoring,
                        bichromatic_paths_ok, cor16_properties,
                        is_fractional_pcf, is_pcf, is_proper,
                        is_t_conflict_free)
from .errors import FormatError, ParameterError, PcfError
from .fractional import (DualWeights, SamplerParams, best_stable_payoff,
                         chernoff_diagnostic, duality_check,
                         enumerate_stable_sets, fractional_pcf_lp,
                         round_to_ab, weighted_stable_sampler)
from .graphs import (ConflictInstance, Graph, Hypergraph,
                     degeneracy_ordering, generate, neighborhood_hypergraph,
                     star_linear_hypergraph)
from .solvers import (SolverConfig, count_pcf_colorings, exact_chi_pcf,
                      extend_reduced_coloring, greedy_pcf,
                      reduce_low_degree, rosenfeld_check, sample_pcf)
from .stirling import brute_force_stirling, pcf_sum_exact, stirling_assoc

__version__ = "0.1.0"

__all__ = [
    "Coloring", "ListAssignment", "SetColoring", "Graph", "Hypergraph",
    "ConflictInstance", "DualWeights", "SamplerParams", "SolverConfig",
    "PcfError", "ParameterError", "FormatError",
    "is_proper", "is_t_conflict_free", "is_pcf", "is_fractional_pcf",
    "bichromatic_paths_ok", "cor16_properties",
    "neighborhood_hypergraph", "star_linear_hypergraph",
    "degeneracy_ordering", "generate",
    "greedy_pcf", "exact_chi_pcf", "count_pcf_colorings", "rosenfeld_check",
    "sample_pcf", "reduce_low_degree", "extend_reduced_coloring",
    "stirling_assoc", "brute_force_stirling", "pcf_sum_exact",
    "enumerate_stable_sets", "fractional_pcf_lp", "best_stable_payoff",
    "duality_check", "weighted_stable_sampler", "round_to_ab",
    "chernoff_diagnostic",
    "__version__",
]
