"""Exact solvers for minimum-weight odd paths under conservative weights."""

from .conservative import ConservativenessReport, validate_conservative
from .errors import (CertificateError, ConservativenessViolationError,
                     ConstraintCoverageError, InvalidEndpointError,
                     InvalidInputError, OddPathError, ParameterTooLargeError,
                     ParseError, StructuralError, WrongSolverError)
from .forest import (Leap, NegativeForest, NegativeTree, enumerate_leaps,
                     negative_forest, redistribute_weights, tree_path)
from .fpt import (ParityGuess, UniversalSetFamily, build_universal_set,
                  negative_matching_parameter, solve_fpt_derandomized,
                  solve_fpt_negedges, solve_fpt_randomized, verify_universal)
from .graph import (Edge, WeightedGraph, Weight, graph_from_json,
                    graph_from_text, graph_to_json, graph_to_text,
                    parse_weight)
from .matching import (FOUND, INFEASIBLE, MatchingCertificate,
                       PerfectMatchingResult, TJoinResult,
                       maximum_matching_size, min_weight_perfect_matching,
                       min_weight_perfect_matching_edges, min_weight_t_join,
                       validate_certificate)
from .parity import (EMPTY_CONSTRAINTS, OddPathSolution, ParityConstraints,
                     parity_changing_leap_min, shortest_even_path_nonneg,
                     shortest_odd_path_nonneg, solve_spcop,
                     verify_odd_path_solution)
from .tree_solver import (DisjointPathsResult, assemble_second_type,
                          second_type_candidates, solve_negative_tree,
                          stdp_via_sop, two_disjoint_paths)
from .treewidth import (NiceDecomposition, TreeDecomposition,
                        build_decomposition, definitional_check,
                        exact_treewidth, make_nice, reduce_representatives,
                        solve_treewidth, validate_decomposition,
                        validate_nice)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
