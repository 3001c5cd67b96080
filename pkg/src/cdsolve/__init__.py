"""Exact Cluster Deletion: polynomial solvers for interval, split,
1-split-twin and threshold-twin graphs, recognizers, twin reductions, a
hardness gadget and a brute-force oracle."""
from .graph import (
    PATTERNS, Clustering, ClusteringReport, Graph, InputError, are_false_twins, are_true_twins,
    find_induced, induced_subgraph, is_cluster_graph, true_twin_classes, verify_clustering,
)
from .chordal import chordless_cycle, is_chordal, lex_bfs, maximal_cliques, maximum_clique, perfect_elimination_order
from .interval import (
    CliquePath, IntervalModel, NotInterval, asteroidal_triple, b_sorted_order, clique_path_from_intervals,
    range_extrema, recognize_interval,
)
from .dp import (
    DPInvariantError, GuardedContext, IntervalDP, PairIndices, B_set, candidate_cluster, crosses,
    enumerate_choices, guarded_context, partition_UM, solve_interval_cd,
)
from .oracle import WeightedSplitInstance, exact_cd, exact_cd_twins_forced, exact_ewcd
from .classes import (
    FORBIDDEN_SPLIT_TWIN, NotSplit, OneSplitTwinStructure, SplitPartition, SplitTwinPartition, Witness,
    forbidden_check_split_twin, greedy_max_clique_clustering, is_p4_free, recognize_one_split_twin,
    recognize_split_twin, recognize_threshold_twin, solve_one_split_twin_cd, solve_split_cd,
    solve_threshold_twin_cd, split_partition,
)
from .gadgets import (
    GadgetMap, RandomSpec, contract_true_twins, ewcd_to_split_twin, generate, map_solution_back,
    reduce_false_twins,
)
from .io import GraphDocument, ParseError, parse_clustering, parse_graph, serialize_clustering, serialize_graph

__version__ = "0.1.0"
