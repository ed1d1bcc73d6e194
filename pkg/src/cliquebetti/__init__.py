"""Betti numbers of clique complexes over GF(2) and a constant-query tester
for large Betti numbers."""

__version__ = "0.1.0"

from .complex import CliqueComplex, build_clique_complex, count_clique_copies, face_count
from .constructions import PlantReport, multipartite_witness, plant_large_betti
from .experiment import ExperimentSpec, run_experiment
from .gf2 import Gf2Basis, Gf2Matrix, Gf2Vector, rank_gf2
from .graph import (
    Graph,
    VertexSubset,
    apply_surgery,
    complete,
    complete_multipartite,
    cycle,
    empty,
    erdos_renyi,
    from_edge_list,
    labeled_distance,
    permutation_distance,
)
from .homology import (
    RankProfile,
    TraceStep,
    betti,
    betti_direct,
    boundary_matrix,
    incremental_trace,
    is_independent,
    rank_profile,
    simplicial_rank,
)
from .testers import (
    DeltaBound,
    TesterParams,
    TestReport,
    betti_test,
    delta_bound,
    k_face_bound_chain,
    sample_induced,
    tolerant_clique_free_test,
)
