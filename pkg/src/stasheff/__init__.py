"""Metric-tree models of associahedra and multiplihedra, their grafting
operads and level-trees, and exact arithmetic for A_n-triviality of SU(2)
gauge groups over S^4."""

from .trees import (
    DomainError, DomainMismatchError, GrammarError, PaintedMergeError, Tree,
    encode, enumerate_binary_painted, enumerate_binary_unpainted,
    enumerate_painted_shapes, enumerate_planar_trees, equal_as_points,
    is_metric, is_painted, leaf_count, max_internal_length, parse,
    reduce_tree, validate,
)
from .grafting import (
    graft_jk, graft_k, graft_kj, is_level_tree, level_witness,
    verify_graft_relations,
)
from .complexes import (
    CellComplex, build_complex, build_h, build_j, build_k, build_l,
    boundary_squares_to_zero, euler_characteristic, export_complex,
    f_vector, homology_ranks, import_complex, matrix_rank_exact,
)
from .gauge import (
    ALL_PRIMES, NO_PRIMES, PrimeSet, TrivialityVerdict, chern_oracle,
    decide_triviality, epsilon_congruence, epsilon_sequence, in_local_ring,
    local_unit_class, lower_bound_types, prime_pi, triviality_divisor,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
