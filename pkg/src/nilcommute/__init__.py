"""Exact computations with pairs of commuting nilpotent matrices.

Submodules: ``partitions`` (combinatorics), ``exactla`` (linear algebra over
F_p), ``commutant`` (centralizer of a Jordan matrix and Q(P) sampling),
``algebra`` (the local algebra K[A,B]), ``harness`` (verification suites)
and ``cli``.
"""

from .algebra import (
    INFINITY,
    CommutingPair,
    algebra_basis,
    generic_pencil_partition,
    hilbert_drop_check,
    hilbert_function,
    is_cyclic,
    mcninch_pair,
    monomial_pair,
    multiplication_matrix,
    pencil_partition,
    socle,
    specialize_example_pair,
)
from .commutant import (
    InconclusiveSampling,
    TheoremViolation,
    centralizer_basis,
    check_power_rank_bound,
    estimate_qp,
    sample_nilpotent,
    string_witness,
)
from .exactla import (
    DEFAULT_PRIME,
    FieldMatrix,
    PrimeField,
    commutes,
    is_nilpotent,
    jordan_matrix,
    jordan_partition,
    rank,
    span_dimension,
)
from .partitions import (
    HilbertFunction,
    Order,
    Partition,
    StringDecomposition,
    diagonal_lengths,
    dominance_cmp,
    dual,
    enumerate_partitions,
    h_of_p,
    hilbert_cmp,
    is_stable,
    p_of_h,
    power_partition,
    qp_predicted,
    repeat_partition,
    string_stats,
    tilde,
)

__version__ = "0.1.0"
