from collections import defaultdict
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import brute_partitions, ferrers_cells
from nilcommute.harness import hilbert_functions_direct
from nilcommute.partitions import (
    HilbertFunction,
    Order,
    Partition,
    StringDecomposition,
    diagonal_lengths,
    dominance_cmp,
    dominance_max,
    dual,
    enumerate_partitions,
    h_of_p,
    hilbert_cmp,
    hilbert_functions,
    hilbert_min,
    is_hilbert_function,
    is_stable,
    is_string,
    p_of_h,
    power_partition,
    qp_predicted,
    repeat_partition,
    string_stats,
    tilde,
)

partitions = st.lists(st.integers(1, 9), max_size=7).map(Partition)
nonempty_partitions = st.lists(st.integers(1, 9), min_size=1, max_size=7).map(Partition)


# -- types ---------------------------------------------------------------------


def test_partition_is_canonical():
    assert Partition([1, 3, 2]) == (3, 2, 1)
    assert Partition(()).n == 0
    assert str(Partition([2, 5, 4, 2])) == "5,4,2,2"
    assert Partition.parse("2,2,4,5") == (5, 4, 2, 2)
    with pytest.raises(ValueError):
        Partition([3, 0])


@pytest.mark.parametrize("H", [(1,), (1, 1, 1), (1, 2, 1, 1), (1, 2, 3, 2, 1), (1, 2, 2, 2, 1)])
def test_valid_hilbert_functions(H):
    assert is_hilbert_function(H)
    assert HilbertFunction(H).n == sum(H)


@pytest.mark.parametrize("H", [(), (2,), (1, 3), (1, 2, 1, 2), (1, 1, 2), (1, 2, 3, 4, 5, 6, 0)])
def test_invalid_hilbert_functions(H):
    assert not is_hilbert_function(H)
    with pytest.raises(ValueError):
        HilbertFunction(H)


def test_hilbert_function_order_and_socle_degree():
    H = HilbertFunction((1, 2, 3, 2, 1))
    assert (H.order, H.socle_degree) == (3, 4)
    assert HilbertFunction((1, 1, 1)).order == 1


# -- dual, diagonals -----------------------------------------------------------


@pytest.mark.parametrize(
    "P, expected",
    [((6, 4, 3), (3, 3, 3, 2, 1, 1)), ((1,), (1,)), ((5, 4, 2, 2), (4, 4, 2, 2, 1)), ((), ())],
)
def test_dual_examples(P, expected):
    assert dual(P) == expected


@pytest.mark.parametrize(
    "P, expected", [((5, 3, 1), (1, 2, 3, 2, 1)), ((3, 1, 1), (1, 2, 2)), ((6,), (1,) * 6)]
)
def test_diagonal_length_examples(P, expected):
    assert diagonal_lengths(P) == expected


@given(partitions)
def test_dual_matches_transposed_diagram(P):
    cells = {(c, r) for r, c in ferrers_cells(P)}
    assert sorted(ferrers_cells(dual(P))) == sorted(cells)
    assert dual(dual(P)) == P


@given(partitions)
def test_diagonal_lengths_count_antidiagonal_cells(P):
    counts = defaultdict(int)
    for r, c in ferrers_cells(P):
        counts[r + c] += 1
    assert diagonal_lengths(P) == tuple(counts[d] for d in range(len(counts)))
    assert sum(diagonal_lengths(P)) == P.n


# -- P(H) and its inverse ------------------------------------------------------


@pytest.mark.parametrize(
    "H, expected",
    [((1, 2, 3, 2, 1), (5, 3, 1)), ((1, 2, 3, 4, 3, 3, 2, 1), (8, 6, 4, 1)), ((1, 1, 1), (3,))],
)
def test_p_of_h_examples(H, expected):
    assert p_of_h(H) == expected


def test_p_of_h_rejects_invalid():
    with pytest.raises(ValueError):
        p_of_h((1, 3, 1))


@pytest.mark.parametrize(
    "P, expected", [((6, 4, 3), (1, 2, 3, 3, 3, 1)), ((6, 4, 2, 1), (1, 2, 3, 4, 2, 1)), ((1,), (1,))]
)
def test_h_of_p_examples(P, expected):
    assert h_of_p(P) == expected


def test_h_of_p_rejects_repeated_parts():
    with pytest.raises(ValueError):
        h_of_p((3, 1, 1))


@pytest.mark.parametrize("n", range(1, 13))
def test_ph_bijection_exhaustive(n):
    distinct = [P for P in enumerate_partitions(n) if P.has_distinct_parts()]
    for P in distinct:
        assert p_of_h(h_of_p(P)) == P
    direct = sorted(hilbert_functions_direct(n))
    assert sorted(map(tuple, hilbert_functions(n))) == direct
    assert len(direct) == len(distinct)
    for H in direct:
        assert h_of_p(p_of_h(H)) == H
        assert diagonal_lengths(p_of_h(H)) == H


@pytest.mark.parametrize("n", range(1, 13))
def test_ph_reverses_order_exhaustive(n):
    distinct = [P for P in enumerate_partitions(n) if P.has_distinct_parts()]
    for P, P2 in combinations(distinct, 2):
        d = dominance_cmp(P, P2)
        h = hilbert_cmp(h_of_p(P), h_of_p(P2))
        assert (d is Order.GREATER) == (h is Order.LESS)
        assert (d is Order.LESS) == (h is Order.GREATER)


@pytest.mark.parametrize("n", range(1, 13))
def test_ph_is_maximum_of_its_diagonal_class(n):
    groups = defaultdict(list)
    for P in enumerate_partitions(n):
        groups[diagonal_lengths(P)].append(P)
    for H, members in groups.items():
        assert is_hilbert_function(H)
        assert dominance_max(members) == p_of_h(H)


def test_diagonal_class_example():
    members = {P for P in enumerate_partitions(9) if diagonal_lengths(P) == (1, 2, 3, 2, 1)}
    assert {(5, 3, 1), (4, 2, 1, 1, 1), (3, 3, 3)} <= members
    assert dominance_cmp((4, 2, 1, 1, 1), (3, 3, 3)) is Order.INCOMPARABLE
    assert dominance_max(members) == (5, 3, 1)


# -- orders --------------------------------------------------------------------


def test_dominance_examples():
    assert dominance_cmp((6, 4, 3), (6, 4, 2, 1)) is Order.GREATER
    assert dominance_cmp((4, 2, 1, 1, 1), (3, 3, 3)) is Order.INCOMPARABLE
    assert dominance_cmp((3, 1), (3, 1)) is Order.EQUAL
    with pytest.raises(ValueError):
        dominance_cmp((3,), (2,))


def test_hilbert_cmp_examples():
    assert hilbert_cmp((1, 1, 1, 1, 1), (1, 2, 1, 1)) is Order.LESS
    assert hilbert_cmp((1, 2, 1, 1), (1, 2, 2)) is Order.LESS
    assert hilbert_cmp((1, 2, 3, 3, 3, 1), (1, 2, 3, 4, 2, 1)) is Order.LESS
    assert hilbert_cmp((1, 2, 2), (1, 2, 2)) is Order.EQUAL
    with pytest.raises(ValueError):
        hilbert_cmp((1, 1), (1, 2))


@pytest.mark.parametrize("n", range(1, 13))
def test_dual_reverses_dominance(n):
    parts = list(enumerate_partitions(n))
    flip = {Order.GREATER: Order.LESS, Order.LESS: Order.GREATER}
    for P, P2 in combinations(parts, 2):
        c = dominance_cmp(P, P2)
        assert dominance_cmp(dual(P), dual(P2)) is flip.get(c, c)


def test_extrema_helpers():
    assert dominance_max([(3, 1), (2, 2), (4,)]) == (4,)
    assert dominance_max([(4, 1, 1), (3, 3)]) is None
    assert hilbert_min([(1, 2, 1, 1), (1, 1, 1, 1, 1)]) == (1, 1, 1, 1, 1)


# -- powers, repetition --------------------------------------------------------


@pytest.mark.parametrize("i, expected", [(2, (4, 3)), (3, (3, 2, 2)), (4, (2, 2, 2, 1)), (9, (1,) * 7)])
def test_power_of_single_block(i, expected):
    assert power_partition((7,), i) == expected


def test_power_examples():
    assert power_partition((5, 4), 2) == (3, 2, 2, 2)
    assert power_partition((3, 1, 1), 1) == (3, 1, 1)
    with pytest.raises(ValueError):
        power_partition((3,), 0)


@given(partitions, st.integers(1, 10))
def test_power_partition_preserves_size(P, i):
    Q = power_partition(P, i)
    assert Q.n == P.n
    assert len(Q) == sum(min(i, x) for x in P)


def test_repeat_partition():
    assert repeat_partition(2, (3, 1, 1)) == (3, 3, 1, 1, 1, 1)
    assert repeat_partition(1, (4, 2)) == (4, 2)
    assert repeat_partition(3, (2,)) == (2, 2, 2)


# -- strings -------------------------------------------------------------------


def test_string_stats_examples():
    st1 = string_stats((5, 4, 4, 3, 2))
    assert (st1.r, st1.s) == (2, 3)
    assert StringDecomposition(((5, 4, 4), (3, 2))) in st1.decompositions
    assert string_stats((8, 7, 7, 7, 5, 5, 4, 2, 1)).r == 3
    st3 = string_stats((5, 4, 3, 2, 1))
    assert st3.r == 3 and len(st3.decompositions) >= 2


def brute_min_strings(P):
    """Minimal number of contiguous string blocks, by trying every cut set."""
    t = len(P)
    best = t
    for k in range(t):
        for cuts in combinations(range(1, t), k):
            bounds = (0, *cuts, t)
            if all(is_string(P[a:b]) for a, b in zip(bounds, bounds[1:])):
                best = min(best, k + 1)
    return best


@given(nonempty_partitions)
def test_string_stats_against_brute_force(P):
    st_ = string_stats(P)
    assert st_.r == brute_min_strings(P)
    for d in st_.decompositions:
        assert len(d.blocks) == st_.r
        assert all(is_string(b) for b in d.blocks)
        assert tuple(x for b in d.blocks for x in b) == tuple(P)
        assert tilde(d).n == P.n
    assert (st_.s == 1) == is_stable(P)


def test_tilde_examples():
    assert tilde(((3, 3, 3), (2, 2, 1))) == (9, 5)
    assert tilde(((3, 3, 3, 2, 2), (1,))) == (13, 1)
    assert tilde(((2, 2),)) == (4,)


def test_stability_examples():
    assert not is_stable((3, 1, 1))
    assert is_stable((7,))
    assert is_stable((8, 6, 4, 1))
    assert is_stable(())


@pytest.mark.parametrize(
    "P, expected",
    [((5, 4, 2, 2), (9, 4)), ((8, 7, 7, 5, 5, 4, 2, 2, 2), (22, 14, 6)), ((5, 3, 1), (5, 3, 1)), ((5, 4, 3, 2, 1), None)],
)
def test_qp_predicted(P, expected):
    assert qp_predicted(P) == expected


# -- enumeration ---------------------------------------------------------------


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (4, 5), (7, 15), (10, 42)])
def test_enumeration_counts(n, count):
    got = list(enumerate_partitions(n))
    assert len(got) == count
    assert set(got) == brute_partitions(n)
    assert got == sorted(got, reverse=True)


def test_enumeration_bound():
    with pytest.raises(ValueError):
        next(enumerate_partitions(41))
    assert sum(1 for _ in enumerate_partitions(12, bound=12)) == 77
