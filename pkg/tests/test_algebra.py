import json

import numpy as np
import pytest

from nilcommute import algebra
from nilcommute.algebra import (
    INFINITY,
    CommutingPair,
    algebra_basis,
    generic_pencil_partition,
    hilbert_drop_check,
    hilbert_function,
    is_cyclic,
    jordan_types,
    mcninch_pair,
    monomial_pair,
    multiplication_matrix,
    pair_report,
    pencil_partition,
    socle,
    specialize_example_pair,
)
from nilcommute.commutant import TheoremViolation, estimate_qp, sample_nilpotent
from nilcommute.exactla import (
    PrimeField,
    jordan_matrix,
    jordan_partition,
    make_rng,
    nullspace,
    rank,
)
from nilcommute.partitions import (
    Order,
    Partition,
    dominance_cmp,
    dual,
    enumerate_partitions,
    is_hilbert_function,
    p_of_h,
)

UP_TO_8 = [P for n in range(1, 9) for P in enumerate_partitions(n)]


@pytest.fixture(scope="module")
def ex(field):
    return specialize_example_pair(field=field)


def quotient_ring_pair(field):
    """x and y acting on K[x,y]/(y^2 + x^4, xy + x^4) in the basis 1, x, x^2, x^3, x^4, y.

    Rewriting rules y^2 -> -x^4, xy -> -x^4, x^5 -> 0; columns are images.
    """
    mx = np.zeros((6, 6), dtype=np.int64)
    my = np.zeros((6, 6), dtype=np.int64)
    for k in range(4):
        mx[k + 1, k] = 1  # x^k -> x^(k+1)
    mx[4, 5] = -1  # x * y = -x^4
    my[5, 0] = 1  # 1 -> y
    my[4, 1] = -1  # y * x = -x^4
    my[4, 5] = -1  # y * y = -x^4
    return CommutingPair(field.matrix(mx), field.matrix(my))


def zero_pair(field, n):
    return CommutingPair(field.zeros(n), field.zeros(n))


def krylov_dimension(pair, v):
    """Dimension of span{A^a B^b v}, grown by closing under A and B."""
    p = pair.field.p
    vecs = [np.asarray(v) % p]
    while True:
        cur = rank(pair.field.matrix(np.array(vecs)))
        new = vecs + [pair.A.apply(w) for w in vecs] + [pair.B.apply(w) for w in vecs]
        if rank(pair.field.matrix(np.array(new))) == cur:
            return cur
        vecs = new


def socle_oracle(pair):
    """Socle dimension as {sum c_k M_k : A M = B M = 0}, bypassing multiplication matrices."""
    mats = pair.basis.matrices
    cols = [np.concatenate([(pair.A @ M).flat(), (pair.B @ M).flat()]) for M in mats]
    return len(nullspace(pair.field.matrix(np.array(cols).T)))


# -- construction --------------------------------------------------------------


def test_pair_validation(field):
    J = jordan_matrix((2, 1), field)
    with pytest.raises(ValueError):
        CommutingPair(J, field.matrix([[0, 0, 0], [0, 0, 1], [0, 0, 0]]))
    with pytest.raises(ValueError):
        CommutingPair(field.identity(2), field.zeros(2))
    with pytest.raises(ValueError):
        CommutingPair(J, PrimeField(7).zeros(3))


def test_pair_json_round_trip(ex):
    data = json.loads(json.dumps(ex.to_json()))
    assert set(data) == {"p", "A", "B"}
    back = CommutingPair.from_json(data)
    assert back.A == ex.A and back.B == ex.B
    bad = dict(data, A=[[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        CommutingPair.from_json(bad)


# -- basis and Hilbert function ------------------------------------------------


def test_basis_examples(field, ex):
    b = algebra_basis(zero_pair(field, 3))
    assert b.dim == 1 and b.exponents == ((0, 0),)
    assert ex.dim == 5
    for P in [(3, 1, 1), (4, 1), (5, 3, 2, 2)]:
        assert monomial_pair(P, field).dim == sum(P)


def test_basis_is_deg_lex_minimal(ex):
    exps = list(ex.basis.exponents)
    assert exps == sorted(exps, key=lambda e: (e[0] + e[1], e[0]))
    assert exps[:3] == [(0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize(
    "make, H",
    [
        (lambda F: specialize_example_pair(field=F), (1, 2, 1, 1)),
        (quotient_ring_pair, (1, 2, 1, 1, 1)),
        (lambda F: CommutingPair(jordan_matrix((5,), F), F.zeros(5)), (1, 1, 1, 1, 1)),
        (lambda F: mcninch_pair(3, F), (1, 2, 2, 1)),
        (lambda F: mcninch_pair(4, F), (1, 2, 2, 2, 1)),
    ],
)
def test_hilbert_function_examples(field, make, H):
    pair = make(field)
    h = hilbert_function(pair)
    assert h.values == H
    assert h.valid and h.hilbert == H
    assert sum(H) == pair.dim
    assert h.filtration[0] == pair.dim and h.filtration[-1] == 0


def test_quotient_ring_pair_is_gorenstein(field):
    pair = quotient_ring_pair(field)
    assert pair.dim == 6
    assert socle(pair).gorenstein


# -- multiplication, pencils ---------------------------------------------------


def test_multiplication_matrix_examples(field, ex):
    b = ex.basis
    assert multiplication_matrix(ex, b, field.zeros(5)).is_zero()
    assert jordan_partition(multiplication_matrix(ex, b, ex.A)) == (4, 1)
    assert jordan_partition(multiplication_matrix(ex, b, ex.B)) == (3, 1, 1)
    with pytest.raises(ValueError):
        multiplication_matrix(ex, b, jordan_matrix((5,), field))


def test_pencil_examples(field, ex):
    assert pencil_partition(ex, 0) == (4, 1)
    assert pencil_partition(ex, INFINITY) == (3, 1, 1)
    assert pencil_partition(mcninch_pair(3, field), 1) == (4, 2)
    assert pencil_partition(mcninch_pair(3, PrimeField(3)), 1) == (3, 3)
    assert pencil_partition(mcninch_pair(4, PrimeField(2)), 1) == (4, 4)


def test_generic_pencil_examples(field, ex):
    assert generic_pencil_partition(ex, 5, 0) == (4, 1) == p_of_h((1, 2, 1, 1))
    assert generic_pencil_partition(mcninch_pair(3, field), 5, 0) == (4, 2)
    assert generic_pencil_partition(mcninch_pair(4, field), 5, 0) == (5, 3)
    J = CommutingPair(jordan_matrix((6,), field), field.zeros(6))
    assert generic_pencil_partition(J, 3, 0) == (6,)


def test_generic_pencil_check(field, ex, monkeypatch):
    # over F_3 the pencil is (3,3) while P(H) = (4,2); p = 3 does not exceed the socle degree
    assert generic_pencil_partition(mcninch_pair(3, PrimeField(3)), 2, 0, check=True) == (3, 3)
    monkeypatch.setattr(algebra, "pencil_partition", lambda pair, lam: Partition((3, 2)))
    with pytest.raises(TheoremViolation):
        generic_pencil_partition(ex, 2, 0, check=True)
    assert generic_pencil_partition(ex, 2, 0, check=False) == (3, 2)


# -- cyclic vectors and socle --------------------------------------------------


def test_cyclic_vectors(field, ex):
    for pair in (ex, mcninch_pair(3, field), quotient_ring_pair(field)):
        v = is_cyclic(pair, 0)
        assert v is not None and krylov_dimension(pair, v) == pair.n
    assert is_cyclic(zero_pair(field, 3), 0) is None


@pytest.mark.parametrize(
    "make, dim",
    [
        (lambda F: mcninch_pair(3, F), 1),
        (lambda F: monomial_pair((4, 1), F), 2),
        (lambda F: zero_pair(F, 1), 1),
        (lambda F: monomial_pair((3, 2, 1), F), 3),
        (lambda F: specialize_example_pair(field=F), 1),
    ],
)
def test_socle_examples(field, make, dim):
    pair = make(field)
    info = socle(pair)
    assert info.socle_dim == dim == socle_oracle(pair)
    assert info.min_generators == dim + 1
    assert info.gorenstein == (dim == 1)


@pytest.mark.parametrize(
    "H, e, ok", [((1, 2, 1, 1, 1), 2, True), ((1, 2, 2, 1), 2, True), ((1, 2, 3, 1), 2, False), ((1, 2, 3, 1), 3, True)]
)
def test_hilbert_drop_check(H, e, ok):
    assert hilbert_drop_check(H, e) is ok


# -- fixture pairs -------------------------------------------------------------


def test_mcninch_pair(field):
    A, B = jordan_types(mcninch_pair(3, field))
    assert (A, B) == ((3, 3), (2, 2, 2))
    pair1 = mcninch_pair(1, field)
    assert pair1.A.is_zero() and jordan_partition(pair1.B) == (2,)
    assert mcninch_pair(4, field).dim == 8
    with pytest.raises(ValueError):
        mcninch_pair(0, field)


@pytest.mark.parametrize("n", range(1, 9))
def test_monomial_pairs(field, n):
    for P in enumerate_partitions(n):
        pair = monomial_pair(P, field)
        assert pair.B == jordan_matrix(P, field)
        assert jordan_partition(pair.A) == dual(P)
        assert pair.dim == n
        assert socle(pair).socle_dim == socle_oracle(pair)


def test_monomial_pair_examples(field):
    assert jordan_types(monomial_pair((3, 1, 1), field)) == ((3, 1, 1), (3, 1, 1))
    assert jordan_partition(monomial_pair((4, 1), field).A) == (2, 1, 1, 1)
    pair = monomial_pair((5,), field)
    assert pair.A.is_zero() and pair.B == jordan_matrix((5,), field)


def test_pair_report(ex):
    rep = pair_report(ex, trials=3, rng=0)
    assert rep.to_json() == {"dim": 5, "H": [1, 2, 1, 1], "socle": 1, "genericPencil": [4, 1], "cyclic": True}


# -- properties over sampled generic pairs ------------------------------------


def test_generic_pairs_up_to_8(field):
    for P in UP_TO_8:
        n = P.n
        rng = make_rng([99, *P])
        Q = estimate_qp(P, 20, rng, field).partition
        B = jordan_matrix(P, field)
        hs = []
        for _ in range(3):
            pair = CommutingPair(sample_nilpotent(P, rng, field), B)
            assert pair.dim == n
            h = hilbert_function(pair)
            assert is_hilbert_function(h.values)
            hs.append(h.values)
            gp = generic_pencil_partition(pair, 2, rng)
            PH = p_of_h(h.values)
            assert gp == PH and gp.has_distinct_parts()
            for lam in [0, INFINITY, *rng.integers(1, field.p, 3)]:
                c = dominance_cmp(PH, pencil_partition(pair, lam))
                assert c in (Order.GREATER, Order.EQUAL)
            assert socle(pair).gorenstein
            assert hilbert_drop_check(h.values, 2)
            assert PH == Q


def test_dimension_bound_on_degenerate_pairs(field):
    rng = make_rng(4)
    for P in UP_TO_8[::3]:
        B = jordan_matrix(P, field)
        A = sample_nilpotent(P, rng, field)
        for pair in (CommutingPair(A @ A, B @ B), CommutingPair(A, A @ A), zero_pair(field, P.n)):
            assert pair.dim <= P.n
            assert sum(hilbert_function(pair).values) == pair.dim
