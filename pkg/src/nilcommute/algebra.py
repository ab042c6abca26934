"""The Artinian algebra ``K[A, B]`` generated by two commuting nilpotent matrices.

Monomials ``A^a B^b`` play the role of ``x^a y^b``.  The local Hilbert
function is read off the filtration ``W_i = span{A^a B^b : a + b >= i}``
(the powers of the maximal ideal), so ``h_i = dim W_i - dim W_{i+1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .commutant import InconclusiveSampling, TheoremViolation
from .exactla import (
    DEFAULT_PRIME,
    Echelon,
    FieldMatrix,
    PrimeField,
    commutes,
    is_nilpotent,
    jordan_matrix,
    jordan_partition,
    kron,
    make_rng,
    rank,
    solve,
)
from .partitions import (
    HilbertFunction,
    Partition,
    dominance_max,
    is_hilbert_function,
    p_of_h,
)


class _Infinity:
    """The point at infinity of the projective line of pencil parameters."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(frozen=True, eq=False)
class CommutingPair:
    """Two commuting nilpotent matrices over the same prime field."""

    A: FieldMatrix
    B: FieldMatrix

    def __post_init__(self):
        if self.A.field != self.B.field:
            raise ValueError("A and B live over different fields")
        if not commutes(self.A, self.B):
            raise ValueError("A and B do not commute")
        if not is_nilpotent(self.A) or not is_nilpotent(self.B):
            raise ValueError("A and B must be nilpotent")

    @property
    def field(self) -> PrimeField:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.rows

    @cached_property
    def monomial_levels(self) -> list[list[tuple[int, int, FieldMatrix]]]:
        """``levels[k]`` lists ``(a, b, A^a B^b)`` with ``a + b = k``, ``a`` ascending.

        Stops before the first degree at which every monomial vanishes.
        """
        n = self.n
        eye = self.field.identity(n)
        levels = [[(0, 0, eye)]]
        while True:
            prev = levels[-1]
            k = len(levels)
            nxt = [(0, k, prev[0][2] @ self.B)]
            nxt += [(a + 1, b, M @ self.A) for a, b, M in prev]
            nxt = [(a, b, M) for a, b, M in nxt if a < n and b < n]
            if all(M.is_zero() for _, _, M in nxt):
                return levels
            levels.append(nxt)

    @cached_property
    def basis(self) -> AlgebraBasis:
        return algebra_basis(self)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def to_json(self) -> dict:
        return {"p": self.field.p, "A": self.A.tolist(), "B": self.B.tolist()}

    @classmethod
    def from_json(cls, data) -> CommutingPair:
        if isinstance(data, str):
            data = json.loads(data)
        field = PrimeField(data["p"])
        A = np.array(data["A"], dtype=np.int64)
        B = np.array(data["B"], dtype=np.int64)
        for M in (A, B):
            if M.ndim != 2 or M.shape[0] != M.shape[1] or ((M < 0) | (M >= field.p)).any():
                raise ValueError("pair entries must be square arrays of residues in [0, p)")
        return cls(field.matrix(A), field.matrix(B))


@dataclass(frozen=True)
class AlgebraBasis:
    exponents: tuple[tuple[int, int], ...]
    matrices: tuple[FieldMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.exponents)

    @cached_property
    def coordinate_matrix(self) -> FieldMatrix:
        """``n^2 x dim`` matrix whose columns are the flattened basis elements."""
        m = self.matrices[0]
        cols = np.stack([M.flat() for M in self.matrices], axis=1)
        return FieldMatrix._wrap(cols, m.field)

    def coordinates(self, C: FieldMatrix) -> np.ndarray:
        try:
            return solve(self.coordinate_matrix, C.flat())
        except ValueError:
            raise ValueError("matrix is not in the algebra span") from None


@dataclass(frozen=True)
class LocalHilbertFunction:
    values: tuple[int, ...]
    filtration: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return is_hilbert_function(self.values)

    @property
    def hilbert(self) -> HilbertFunction:
        return HilbertFunction(self.values)


@dataclass(frozen=True)
class SocleInfo:
    socle_dim: int

    @property
    def min_generators(self) -> int:
        return self.socle_dim + 1

    @property
    def gorenstein(self) -> bool:
        return self.socle_dim == 1


def algebra_basis(pair: CommutingPair) -> AlgebraBasis:
    """Greedy scan of monomials in the order ``1 < y < x < y^2 < yx < x^2 < ...``.

    ``x`` stands for ``A`` and ``y`` for ``B``; a monomial is kept when it is
    independent of those already kept.  The scan stops after a degree that
    adds nothing, since every higher monomial then lies in the span.
    """
    n = pair.n
    ech = Echelon(n * n, pair.field.p)
    exps, mats = [], []
    for level in pair.monomial_levels:
        added = False
        for a, b, M in level:
            if ech.add(M.flat()):
                exps.append((a, b))
                mats.append(M)
                added = True
        if not added:
            break
    return AlgebraBasis(tuple(exps), tuple(mats))


def hilbert_function(pair: CommutingPair) -> LocalHilbertFunction:
    n = pair.n
    levels = pair.monomial_levels
    ech = Echelon(n * n, pair.field.p)
    dims = [0] * (len(levels) + 1)
    for k in range(len(levels) - 1, -1, -1):
        for _, _, M in levels[k]:
            ech.add(M.flat())
        dims[k] = len(ech)
    values = [dims[k] - dims[k + 1] for k in range(len(levels))]
    while values and values[-1] == 0:
        values.pop()
    return LocalHilbertFunction(tuple(values), tuple(dims))


def multiplication_matrix(pair: CommutingPair, basis: AlgebraBasis, C: FieldMatrix) -> FieldMatrix:
    """Matrix of ``w -> C w`` on the algebra, in the given basis (columns = images)."""
    if not basis.matrices:
        return pair.field.zeros(0)
    images = np.stack([(C @ M).flat() for M in basis.matrices], axis=1)
    try:
        coords = solve(basis.coordinate_matrix, images)
    except ValueError:
        raise ValueError("matrix is not in the algebra span") from None
    return pair.field.matrix(coords)


def pencil_element(pair: CommutingPair, lam) -> FieldMatrix:
    if lam is INFINITY:
        return pair.B
    return pair.A + pair.B.scale(int(lam))


def pencil_partition(pair: CommutingPair, lam) -> Partition:
    """Jordan type of multiplication by ``A + lam B`` on ``K[A, B]`` (``B`` at infinity)."""
    C = pencil_element(pair, lam)
    return jordan_partition(multiplication_matrix(pair, pair.basis, C))


def generic_pencil_partition(pair: CommutingPair, trials: int = 5, rng=None, *, check: bool = True) -> Partition:
    """Dominance-maximum pencil partition over random ``lam`` in the field.

    When ``dim K[A,B] = n`` and ``p`` exceeds the socle degree, the result
    must equal ``P(H)``; ``check`` raises ``TheoremViolation`` otherwise.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = make_rng(rng)
    seen = [pencil_partition(pair, int(lam)) for lam in pair.field.random_elements(rng, trials)]
    best = dominance_max(seen)
    if best is None:
        raise InconclusiveSampling(f"no dominance maximum among pencil partitions {seen}")
    if check and pair.dim == pair.n and pair.n > 0:
        H = hilbert_function(pair)
        if H.valid and pair.field.p > H.hilbert.socle_degree and best != p_of_h(H.hilbert):
            raise TheoremViolation(f"generic pencil {best} differs from P(H)={p_of_h(H.hilbert)}")
    return best


def is_cyclic(pair: CommutingPair, rng=None, tries: int = 10) -> np.ndarray | None:
    """A vector ``v`` with ``K[A,B] v`` the whole space, or ``None``."""
    n = pair.n
    if pair.dim < n:
        return None
    rng = make_rng(0 if rng is None else rng)
    mats = pair.basis.matrices

    def spans(v):
        cols = np.stack([M.apply(v) for M in mats], axis=1)
        return rank(pair.field.matrix(cols)) == n

    for _ in range(tries):
        v = pair.field.random_elements(rng, n)
        if spans(v):
            return v
    for k in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[k] = 1
        if spans(v):
            return v
    return None


def socle(pair: CommutingPair) -> SocleInfo:
    """Dimension of ``{w : A w = B w = 0}`` inside the algebra."""
    basis = pair.basis
    mA = multiplication_matrix(pair, basis, pair.A)
    mB = multiplication_matrix(pair, basis, pair.B)
    stacked = pair.field.matrix(np.vstack([mA.entries, mB.entries]))
    return SocleInfo(basis.dim - rank(stacked))


def hilbert_drop_check(H, e: int) -> bool:
    """``h_{i-1} - h_i <= e - 1`` for every ``i >= nu`` (with ``h_{j+1} = 0``)."""
    H = H if isinstance(H, HilbertFunction) else HilbertFunction(H)
    vals = list(H) + [0]
    return all(vals[i - 1] - vals[i] <= e - 1 for i in range(max(H.order, 1), len(vals)))


def mcninch_pair(d: int, field: PrimeField | None = None) -> CommutingPair:
    """``A = J_d (x) I_2`` and ``B = I_d (x) J_2``; ``K[A,B] = K[x,y]/(x^d, y^2)``."""
    if d < 1:
        raise ValueError("d must be positive")
    field = field or PrimeField(DEFAULT_PRIME)
    Jd = jordan_matrix([d], field)
    J2 = jordan_matrix([2], field)
    return CommutingPair(kron(Jd, field.identity(2)), kron(field.identity(d), J2))


def monomial_pair(P, field: PrimeField | None = None) -> CommutingPair:
    """Multiplication by ``y`` (as ``A``) and ``x`` (as ``B``) on the cobasis of ``E_P``.

    Row ``b`` of the cobasis holds ``x^a y^b`` for ``a < P[b]``, listed with
    ``a`` descending, so ``B`` is exactly ``J_P`` and ``A`` has type ``dual(P)``.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    P = Partition(P)
    index = {}
    for b, k in enumerate(P):
        for a in range(k - 1, -1, -1):
            index[(a, b)] = len(index)
    n = len(index)
    mx = np.zeros((n, n), dtype=np.int64)
    my = np.zeros((n, n), dtype=np.int64)
    for (a, b), col in index.items():
        if (a + 1, b) in index:
            mx[index[(a + 1, b)], col] = 1
        if (a, b + 1) in index:
            my[index[(a, b + 1)], col] = 1
    return CommutingPair(field.matrix(my), field.matrix(mx))


def specialize_example_pair(a=1, b=1, c=1, d=1, e=1, f=1, g=1, field: PrimeField | None = None) -> CommutingPair:
    """The 5x5 pair with ``B = J_(3,1,1)`` and ``A`` in the centralizer's normal shape."""
    field = field or PrimeField(DEFAULT_PRIME)
    A = [
        [0, a, b, f, g],
        [0, 0, a, 0, 0],
        [0, 0, 0, 0, 0],
        [0, 0, e, 0, c],
        [0, 0, d, 0, 0],
    ]
    return CommutingPair(field.matrix(A), jordan_matrix([3, 1, 1], field))


@dataclass(frozen=True)
class PairReport:
    dim: int
    H: tuple[int, ...]
    socle: int
    generic_pencil: Partition
    cyclic: bool

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "H": list(self.H),
            "socle": self.socle,
            "genericPencil": list(self.generic_pencil),
            "cyclic": self.cyclic,
        }


def pair_report(pair: CommutingPair, trials: int = 5, rng=0) -> PairReport:
    rng = make_rng(rng)
    H = hilbert_function(pair)
    return PairReport(
        dim=pair.dim,
        H=H.values,
        socle=socle(pair).socle_dim,
        generic_pencil=generic_pencil_partition(pair, trials, rng, check=False),
        cyclic=is_cyclic(pair, rng) is not None,
    )


def jordan_types(pair: CommutingPair) -> tuple[Partition, Partition]:
    """Jordan types of ``A`` and ``B`` acting on the underlying space."""
    return jordan_partition(pair.A), jordan_partition(pair.B)


__all__ = [
    "INFINITY",
    "CommutingPair",
    "AlgebraBasis",
    "LocalHilbertFunction",
    "SocleInfo",
    "PairReport",
    "algebra_basis",
    "hilbert_function",
    "multiplication_matrix",
    "pencil_partition",
    "generic_pencil_partition",
    "is_cyclic",
    "socle",
    "hilbert_drop_check",
    "mcninch_pair",
    "monomial_pair",
    "specialize_example_pair",
    "pair_report",
]
