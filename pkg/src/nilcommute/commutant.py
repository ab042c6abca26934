"""The centralizer of a Jordan matrix and its generic nilpotent elements.

A map from Jordan block ``j`` (size ``p_j``) to block ``i`` (size ``p_i``)
commutes with the shift exactly when it is an upper-triangular Toeplitz
band: entry ``(r, c)`` depends only on ``d = c - r`` and vanishes unless
``max(0, p_j - p_i) <= d < p_j``.  That gives ``min(p_i, p_j)`` free
coordinates per ordered pair of blocks.  Between blocks of equal size the
``d = 0`` coordinate is the *leading coefficient*; an element is nilpotent
iff, for each block size, the square matrix of leading coefficients is
nilpotent.  Sampling makes those matrices strictly upper triangular.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactla import (
    DEFAULT_PRIME,
    FieldMatrix,
    PrimeField,
    commutes,
    is_nilpotent,
    jordan_matrix,
    jordan_partition,
    kron,
    make_rng,
    nullspace,
    power,
    rank,
)
from .partitions import (
    Order,
    Partition,
    StringDecomposition,
    dominance_cmp,
    dominance_max,
    is_stable,
    string_stats,
)

__all__ = [
    "JordanSpec",
    "CentralizerBasis",
    "QpEstimate",
    "InconclusiveSampling",
    "TheoremViolation",
    "jordan_matrix",
    "centralizer_basis",
    "centralizer_kernel_dimension",
    "expected_centralizer_dimension",
    "sample_nilpotent",
    "estimate_qp",
    "string_witness",
    "check_power_rank_bound",
]


class InconclusiveSampling(RuntimeError):
    """Sampled partitions have no dominance maximum (or minimum)."""


class TheoremViolation(AssertionError):
    """A theorem-backed postcondition failed on computed data."""


@dataclass(frozen=True)
class JordanSpec:
    partition: Partition
    offsets: tuple[int, ...]

    @classmethod
    def of(cls, P) -> JordanSpec:
        P = Partition(P)
        offs, o = [], 0
        for x in P:
            offs.append(o)
            o += x
        return cls(P, tuple(offs))

    @property
    def n(self) -> int:
        return self.partition.n

    def band(self, i: int, j: int) -> range:
        """Allowed diagonals ``d`` for the block map from block ``j`` into block ``i``."""
        pi, pj = self.partition[i], self.partition[j]
        return range(max(0, pj - pi), pj)

    def band_matrix(self, i: int, j: int, d: int) -> np.ndarray:
        """0/1 ``n x n`` array of the single Toeplitz coordinate ``(i, j, d)``."""
        pi, pj = self.partition[i], self.partition[j]
        out = np.zeros((self.n, self.n), dtype=np.int64)
        oi, oj = self.offsets[i], self.offsets[j]
        for r in range(pi):
            c = r + d
            if 0 <= c < pj:
                out[oi + r, oj + c] = 1
        return out

    def coordinates(self):
        for i in range(len(self.partition)):
            for j in range(len(self.partition)):
                for d in self.band(i, j):
                    yield i, j, d


@dataclass(frozen=True)
class CentralizerBasis:
    spec: JordanSpec
    basis: tuple[FieldMatrix, ...]
    coords: tuple[tuple[int, int, int], ...]
    # size -> block indices of that size, in order
    classes: dict[int, tuple[int, ...]]
    # (i, j) with equal sizes -> index into ``basis`` of the leading coefficient
    leading: dict[tuple[int, int], int]

    def __len__(self):
        return len(self.basis)


def expected_centralizer_dimension(P) -> int:
    """``sum (2i - 1) p_i`` over parts sorted descending."""
    return sum((2 * i - 1) * x for i, x in enumerate(Partition(P), start=1))


def centralizer_basis(P, field: PrimeField | None = None) -> CentralizerBasis:
    field = field or PrimeField(DEFAULT_PRIME)
    spec = JordanSpec.of(P)
    basis, coords, leading = [], [], {}
    for i, j, d in spec.coordinates():
        if d == 0 and spec.partition[i] == spec.partition[j]:
            leading[(i, j)] = len(basis)
        coords.append((i, j, d))
        basis.append(FieldMatrix._wrap(spec.band_matrix(i, j, d), field))
    classes: dict[int, list[int]] = {}
    for k, x in enumerate(spec.partition):
        classes.setdefault(x, []).append(k)
    return CentralizerBasis(
        spec,
        tuple(basis),
        tuple(coords),
        {k: tuple(v) for k, v in classes.items()},
        leading,
    )


def commutator_operator(P, field: PrimeField) -> FieldMatrix:
    """Matrix of ``X -> X J - J X`` on row-major flattened ``n x n`` matrices."""
    J = jordan_matrix(P, field)
    eye = field.identity(J.rows)
    return kron(eye, J.T) - kron(J, eye)


def centralizer_kernel_dimension(P, field: PrimeField | None = None) -> int:
    """Dimension of the centralizer computed as a kernel (independent of the band formula)."""
    field = field or PrimeField(DEFAULT_PRIME)
    L = commutator_operator(P, field)
    return L.cols - rank(L)


def centralizer_kernel_basis(P, field: PrimeField | None = None) -> list[FieldMatrix]:
    field = field or PrimeField(DEFAULT_PRIME)
    n = Partition(P).n
    return [field.matrix(v.reshape(n, n)) for v in nullspace(commutator_operator(P, field))]


def sample_nilpotent(P, rng=None, field: PrimeField | None = None) -> FieldMatrix:
    """A random element of the nilpotent centralizer of ``J_P``.

    Leading coefficients between equal-size blocks form a strictly upper
    triangular matrix per size class; every other band coordinate is uniform.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    rng = make_rng(rng)
    spec = JordanSpec.of(P)
    n = spec.n
    a = np.zeros((n, n), dtype=np.int64)
    t = len(spec.partition)
    for i in range(t):
        pi, oi = spec.partition[i], spec.offsets[i]
        for j in range(t):
            pj, oj = spec.partition[j], spec.offsets[j]
            band = spec.band(i, j)
            vals = field.random_elements(rng, len(band))
            if pi == pj and i >= j:
                vals[0] = 0
            for d, v in zip(band, vals):
                for r in range(pi):
                    c = r + d
                    if c >= pj:
                        break
                    a[oi + r, oj + c] = v
    return FieldMatrix._wrap(a, field)


@dataclass
class QpEstimate:
    partition: Partition
    source: Partition
    trials: int
    seed: int | None
    observed: list[Partition] = dc_field(default_factory=list)
    p: int = DEFAULT_PRIME

    @property
    def confidence(self) -> str:
        return (
            f"Monte Carlo over F_{self.p}: each of {self.trials} trials misses the generic "
            f"type with probability O(n^2/p); the maximum was attained"
        )

    def to_json(self) -> dict:
        return {
            "P": list(self.source),
            "QP": list(self.partition),
            "trials": self.trials,
            "seed": self.seed,
            "observed": [list(x) for x in self.observed],
        }

    def violations(self) -> list[str]:
        """Theorem-backed postconditions that fail for this estimate."""
        out = []
        r = string_stats(self.source).r
        if len(self.partition) != r:
            out.append(f"Q has {len(self.partition)} parts, expected r_P={r}")
        for obs in self.observed:
            if dominance_cmp(self.partition, obs) not in (Order.GREATER, Order.EQUAL):
                out.append(f"observed {obs} not dominated by Q")
        if not is_stable(self.partition):
            out.append(f"Q={self.partition} is not stable")
        return out


def estimate_qp(
    P,
    trials: int = 20,
    rng=None,
    field: PrimeField | None = None,
    *,
    check: bool = False,
    samples: list[FieldMatrix] | None = None,
) -> QpEstimate:
    """Dominance-maximum Jordan type over ``trials`` random nilpotent commutants.

    ``rng`` may be a seed or a generator.  With ``check=True`` the
    theorem-backed postconditions are enforced (``TheoremViolation``).
    Sampled matrices are appended to ``samples`` when a list is given.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    P = Partition(P)
    field = field or PrimeField(DEFAULT_PRIME)
    if field.p <= P.n:
        raise ValueError(f"modulus {field.p} must exceed n={P.n}")
    seed = rng if isinstance(rng, int) else None
    gen = make_rng(rng)
    observed = []
    for _ in range(trials):
        A = sample_nilpotent(P, gen, field)
        if samples is not None:
            samples.append(A)
        observed.append(jordan_partition(A))
    best = dominance_max(observed)
    if best is None:
        raise InconclusiveSampling(
            f"no dominance maximum among {sorted(set(observed), reverse=True)}; raise trials"
        )
    est = QpEstimate(best, P, trials, seed, observed, field.p)
    if check:
        bad = est.violations()
        if bad:
            raise TheoremViolation("; ".join(bad))
    return est


def _string_block_matrix(block: Partition) -> np.ndarray:
    """A single Jordan chain whose ``len(block)``-th power is ``J_block``.

    Chain position ``q`` (0-based) sits in block ``q mod i`` at depth
    ``q // i``; the i-th power then steps each block down by one.
    """
    i = len(block)
    m = block.n
    offs = [0]
    for x in block[:-1]:
        offs.append(offs[-1] + x)
    pos = [offs[q % i] + q // i for q in range(m)]
    a = np.zeros((m, m), dtype=np.int64)
    for q in range(1, m):
        a[pos[q - 1], pos[q]] = 1
    return a


def string_witness(P, d: StringDecomposition, field: PrimeField | None = None) -> FieldMatrix:
    """A nilpotent matrix commuting with ``J_P`` whose Jordan type is ``tilde(d)``.

    ``d`` must cut ``P`` (in sorted order) into consecutive strings.  Each
    string block becomes one Jordan chain interleaving its blocks.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    P = Partition(P)
    if not isinstance(d, StringDecomposition):
        d = StringDecomposition(tuple(d))
    flat = tuple(x for b in d.blocks for x in b)
    if flat != tuple(P):
        raise ValueError(f"{d} is not a consecutive string cut of {P}")
    n = P.n
    a = np.zeros((n, n), dtype=np.int64)
    off = 0
    for block in d.blocks:
        m = block.n
        a[off : off + m, off : off + m] = _string_block_matrix(block)
        off += m
    return FieldMatrix._wrap(a, field)


def check_power_rank_bound(P, A: FieldMatrix, mmax: int | None = None) -> bool:
    """``rank((A^s)^m) <= rank(J_P^m)`` for ``1 <= m <= mmax``, with ``s = s_P``."""
    P = Partition(P)
    B = jordan_matrix(P, A.field)
    if A.shape != B.shape or not commutes(A, B) or not is_nilpotent(A):
        raise ValueError("A is not in the nilpotent commutator of J_P")
    if not P:
        return True
    mmax = P.n if mmax is None else mmax
    s = string_stats(P).s
    As = power(A, s)
    lhs, rhs = As, B
    for _ in range(mmax):
        if rank(lhs) > rank(rhs):
            return False
        lhs, rhs = lhs @ As, rhs @ B
    return True

