"""Exact dense linear algebra over a prime field F_p.

Matrices are held as ``int64`` numpy arrays of residues in ``[0, p)``.  The
default modulus ``2**31 - 1`` keeps every product of two residues below
``2**62``, so row operations never overflow; matrix products split one
operand into 16-bit limbs so that the accumulated sums also stay in range.

Random sampling uses numpy's ``PCG64`` bit generator (via
``numpy.random.default_rng``), which produces the same stream for the same
seed on every platform.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from .partitions import Partition, dual

DEFAULT_PRIME = 2**31 - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for every ``p < 3.3e24``."""
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def make_rng(seed=None) -> np.random.Generator:
    """Return a PCG64 generator; passes an existing generator through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


class PrimeField:
    """The field of residues modulo a prime ``p < 2**31``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p >= 2**31:
            raise ValueError("modulus must be below 2**31")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.p - 2, self.p)

    def matrix(self, entries) -> FieldMatrix:
        return FieldMatrix(entries, self)

    def zeros(self, rows: int, cols: int | None = None) -> FieldMatrix:
        cols = rows if cols is None else cols
        return FieldMatrix(np.zeros((rows, cols), dtype=np.int64), self)

    def identity(self, n: int) -> FieldMatrix:
        return FieldMatrix(np.eye(n, dtype=np.int64), self)

    def random_elements(self, rng: np.random.Generator, size=None):
        return rng.integers(0, self.p, size=size, dtype=np.int64)

    def random_matrix(self, rows: int, cols: int, rng) -> FieldMatrix:
        return FieldMatrix(self.random_elements(make_rng(rng), (rows, cols)), self)


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if k * (p - 1) ** 2 < 2**63:
        return (a @ b) % p
    # a = hi * 2**16 + lo with hi < 2**15, lo < 2**16
    hi, lo = a >> 16, a & 0xFFFF
    bh, bl = b >> 16, b & 0xFFFF
    top = (hi @ bh) % p
    mid = (hi @ bl + lo @ bh) % p
    low = (lo @ bl) % p
    shift16 = (1 << 16) % p
    shift32 = (1 << 32) % p
    return (top * shift32 % p + mid * shift16 % p + low) % p


class FieldMatrix:
    """Immutable dense matrix over a prime field."""

    __slots__ = ("_a", "field")

    def __init__(self, entries, field: PrimeField):
        a = np.array(entries, dtype=object if _is_big(entries) else np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        a = (a % field.p).astype(np.int64)
        a.setflags(write=False)
        self._a = a
        self.field = field

    @classmethod
    def _wrap(cls, a: np.ndarray, field: PrimeField) -> FieldMatrix:
        m = object.__new__(cls)
        a.setflags(write=False)
        m._a = a
        m.field = field
        return m

    # -- basic protocol -------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the residues."""
        return self._a

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not self._a.any()

    def __repr__(self):
        return f"FieldMatrix(p={self.p}, shape={self.shape})\n{self._a}"

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._a, other._a))
        )

    __hash__ = None

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def to_json(self) -> dict:
        return {"p": self.p, "rows": self.rows, "cols": self.cols, "entries": self.tolist()}

    @classmethod
    def from_json(cls, data) -> FieldMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        field = PrimeField(data["p"])
        entries = data["entries"]
        m = cls(np.array(entries, dtype=np.int64).reshape(data["rows"], data["cols"]), field)
        if any(not 0 <= int(x) < field.p for row in entries for x in row):
            raise ValueError("matrix entries must lie in [0, p)")
        return m

    # -- arithmetic -----------------------------------------------------

    def _check_same(self, other: FieldMatrix):
        if self.field != other.field:
            raise ValueError("matrices live over different fields")

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return FieldMatrix._wrap((self._a + other._a) % self.p, self.field)

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return FieldMatrix._wrap((self._a - other._a) % self.p, self.field)

    def __neg__(self) -> FieldMatrix:
        return FieldMatrix._wrap((-self._a) % self.p, self.field)

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        self._check_same(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FieldMatrix._wrap(_matmul_mod(self._a, other._a, self.p), self.field)

    def scale(self, c: int) -> FieldMatrix:
        c = int(c) % self.p
        return FieldMatrix._wrap(self._a * c % self.p, self.field)

    def __pow__(self, k: int) -> FieldMatrix:
        return power(self, k)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix-vector (or matrix-block) product as a raw residue array."""
        v = np.asarray(v, dtype=np.int64)
        col = v.ndim == 1
        out = _matmul_mod(self._a, v.reshape(len(v), -1), self.p)
        return out.ravel() if col else out

    @property
    def T(self) -> FieldMatrix:
        return FieldMatrix._wrap(self._a.T.copy(), self.field)

    def flat(self) -> np.ndarray:
        return self._a.ravel()


def _is_big(entries) -> bool:
    if isinstance(entries, np.ndarray):
        return entries.dtype == object
    try:
        return any(abs(int(x)) >= 2**62 for row in entries for x in row)
    except TypeError:
        return False


# -- matrix_ops group -----------------------------------------------------


def add(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    return a + b


def mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    return a @ b


def scalar_mul(c: int, a: FieldMatrix) -> FieldMatrix:
    return a.scale(c)


def power(a: FieldMatrix, k: int) -> FieldMatrix:
    if not a.is_square():
        raise ValueError("power of a non-square matrix")
    if k < 0:
        raise ValueError("negative exponent")
    result = a.field.identity(a.rows)
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def kron(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    a._check_same(b)
    return FieldMatrix._wrap(np.kron(a.entries, b.entries) % a.p, a.field)


def direct_sum(blocks: Sequence[FieldMatrix], field: PrimeField) -> FieldMatrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = np.zeros((n, m), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.rows, c : c + b.cols] = b.entries
        r += b.rows
        c += b.cols
    return FieldMatrix._wrap(out, field)


# -- elimination ------------------------------------------------------------


def row_reduce(a: np.ndarray, p: int, *, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """Gaussian elimination mod ``p`` with first-nonzero pivoting.

    Returns ``(R, pivots)``.  With ``reduced=True`` the result is the reduced
    row echelon form; otherwise only entries below each pivot are cleared.
    """
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        if reduced:
            col = a[:, c].copy()
            col[r] = 0
            targets = np.flatnonzero(col)
        else:
            targets = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if targets.size:
            a[targets] = (a[targets] - a[targets, c, None] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: FieldMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    a = m.entries if m.rows <= m.cols else m.entries.T
    return len(row_reduce(a, m.p, reduced=False)[1])


def nullspace(m: FieldMatrix) -> list[np.ndarray]:
    """Basis of ``{x : m x = 0}`` as residue vectors."""
    r, pivots = row_reduce(m.entries, m.p)
    p = m.p
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(m.cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-r[i, f]) % p
        basis.append(v)
    return basis


def solve(m: FieldMatrix, rhs) -> np.ndarray:
    """Solve ``m x = rhs`` for one or more right-hand sides (columns of ``rhs``).

    Raises ``ValueError`` when the system is inconsistent.  Free variables
    are set to zero.
    """
    rhs = np.asarray(rhs, dtype=np.int64) % m.p
    single = rhs.ndim == 1
    rhs2 = rhs.reshape(m.rows, -1)
    aug = np.hstack([m.entries, rhs2])
    r, pivots = row_reduce(aug, m.p)
    if pivots and pivots[-1] >= m.cols:
        raise ValueError("inconsistent linear system")
    x = np.zeros((m.cols, rhs2.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, m.cols :]
    return x.ravel() if single else x


def span_dimension(mats: Iterable[FieldMatrix]) -> int:
    mats = list(mats)
    if not mats:
        return 0
    field = mats[0].field
    stacked = np.vstack([m.flat() for m in mats])
    return rank(FieldMatrix._wrap(stacked, field))


class Echelon:
    """Incrementally built row space over F_p.

    ``add`` reduces a vector against the rows collected so far and keeps it
    when it is independent; the row space is kept in reduced echelon form.
    """

    def __init__(self, width: int, p: int):
        self.width = width
        self.p = p
        self._rows = np.zeros((0, width), dtype=np.int64)
        self._pivots: list[int] = []

    def __len__(self):
        return len(self._pivots)

    def reduce(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self._pivots:
            coef = v[self._pivots]
            nz = np.flatnonzero(coef)
            if nz.size:
                # coef < p and rows < p, one term at a time keeps products < 2**62
                for i in nz:
                    v = (v - int(coef[i]) * self._rows[i]) % self.p
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = v * pow(int(v[c]), self.p - 2, self.p) % self.p
        # keep reduced form: clear column c from existing rows
        if self._pivots:
            col = self._rows[:, c]
            hit = np.flatnonzero(col)
            if hit.size:
                self._rows[hit] = (self._rows[hit] - col[hit, None] * v) % self.p
        self._rows = np.vstack([self._rows, v])
        self._pivots.append(c)
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v).any()


# -- nilpotent structure ------------------------------------------------------


def is_nilpotent(m: FieldMatrix) -> bool:
    if not m.is_square():
        raise ValueError("nilpotency is defined for square matrices only")
    n = m.rows
    if n == 0:
        return True
    q, e = m, 1
    while e < n:
        q = q @ q
        e *= 2
        if q.is_zero():
            return True
    return q.is_zero()


def commutes(a: FieldMatrix, b: FieldMatrix) -> bool:
    if not (a.is_square() and b.is_square()) or a.shape != b.shape:
        raise ValueError(f"commutes needs equal square shapes, got {a.shape} and {b.shape}")
    return a @ b == b @ a


def rank_sequence(m: FieldMatrix) -> list[int]:
    """``[n, rank(m), rank(m^2), ...]`` up to the first zero.

    Raises ``ValueError("not nilpotent")`` when the ranks stall above zero.
    """
    if not m.is_square():
        raise ValueError("rank sequence needs a square matrix")
    n = m.rows
    seq = [n]
    q = m
    while seq[-1] > 0:
        r = rank(q)
        if r == seq[-1]:
            raise ValueError("not nilpotent")
        seq.append(r)
        if r:
            q = q @ m
    return seq


def jordan_partition(m: FieldMatrix) -> Partition:
    """Jordan type of a nilpotent matrix from the ranks of its powers."""
    seq = rank_sequence(m)
    diffs = [seq[k - 1] - seq[k] for k in range(1, len(seq))]
    return dual(Partition(diffs))


def jordan_matrix(P, field: PrimeField) -> FieldMatrix:
    """Block-diagonal nilpotent Jordan matrix with ones on each superdiagonal."""
    P = Partition(P)
    n = P.n
    a = np.zeros((n, n), dtype=np.int64)
    off = 0
    for part in P:
        for k in range(part - 1):
            a[off + k, off + k + 1] = 1
        off += part
    return FieldMatrix._wrap(a, field)


def expected_rank_of_power(P, i: int) -> int:
    """``n - (n(1) + ... + n(i))`` with ``n(k)`` the k-th dual part."""
    P = Partition(P)
    d = dual(P)
    return P.n - sum(d[:i])
