"""Partitions, Hilbert functions and the combinatorics linking them.

A :class:`Partition` is a tuple of positive integers kept in weakly
decreasing order; a :class:`HilbertFunction` is a tuple of the shape
``(1, 2, ..., nu, h_nu, ..., h_j)`` with ``nu >= h_nu >= ... >= h_j > 0``.
Both are plain tuples underneath, so they compare equal to ordinary tuples
and serialize as JSON arrays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate, zip_longest
from typing import Iterable, Iterator

PARTITION_BOUND = 40


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(x) for x in parts]
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def n(self) -> int:
        return sum(self)

    def __str__(self):
        return ",".join(map(str, self))

    def __repr__(self):
        return f"Partition({tuple(self)})"

    @classmethod
    def parse(cls, text: str) -> Partition:
        text = text.strip().strip("()[]")
        if not text:
            return cls()
        return cls(int(x) for x in text.split(","))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in self:
            out[x] = out.get(x, 0) + 1
        return out

    def has_distinct_parts(self) -> bool:
        return all(a > b for a, b in zip(self, self[1:]))


class HilbertFunction(tuple):
    """Hilbert function of a codimension-at-most-two Artinian algebra."""

    def __new__(cls, values: Iterable[int]):
        values = tuple(int(x) for x in values)
        nu = _order(values)
        if nu is None:
            raise ValueError(f"not a valid Hilbert function: {values}")
        obj = super().__new__(cls, values)
        obj._nu = nu
        return obj

    @property
    def order(self) -> int:
        """``nu``: first degree where ``h_i`` falls below ``i + 1``."""
        return self._nu

    @property
    def socle_degree(self) -> int:
        return len(self) - 1

    @property
    def n(self) -> int:
        return sum(self)

    def __str__(self):
        return ",".join(map(str, self))

    def __repr__(self):
        return f"HilbertFunction({tuple(self)})"

    @classmethod
    def parse(cls, text: str) -> HilbertFunction:
        text = text.strip().strip("()[]")
        return cls(int(x) for x in text.split(","))


def _order(values: tuple[int, ...]) -> int | None:
    if not values or values[0] != 1 or any(h <= 0 for h in values):
        return None
    nu = 0
    while nu < len(values) and values[nu] == nu + 1:
        nu += 1
    if nu < len(values) and values[nu] > nu:
        return None
    if any(a < b for a, b in zip(values[nu:], values[nu + 1 :])):
        return None
    return nu


def is_hilbert_function(values: Iterable[int]) -> bool:
    return _order(tuple(values)) is not None


class Order(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def __str__(self):
        return self.value


# -- basic transforms -------------------------------------------------------


def dual(P: Iterable[int]) -> Partition:
    P = Partition(P)
    if not P:
        return Partition()
    return Partition(sum(1 for x in P if x > i) for i in range(P[0]))


def diagonal_lengths(P: Iterable[int]) -> tuple[int, ...]:
    """Lengths of the anti-diagonals ``r + c = d`` of the Ferrers diagram."""
    P = Partition(P)
    if not P:
        return ()
    counts = [0] * (max(r + x for r, x in enumerate(P)))
    for r, x in enumerate(P):
        for c in range(x):
            counts[r + c] += 1
    return tuple(counts)


def p_of_h(H: Iterable[int]) -> Partition:
    """The partition with distinct parts whose diagonal lengths are ``H``.

    Row ``i`` of the bar graph of ``H`` has length ``#{k : h_k >= i}``.
    """
    H = H if isinstance(H, HilbertFunction) else HilbertFunction(H)
    return Partition(sum(1 for h in H if h >= i) for i in range(1, max(H) + 1))


def h_of_p(P: Iterable[int]) -> HilbertFunction:
    """Inverse of :func:`p_of_h` on partitions with distinct parts."""
    P = Partition(P)
    if not P.has_distinct_parts():
        raise ValueError(f"h_of_p needs distinct parts, got {P}")
    if not P:
        raise ValueError("h_of_p of the empty partition")
    rest = list(dual(P))
    t = len(P)
    for i in range(1, t + 1):
        rest.remove(i)
    return HilbertFunction(tuple(range(1, t + 1)) + tuple(sorted(rest, reverse=True)))


def _compare_prefix(a: Iterable[int], b: Iterable[int]) -> Order:
    ge = le = True
    for x, y in zip_longest(accumulate(a), accumulate(b)):
        # missing prefix sums keep the final total
        if x is None or y is None:
            continue
        ge &= x >= y
        le &= x <= y
    if ge and le:
        return Order.EQUAL
    if ge:
        return Order.GREATER
    if le:
        return Order.LESS
    return Order.INCOMPARABLE


def dominance_cmp(P: Iterable[int], P2: Iterable[int]) -> Order:
    P, P2 = Partition(P), Partition(P2)
    if P.n != P2.n:
        raise ValueError(f"cannot compare partitions of {P.n} and {P2.n}")
    k = max(len(P), len(P2))
    return _compare_prefix(P + (0,) * (k - len(P)), P2 + (0,) * (k - len(P2)))


def hilbert_cmp(H: Iterable[int], H2: Iterable[int]) -> Order:
    H, H2 = HilbertFunction(H), HilbertFunction(H2)
    if H.n != H2.n:
        raise ValueError(f"cannot compare Hilbert functions of length {H.n} and {H2.n}")
    k = max(len(H), len(H2))
    return _compare_prefix(H + (0,) * (k - len(H)), H2 + (0,) * (k - len(H2)))


def dominates(P, P2) -> bool:
    """``P >= P2`` in the dominance order."""
    return dominance_cmp(P, P2) in (Order.GREATER, Order.EQUAL)


def dominance_max(parts: Iterable[Iterable[int]]) -> Partition | None:
    """The element dominating all others, or ``None`` if there is none."""
    items = list(dict.fromkeys(Partition(x) for x in parts))
    for cand in items:
        if all(dominates(cand, other) for other in items):
            return cand
    return None


def hilbert_min(hs: Iterable[Iterable[int]]) -> HilbertFunction | None:
    items = list(dict.fromkeys(HilbertFunction(h) for h in hs))
    for cand in items:
        if all(hilbert_cmp(cand, o) in (Order.LESS, Order.EQUAL) for o in items):
            return cand
    return None


def power_partition(P: Iterable[int], i: int) -> Partition:
    """Jordan type of ``J_P ** i``."""
    if i < 1:
        raise ValueError("power must be positive")
    out: list[int] = []
    for m in Partition(P):
        if i >= m:
            out.extend([1] * m)
        else:
            q, r = divmod(m, i)
            out.extend([q + 1] * r + [q] * (i - r))
    return Partition(out)


def repeat_partition(c: int, P: Iterable[int]) -> Partition:
    if c < 1:
        raise ValueError("repetition count must be positive")
    return Partition(x for x in Partition(P) for _ in range(c))


def is_stable(P: Iterable[int]) -> bool:
    P = Partition(P)
    return all(a - b >= 2 for a, b in zip(P, P[1:]))


def order_of_diagonals(P: Iterable[int]) -> int:
    """Largest ``nu`` with ``Q_i >= nu + 1 - i`` for ``1 <= i <= nu``.

    This is the order of the Hilbert function ``diagonal_lengths(P)``.
    """
    P = Partition(P)
    nu = 0
    while nu < len(P) and all(P[i] >= nu + 1 - i for i in range(nu + 1)):
        nu += 1
    return nu


# -- strings ----------------------------------------------------------------


def is_string(parts: Iterable[int]) -> bool:
    parts = list(parts)
    return bool(parts) and max(parts) - min(parts) <= 1


@dataclass(frozen=True)
class StringDecomposition:
    """A partition cut into consecutive strings (max part - min part <= 1)."""

    blocks: tuple[Partition, ...]

    def __post_init__(self):
        blocks = tuple(Partition(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for b in blocks:
            if not is_string(b):
                raise ValueError(f"block {b} is not a string")

    @property
    def source(self) -> Partition:
        return Partition(x for b in self.blocks for x in b)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __str__(self):
        return " | ".join(str(b) for b in self.blocks)


@dataclass(frozen=True)
class StringStats:
    r: int
    s: int
    decompositions: frozenset[StringDecomposition]


def _longest_string(P: Partition) -> int:
    best, lo = 0, 0
    for hi in range(len(P)):
        while P[lo] - P[hi] > 1:
            lo += 1
        best = max(best, hi - lo + 1)
    return best


def string_stats(P: Iterable[int]) -> StringStats:
    """Minimum string count ``r_P``, longest string ``s_P``, and all minimal cuts.

    Decompositions are cuts of the sorted part list into consecutive segments.
    """
    P = Partition(P)
    t = len(P)
    if t == 0:
        return StringStats(0, 0, frozenset({StringDecomposition(())}))

    # best[k]: min blocks covering P[k:]
    best = [0] * (t + 1)
    for k in range(t - 1, -1, -1):
        best[k] = min(
            1 + best[e] for e in range(k + 1, t + 1) if P[k] - P[e - 1] <= 1
        )

    @lru_cache(maxsize=None)
    def cuts(k: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
        if k == t:
            return ((),)
        out = []
        for e in range(k + 1, t + 1):
            if P[k] - P[e - 1] > 1:
                break
            if 1 + best[e] == best[k]:
                out.extend((tuple(P[k:e]),) + rest for rest in cuts(e))
        return tuple(out)

    decomps = frozenset(StringDecomposition(c) for c in cuts(0))
    return StringStats(best[0], _longest_string(P), decomps)


def tilde(d: StringDecomposition | Iterable[Iterable[int]]) -> Partition:
    """Block sizes of a string decomposition, sorted descending."""
    if not isinstance(d, StringDecomposition):
        d = StringDecomposition(tuple(d))
    return Partition(b.n for b in d.blocks)


def qp_predicted(P: Iterable[int]) -> Partition | None:
    """Closed-form Q(P) when P cuts into r_P strings all of length s_P.

    Such a cut is automatically the only minimal one.  Returns ``None``
    when the closed form does not apply.
    """
    P = Partition(P)
    if not P:
        return Partition()
    st = string_stats(P)
    if len(st.decompositions) != 1:
        return None
    (d,) = st.decompositions
    if any(len(b) != st.s for b in d.blocks):
        return None
    return tilde(d)


# -- enumeration --------------------------------------------------------------


def enumerate_partitions(n: int, bound: int = PARTITION_BOUND) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise ValueError(f"n={n} exceeds the enumeration bound {bound}")

    def rec(rem: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for tail in rec(rem - first, first):
                yield (first,) + tail

    for parts in rec(n, n):
        yield Partition(parts)


def partitions_up_to(nmax: int, start: int = 1) -> Iterator[Partition]:
    for n in range(start, nmax + 1):
        yield from enumerate_partitions(n, bound=max(nmax, PARTITION_BOUND))


def hilbert_functions(n: int) -> list[HilbertFunction]:
    """All Hilbert functions of length ``n``, via the bijection with distinct-part partitions."""
    return [h_of_p(P) for P in enumerate_partitions(n) if P.has_distinct_parts()]
