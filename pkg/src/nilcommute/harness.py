"""Exhaustive and randomized verification suites.

Each suite walks every partition up to ``Config.nmax``, checks one family of
theorem-backed claims, and returns an :class:`ExperimentReport`.  Failures
are captured as counterexamples with enough data to reproduce them; they
never abort the run.  Randomness for partition ``P`` is drawn from a PCG64
stream keyed by ``(seed, suite tag, P)``, so reports depend only on the
config and not on iteration order or ``jobs``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable, Iterable

import numpy as np

from .algebra import (
    INFINITY,
    CommutingPair,
    generic_pencil_partition,
    hilbert_drop_check,
    hilbert_function,
    mcninch_pair,
    pencil_partition,
    socle,
)
from .commutant import InconclusiveSampling, check_power_rank_bound, estimate_qp
from .exactla import DEFAULT_PRIME, FieldMatrix, PrimeField, is_prime, jordan_matrix
from .partitions import (
    Order,
    Partition,
    diagonal_lengths,
    dominance_cmp,
    dominance_max,
    dominates,
    enumerate_partitions,
    h_of_p,
    hilbert_cmp,
    hilbert_min,
    is_stable,
    order_of_diagonals,
    p_of_h,
    partitions_up_to,
    qp_predicted,
    repeat_partition,
    string_stats,
)

log = logging.getLogger(__name__)

PH_NMAX_LIMIT = 14
PENCIL_TRIALS = 3
PINNED_QP = {(5, 4, 2, 2): (9, 4), (8, 7, 7, 5, 5, 4, 2, 2, 2): (22, 14, 6)}


@dataclass(frozen=True)
class Config:
    prime: int = DEFAULT_PRIME
    trials: int = 20
    seed: int = 0
    nmax: int = 8
    allow_small_characteristic: bool = False
    jobs: int = 1

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.prime <= self.nmax and not self.allow_small_characteristic:
            raise ValueError(
                f"prime {self.prime} must exceed nmax={self.nmax} (pass allow_small_characteristic)"
            )
        if self.trials < 1 or self.nmax < 0 or self.seed < 0 or self.jobs < 1:
            raise ValueError("trials and jobs must be positive; nmax and seed nonnegative")

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.prime)

    def echo(self) -> dict:
        # jobs does not influence results, so it stays out of the report
        d = asdict(self)
        d.pop("jobs")
        return d

    def rng(self, tag: str, P: Iterable[int] = ()) -> np.random.Generator:
        P = tuple(P)
        return np.random.default_rng([self.seed, zlib.crc32(tag.encode()), len(P), *P])


@dataclass
class ExperimentReport:
    suite: str
    config: dict
    verdicts: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    duration: float = 0.0

    @property
    def inconclusive(self) -> int:
        return sum(v["status"] == "inconclusive" for v in self.verdicts)

    @property
    def failures(self) -> int:
        return len(self.counterexamples)

    @property
    def exit_status(self) -> int:
        if self.counterexamples:
            return 1
        if self.inconclusive:
            return 2
        return 0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "config": self.config,
            "verdicts": self.verdicts,
            "counterexamples": self.counterexamples,
            "summary": {
                "checked": len(self.verdicts),
                "counterexamples": self.failures,
                "inconclusive": self.inconclusive,
                "status": self.exit_status,
            },
        }
        if timing:
            out["duration"] = self.duration
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2)

    def summary_line(self) -> str:
        state = {0: "pass", 1: "FAIL", 2: "INCONCLUSIVE"}[self.exit_status]
        return (
            f"{self.suite}: {state} ({len(self.verdicts)} checked, "
            f"{self.failures} counterexamples, {self.inconclusive} inconclusive)"
        )


def exit_status(reports: Iterable[ExperimentReport]) -> int:
    """1 if any counterexample, else 2 if any inconclusive entry, else 0."""
    codes = {r.exit_status for r in reports}
    return 1 if 1 in codes else 2 if 2 in codes else 0


def _ce(P, check: str, expected, observed, cfg: Config, **extra) -> dict:
    out = {
        "P": list(P),
        "check": check,
        "expected": _plain(expected),
        "observed": _plain(observed),
        "seed": cfg.seed,
    }
    out.update({k: _plain(v) for k, v in extra.items()})
    return out


def _plain(x):
    if isinstance(x, FieldMatrix):
        return x.to_json()
    if isinstance(x, Order):
        return x.value
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def _run(suite: str, cfg: Config, checker: Callable, items: list) -> ExperimentReport:
    t0 = time.perf_counter()
    report = ExperimentReport(suite, cfg.echo())
    fn = partial(_guarded, checker, cfg)
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(fn, items))
    else:
        results = [fn(x) for x in items]
    for verdict, ces in results:
        report.verdicts.append(verdict)
        report.counterexamples.extend(ces)
    report.duration = time.perf_counter() - t0
    log.info("%s finished in %.2fs", suite, report.duration)
    return report


def _guarded(checker: Callable, cfg: Config, item) -> tuple[dict, list[dict]]:
    key = list(item) if isinstance(item, tuple) else []
    try:
        return checker(item, cfg)
    except InconclusiveSampling as exc:
        return {"P": key, "status": "inconclusive", "reason": str(exc)}, []
    except Exception as exc:  # noqa: BLE001 - anomalies are data here
        return (
            {"P": key, "status": "fail", "error": f"{type(exc).__name__}: {exc}"},
            [_ce(key, "error", None, f"{type(exc).__name__}: {exc}", cfg)],
        )


def _verdict(P, ces: list, **data) -> tuple[dict, list[dict]]:
    v = {"P": list(P), "status": "fail" if ces else "pass"}
    v.update({k: _plain(x) for k, x in data.items()})
    return v, ces


def _partitions(cfg: Config) -> list[Partition]:
    return list(partitions_up_to(cfg.nmax))


# -- stable partitions --------------------------------------------------------


def _check_stable(P: Partition, cfg: Config):
    est = estimate_qp(P, cfg.trials, cfg.rng("stable", P), cfg.field)
    Q = est.partition
    stable = is_stable(P)
    ces = []
    if stable != (Q == P):
        ces.append(_ce(P, "stable iff Q(P)=P", P if stable else "Q(P) != P", Q, cfg, stable=stable))
    data = {"stable": stable, "QP": Q}
    if stable and 2 * P.n <= cfg.nmax:
        cP = repeat_partition(2, P)
        Q2 = estimate_qp(cP, cfg.trials, cfg.rng("stable-2P", P), cfg.field).partition
        want = Partition(2 * x for x in P)
        data["Q2P"] = Q2
        if Q2 != want:
            ces.append(_ce(P, "Q(2P)=2p_i", want, Q2, cfg))
    return _verdict(P, ces, **data)


def verify_stable(cfg: Config) -> ExperimentReport:
    """``is_stable(P)`` iff the sampled ``Q(P)`` equals ``P``; ``Q(2P)`` doubles stable parts."""
    return _run("stable", cfg, _check_stable, _partitions(cfg))


# -- closed form for equal-length strings ------------------------------------------


def _check_qp_strings(P: Partition, cfg: Config):
    predicted = qp_predicted(P)
    est = estimate_qp(P, cfg.trials, cfg.rng("qp-strings", P), cfg.field)
    ces = []
    if est.partition != predicted:
        ces.append(_ce(P, "Q(P)=tilde", predicted, est.partition, cfg))
    return _verdict(P, ces, predicted=predicted, QP=est.partition, pinned=P.n > cfg.nmax)


def verify_qp_strings(cfg: Config) -> ExperimentReport:
    items = [P for P in _partitions(cfg) if qp_predicted(P) is not None]
    # pinned fixtures beyond nmax are always checked
    items += [Partition(P) for P in PINNED_QP if sum(P) > cfg.nmax and cfg.prime > sum(P)]
    return _run("qp-strings", cfg, _check_qp_strings, items)


# -- number of parts, dominance of samples, rank bound of s_P-th powers ---------------


def _check_parts(P: Partition, cfg: Config):
    samples: list[FieldMatrix] = []
    est = estimate_qp(P, cfg.trials, cfg.rng("parts", P), cfg.field, samples=samples)
    r = string_stats(P).r
    ces = []
    if len(est.partition) != r:
        ces.append(_ce(P, "Q(P) has r_P parts", r, len(est.partition), cfg))
    for A, obs in zip(samples, est.observed):
        if not dominates(est.partition, obs):
            ces.append(_ce(P, "Q(P) >= P_A", est.partition, obs, cfg, matrix=A))
        if not check_power_rank_bound(P, A):
            ces.append(_ce(P, "rank (A^s)^m <= rank B^m", True, False, cfg, matrix=A))
    return _verdict(P, ces, r=r, QP=est.partition)


def verify_parts_and_dominance(cfg: Config) -> ExperimentReport:
    return _run("parts-dominance", cfg, _check_parts, _partitions(cfg))


# -- P(H) maximality and the bijection with Hilbert functions ------------------------


def hilbert_functions_direct(n: int) -> list[tuple[int, ...]]:
    """All sequences ``(1, 2, ..., nu, h_nu >= ... >= h_j > 0)`` summing to ``n``."""
    out = []

    def tails(rem: int, cap: int):
        if rem == 0:
            yield ()
            return
        for h in range(min(rem, cap), 0, -1):
            for t in tails(rem - h, h):
                yield (h,) + t

    nu = 1
    while nu * (nu + 1) // 2 <= n:
        head = tuple(range(1, nu + 1))
        rem = n - sum(head)
        for t in tails(rem, nu):
            out.append(head + t)
        nu += 1
    return out


def _check_ph_level(n: int, cfg: Config):
    groups: dict[tuple[int, ...], list[Partition]] = {}
    for P in enumerate_partitions(n):
        groups.setdefault(diagonal_lengths(P), []).append(P)
    ces = []
    for H, members in groups.items():
        top = p_of_h(H)
        if top not in members:
            ces.append(_ce(top, "P(H) has diagonal lengths H", H, diagonal_lengths(top), cfg))
        for P in members:
            if not dominates(top, P):
                ces.append(_ce(P, "P(H) >= P", top, dominance_cmp(top, P), cfg, H=H))
    hs = hilbert_functions_direct(n)
    distinct = [P for P in enumerate_partitions(n) if P.has_distinct_parts()]
    if len(hs) != len(distinct):
        ces.append(_ce((), "bijection count", len(distinct), len(hs), cfg, n=n))
    for H in hs:
        if h_of_p(p_of_h(H)) != H:
            ces.append(_ce(p_of_h(H), "h_of_p(p_of_h(H)) = H", H, h_of_p(p_of_h(H)), cfg))
        if H not in groups:
            ces.append(_ce((), "every H is a diagonal-length sequence", H, None, cfg))
    for P in distinct:
        if p_of_h(h_of_p(P)) != P:
            ces.append(_ce(P, "p_of_h(h_of_p(P)) = P", P, p_of_h(h_of_p(P)), cfg))
    for i, P in enumerate(distinct):
        for P2 in distinct[i + 1 :]:
            if (dominance_cmp(P, P2) is Order.GREATER) != (
                hilbert_cmp(h_of_p(P), h_of_p(P2)) is Order.LESS
            ):
                ces.append(_ce(P, "order reversal", "greater<->less", [P2], cfg))
            if (dominance_cmp(P2, P) is Order.GREATER) != (
                hilbert_cmp(h_of_p(P2), h_of_p(P)) is Order.LESS
            ):
                ces.append(_ce(P2, "order reversal", "greater<->less", [P], cfg))
    v = {"P": [], "n": n, "status": "fail" if ces else "pass", "groups": len(groups), "hilbert_functions": len(hs)}
    return v, ces


def verify_ph_maximality(cfg: Config) -> ExperimentReport:
    """Brute force over all partitions of each ``n <= nmax`` (no randomness)."""
    if cfg.nmax > PH_NMAX_LIMIT:
        raise ValueError(f"ph-maximality is brute force; nmax must be <= {PH_NMAX_LIMIT}")
    return _run("ph-maximality", cfg, _check_ph_level, list(range(1, cfg.nmax + 1)))


# -- pencils, Hilbert functions and Q(P) ----------------------------------------------


def _sampled_pairs(P: Partition, cfg: Config, tag: str):
    samples: list[FieldMatrix] = []
    est = estimate_qp(P, cfg.trials, cfg.rng(tag, P), cfg.field, samples=samples)
    B = jordan_matrix(P, cfg.field)
    return est, [CommutingPair(A, B) for A in samples]


def _check_pencil(P: Partition, cfg: Config):
    est, pairs = _sampled_pairs(P, cfg, "pencil")
    rng = cfg.rng("pencil-lambda", P)
    ces, hs = [], []
    for pair in pairs:
        if pair.dim != P.n:
            ces.append(_ce(P, "dim K[A,B] = n", P.n, pair.dim, cfg, matrix=pair.A))
            continue
        H = hilbert_function(pair)
        if not H.valid:
            ces.append(_ce(P, "Hilbert function shape", "(1,2,..,nu,...)", H.values, cfg, matrix=pair.A))
            continue
        hs.append(H.hilbert)
        PH = p_of_h(H.hilbert)
        gp = generic_pencil_partition(pair, PENCIL_TRIALS, rng, check=False)
        if gp != PH:
            ces.append(_ce(P, "generic pencil = P(H)", PH, gp, cfg, matrix=pair.A, H=H.values))
        if not gp.has_distinct_parts():
            ces.append(_ce(P, "generic pencil has distinct parts", "distinct", gp, cfg, matrix=pair.A))
        at_inf = pencil_partition(pair, INFINITY)
        if not dominates(PH, at_inf):
            ces.append(_ce(P, "P(H) >= pencil at infinity", PH, at_inf, cfg, matrix=pair.A))
    if not hs:
        return _verdict(P, ces, QP=est.partition)
    qmax = dominance_max(p_of_h(H) for H in hs)
    hmin = hilbert_min(hs)
    if qmax is None or hmin is None:
        raise InconclusiveSampling(f"no extremum among sampled Hilbert functions {sorted(set(hs))}")
    if not (est.partition == qmax == p_of_h(hmin)):
        ces.append(_ce(P, "Q(P) = max P(H) = P(H_min)", est.partition, [qmax, p_of_h(hmin)], cfg))
    dist = sorted({tuple(h) for h in hs})
    return _verdict(P, ces, QP=est.partition, H_min=hmin, H_observed=dist)


def verify_pencil_and_hilbert(cfg: Config) -> ExperimentReport:
    _require_large_prime(cfg, "pencil-hilbert")
    return _run("pencil-hilbert", cfg, _check_pencil, _partitions(cfg))


# -- Gorenstein property of generic pairs ---------------------------------------------


def _check_gorenstein(P: Partition, cfg: Config):
    est, pairs = _sampled_pairs(P, cfg, "gorenstein")
    ces = []
    for pair in pairs:
        s = socle(pair).socle_dim
        if s != 1:
            ces.append(_ce(P, "socle dimension 1", 1, s, cfg, matrix=pair.A))
        H = hilbert_function(pair)
        if not H.valid or not hilbert_drop_check(H.hilbert, 2):
            ces.append(_ce(P, "drops <= 1 beyond the order", True, H.values, cfg, matrix=pair.A))
    if not is_stable(est.partition):
        ces.append(_ce(P, "Q(P) stable", "gaps >= 2", est.partition, cfg))
    return _verdict(P, ces, QP=est.partition)


def verify_gorenstein(cfg: Config) -> ExperimentReport:
    _require_large_prime(cfg, "gorenstein")
    return _run("gorenstein", cfg, _check_gorenstein, _partitions(cfg))


def _require_large_prime(cfg: Config, suite: str):
    if cfg.prime <= cfg.nmax:
        raise ValueError(f"{suite} needs prime > nmax")


# -- characteristic sensitivity ---------------------------------------------------


def characteristic_sensitivity(d: int, p_small: int, cfg: Config | None = None) -> ExperimentReport:
    """Contrast the pencil of the McNinch pair over ``F_{p_small}`` and the large prime."""
    cfg = cfg or Config(allow_small_characteristic=True)
    if not cfg.allow_small_characteristic:
        raise ValueError("characteristic_sensitivity needs allow_small_characteristic")
    if not is_prime(p_small) or d % p_small:
        raise ValueError(f"p_small={p_small} must be a prime dividing d={d}")
    t0 = time.perf_counter()
    report = ExperimentReport("char-sensitivity", {**cfg.echo(), "d": d, "p_small": p_small})
    small = mcninch_pair(d, PrimeField(p_small))
    ts_small = list(range(1, min(p_small, 6)))
    got_small = [pencil_partition(small, t) for t in ts_small]
    large_field = PrimeField(DEFAULT_PRIME)
    large = mcninch_pair(d, large_field)
    rng = cfg.rng("char-sensitivity", (d, p_small))
    ts_large = [int(t) for t in rng.integers(1, large_field.p, 5)]
    got_large = [pencil_partition(large, t) for t in ts_large]
    for label, field_p, ts, got, want in (
        ("small", p_small, ts_small, got_small, Partition((d, d))),
        ("large", large_field.p, ts_large, got_large, Partition((d + 1, d - 1)) if d > 1 else Partition((2,))),
    ):
        ces = [
            _ce((d,), f"pencil over F_{field_p}", want, g, cfg, t=t)
            for t, g in zip(ts, got)
            if g != want
        ]
        report.verdicts.append(
            {"P": [d], "status": "fail" if ces else "pass", "field": label, "p": field_p,
             "t": ts, "partitions": _plain(got)}
        )
        report.counterexamples.extend(ces)
    report.duration = time.perf_counter() - t0
    return report


# -- all suites, table ----------------------------------------------------------------

SUITES: dict[str, Callable[[Config], ExperimentReport]] = {
    "stable": verify_stable,
    "qp-strings": verify_qp_strings,
    "parts-dominance": verify_parts_and_dominance,
    "ph-maximality": verify_ph_maximality,
    "pencil-hilbert": verify_pencil_and_hilbert,
    "gorenstein": verify_gorenstein,
}


def verify_all(cfg: Config) -> list[ExperimentReport]:
    """Every suite in the fixed order of ``SUITES``; char-sensitivity (d=3, p=3) last when allowed."""
    reports = [run(cfg) for run in SUITES.values()]
    if cfg.allow_small_characteristic:
        reports.append(characteristic_sensitivity(3, 3, cfg))
    return reports


TABLE_COLUMNS = ("P", "n", "r_P", "s_P", "stable", "predicted", "QP", "H_min", "H_QP", "nu_QP")


def _table_row(P: Partition, cfg: Config) -> dict:
    st = string_stats(P)
    row = {
        "P": list(P),
        "n": P.n,
        "r_P": st.r,
        "s_P": st.s,
        "stable": is_stable(P),
        "predicted": _plain(qp_predicted(P)) if P else [],
    }
    if not P:
        row.update(QP=[], H_min=[], H_QP=[], nu_QP=0)
        return row
    est, pairs = _sampled_pairs(P, cfg, "table")
    hs = [hilbert_function(pr) for pr in pairs if pr.dim == P.n]
    hmin = hilbert_min(h.hilbert for h in hs if h.valid) if hs else None
    Q = est.partition
    row.update(
        QP=list(Q),
        H_min=list(hmin) if hmin is not None else None,
        H_QP=list(diagonal_lengths(Q)),
        nu_QP=order_of_diagonals(Q),
    )
    return row


def qp_table(cfg: Config) -> list[dict]:
    """One row per partition of every ``n <= nmax`` (including the empty partition)."""
    items = list(partitions_up_to(cfg.nmax, start=0))
    fn = partial(_table_row, cfg=cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(P) for P in items]


def _cell(v) -> str:
    if isinstance(v, list):
        return ",".join(map(str, v))
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def table_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for row in rows:
        w.writerow([_cell(row[c]) for c in TABLE_COLUMNS])
    return buf.getvalue()


def table_to_text(rows: list[dict]) -> str:
    lines = ["\t".join(TABLE_COLUMNS)]
    for row in rows:
        lines.append("\t".join(_cell(row[c]) or "-" for c in TABLE_COLUMNS))
    return "\n".join(lines) + "\n"


__all__ = [
    "Config",
    "ExperimentReport",
    "SUITES",
    "verify_stable",
    "verify_qp_strings",
    "verify_parts_and_dominance",
    "verify_ph_maximality",
    "verify_pencil_and_hilbert",
    "verify_gorenstein",
    "characteristic_sensitivity",
    "verify_all",
    "qp_table",
    "table_to_csv",
    "exit_status",
    "hilbert_functions_direct",
]
