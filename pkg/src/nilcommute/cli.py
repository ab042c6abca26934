"""Command-line entry point: ``nilcommute <subcommand> [args] [flags]``.

Exit status: 0 success, 1 counterexamples found, 2 inconclusive sampling,
64 usage errors (bad partitions, invalid Hilbert functions, unreadable files).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import algebra, harness
from .commutant import InconclusiveSampling, estimate_qp
from .exactla import DEFAULT_PRIME, PrimeField, is_prime
from .partitions import (
    HilbertFunction,
    Partition,
    diagonal_lengths,
    dual,
    h_of_p,
    is_stable,
    p_of_h,
    power_partition,
    string_stats,
)

EX_USAGE = 64

log = logging.getLogger("nilcommute")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _partition(text: str) -> Partition:
    try:
        raw = [int(x) for x in text.strip().strip("()[]").split(",") if x.strip()]
        P = Partition(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed partition {text!r}") from None
    if list(P) != raw:
        print(f"warning: partition {text} reordered to {P}", file=sys.stderr)
    return P


def _hilbert(text: str) -> HilbertFunction:
    try:
        return HilbertFunction.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid Hilbert function {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


VERIFY_CHOICES = [*harness.SUITES, "char-sensitivity", "all"]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prime", type=_positive, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=_positive, default=20)
    common.add_argument("--seed", type=_nonneg, default=0)
    common.add_argument("--nmax", type=_nonneg, default=8)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--allow-small-char", action="store_true")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--jobs", type=_positive, default=1)

    parser = _Parser(prog="nilcommute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    add("qp", "sample Q(P), the generic Jordan type in the nilpotent commutator").add_argument("P", type=_partition)
    add("stable", "is P stable (parts differ pairwise by >= 2)").add_argument("P", type=_partition)
    add("strings", "r_P, s_P and all minimal string decompositions").add_argument("P", type=_partition)
    add("dual", "dual (transposed) partition").add_argument("P", type=_partition)
    add("diag", "diagonal lengths of P").add_argument("P", type=_partition)
    add("ph", "P(H) for a Hilbert function H").add_argument("H", type=_hilbert)
    add("hofp", "Hilbert function of a partition with distinct parts").add_argument("P", type=_partition)
    pw = add("power", "Jordan type of J_P^i")
    pw.add_argument("P", type=_partition)
    pw.add_argument("i", type=_positive)
    add("pair-report", "report on a commuting pair read from JSON").add_argument(
        "file", nargs="?", default="-", help="pair JSON file, '-' for stdin"
    )
    add("mcninch", "report on the pair J_d (x) I_2, I_d (x) J_2").add_argument("d", type=_positive)
    add("verify", "run verification suites").add_argument("suite", choices=VERIFY_CHOICES)
    add("table", "Q(P) table for every partition up to nmax")
    return parser


def _field(args) -> PrimeField:
    if not is_prime(args.prime):
        raise UsageError(f"--prime {args.prime} is not prime")
    return PrimeField(args.prime)


def _config(args) -> harness.Config:
    try:
        return harness.Config(
            prime=args.prime,
            trials=args.trials,
            seed=args.seed,
            nmax=args.nmax,
            allow_small_characteristic=args.allow_small_char,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, text_lines: list[str], payload) -> str:
    if args.format == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.format == "csv":
        raise UsageError("--format csv is only supported by 'table'")
    return "\n".join(text_lines) + "\n"


def _seq(x) -> str:
    return ",".join(map(str, x))


def _pair_output(args, pair: algebra.CommutingPair, extra: dict | None = None) -> str:
    rep = algebra.pair_report(pair, trials=min(args.trials, 5), rng=args.seed)
    payload = rep.to_json()
    lines = [
        f"dim: {rep.dim}",
        f"H: {_seq(rep.H)}",
        f"socle: {rep.socle}",
        f"generic pencil: {_seq(rep.generic_pencil)}",
        f"cyclic: {str(rep.cyclic).lower()}",
    ]
    for k, v in (extra or {}).items():
        payload[k] = v
        lines.append(f"{k}: {_seq(v) if isinstance(v, list) else v}")
    return _emit(args, lines, payload)


def _read_pair(path: str) -> algebra.CommutingPair:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return algebra.CommutingPair.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad pair JSON: {exc}") from None


def _dispatch(args) -> tuple[str, int]:
    cmd = args.command
    if cmd == "qp":
        field = _field(args)
        if field.p <= args.P.n and not args.allow_small_char:
            raise UsageError(f"--prime must exceed n={args.P.n}")
        est = estimate_qp(args.P, args.trials, args.seed, field)
        return _emit(args, [f"QP: {est.partition}"], est.to_json()), 0
    if cmd == "stable":
        v = is_stable(args.P)
        return _emit(args, [f"stable: {str(v).lower()}"], {"P": list(args.P), "stable": v}), 0
    if cmd == "strings":
        st = string_stats(args.P)
        decs = sorted([[list(b) for b in d.blocks] for d in st.decompositions], reverse=True)
        lines = [f"r_P: {st.r}", f"s_P: {st.s}"]
        lines += ["decomposition: " + " | ".join(_seq(b) for b in d) for d in decs]
        return _emit(args, lines, {"P": list(args.P), "r_P": st.r, "s_P": st.s, "decompositions": decs}), 0
    if cmd == "dual":
        d = dual(args.P)
        return _emit(args, [f"dual: {d}"], {"P": list(args.P), "dual": list(d)}), 0
    if cmd == "diag":
        d = diagonal_lengths(args.P)
        return _emit(args, [f"diagonal lengths: {_seq(d)}"], {"P": list(args.P), "diagonal_lengths": list(d)}), 0
    if cmd == "ph":
        P = p_of_h(args.H)
        return _emit(args, [f"P(H): {P}"], {"H": list(args.H), "PH": list(P)}), 0
    if cmd == "hofp":
        try:
            H = h_of_p(args.P)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return _emit(args, [f"H: {H}"], {"P": list(args.P), "H": list(H)}), 0
    if cmd == "power":
        Q = power_partition(args.P, args.i)
        return _emit(args, [f"power: {Q}"], {"P": list(args.P), "i": args.i, "power": list(Q)}), 0
    if cmd == "pair-report":
        return _pair_output(args, _read_pair(args.file)), 0
    if cmd == "mcninch":
        field = _field(args)
        if field.p <= 2 * args.d and not args.allow_small_char:
            raise UsageError(f"--prime must exceed n={2 * args.d} unless --allow-small-char")
        pair = algebra.mcninch_pair(args.d, field)
        A, B = algebra.jordan_types(pair)
        return _pair_output(args, pair, {"partitionA": list(A), "partitionB": list(B)}), 0
    if cmd == "verify":
        cfg = _config(args)
        if args.suite == "all":
            reports = harness.verify_all(cfg)
        elif args.suite == "char-sensitivity":
            if not cfg.allow_small_characteristic:
                raise UsageError("char-sensitivity needs --allow-small-char")
            reports = [harness.characteristic_sensitivity(3, 3, cfg)]
        else:
            try:
                reports = [harness.SUITES[args.suite](cfg)]
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        for r in reports:
            log.info("%s took %.2fs", r.suite, r.duration)
        payload = {"reports": [r.to_json() for r in reports]}
        return _emit(args, [r.summary_line() for r in reports], payload), harness.exit_status(reports)
    if cmd == "table":
        cfg = _config(args)
        rows = harness.qp_table(cfg)
        if args.format == "csv":
            return harness.table_to_csv(rows), 0
        if args.format == "json":
            return json.dumps({"rows": rows}, sort_keys=True, indent=2) + "\n", 0
        return harness.table_to_text(rows), 0
    raise UsageError(f"unknown command {cmd}")


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        out, status = _dispatch(args)
    except UsageError as exc:
        print(f"nilcommute: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except InconclusiveSampling as exc:
        print(f"nilcommute: inconclusive: {exc}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(out)
        except OSError as exc:
            print(f"nilcommute: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EX_USAGE
    else:
        stdout.write(out)
    return status


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
