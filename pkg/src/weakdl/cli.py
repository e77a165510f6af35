"""Command-line front end: ``weakdl audit|census|genweak|factor``."""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .census import census_row, emit_table
from .ecgroup import CurveParams, OpCounter, load_curve_file, registry_get, registry_names
from .errors import UnknownCurve, WeakDLError
from .factorization import EffortBudget, factor_bounded, load_hints

EXIT_OK, EXIT_WEAK, EXIT_USAGE, EXIT_DATA = 0, 10, 2, 3
HINTS_ENV = "WEAKDL_HINTS"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def parse_int(text: str) -> int:
    """Decimal, 0x hex, or a power written ``2^20`` / ``2**20``."""
    t = text.strip().replace("**", "^")
    m = re.fullmatch(r"(\d+)\^(\d+)", t)
    try:
        value = int(m.group(1)) ** int(m.group(2)) if m else int(t, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    return value


def positive_int(text: str) -> int:
    value = parse_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def parse_bounds(text: str) -> list[int]:
    """Census bounds are exponents: ``32,64`` means 2^32 and 2^64."""
    try:
        exps = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad bound list {text!r}") from None
    if not exps or any(e < 0 for e in exps):
        raise argparse.ArgumentTypeError("need a nonempty list of nonnegative exponents")
    return sorted({2**e for e in exps})


# --- shared helpers ------------------------------------------------------


def _hint_sections(path: str | None):
    path = path or os.environ.get(HINTS_ENV)
    if not path:
        return {}
    try:
        return load_hints(path)
    except OSError as exc:
        raise DataError(f"cannot read hints {path}: {exc}") from exc


def _hints_for(sections, name: str | None):
    out = list(sections.get(None, ()))
    if name is not None:
        lowered = {k.lower(): v for k, v in sections.items() if k is not None}
        out += lowered.get(name.lower(), [])
    return out


def _effort(args) -> EffortBudget:
    return EffortBudget(rho_iterations=args.effort) if args.effort else EffortBudget()


def _load_curve(args, need_arithmetic: bool = True):
    if getattr(args, "curve_file", None):
        try:
            return load_curve_file(args.curve_file)
        except OSError as exc:
            raise DataError(f"cannot read curve file: {exc}") from exc
    if not args.curve:
        raise UsageError("one of --curve or --curve-file is required")
    entry = registry_get(args.curve)
    if need_arithmetic and not isinstance(entry, CurveParams):
        raise DataError(f"{entry.name}: only the group order is known, no curve arithmetic")
    return entry


def _read_keys(args, curve: CurveParams) -> list[tuple[str, object]]:
    if args.key:
        return [(args.key, _decode(curve, args.key, None))]
    try:
        lines = Path(args.keys).read_text().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read key file: {exc}") from exc
    keys = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            keys.append((line, _decode(curve, line, lineno)))
    return keys


def _decode(curve: CurveParams, text: str, lineno: int | None):
    try:
        return curve.decode_hex(text)
    except WeakDLError as exc:
        where = f"line {lineno}: " if lineno else ""
        raise DataError(f"{where}{exc}") from exc


def _progress_printer(label: str):
    def report(counter: OpCounter) -> None:
        print(
            f"[{label}] scalar_mults={counter.scalar_mults} point_adds={counter.point_adds}",
            file=sys.stderr,
            flush=True,
        )

    return report


# --- audit ---------------------------------------------------------------


def _audit_one(job):
    from .weaksolve import audit_key

    key_text, point, curve, args_d, hints = job
    return audit_key(
        point,
        curve,
        args_d["bound"],
        args_d["strategy"],
        hints,
        effort=args_d["effort"],
        seed=args_d["seed"],
        key_id=key_text,
        progress=_progress_printer(key_text[:16]) if args_d["progress"] else None,
    )


def cmd_audit(args) -> int:
    curve = _load_curve(args)
    hints = _hints_for(_hint_sections(args.hints), curve.name)
    keys = _read_keys(args, curve)
    if any(P is None for _, P in keys):
        raise DataError("public key is the identity")
    shared = dict(
        bound=args.bound,
        strategy=args.strategy,
        effort=_effort(args),
        seed=args.seed,
        progress=args.progress,
    )
    jobs = [(text, P, curve, shared, hints) for text, P in keys]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            reports = list(pool.map(_audit_one, jobs))
    else:
        reports = [_audit_one(job) for job in jobs]

    for r in reports:
        if args.json:
            print(json.dumps(r.to_json(hex_scalars=args.hex)), flush=True)
        elif r.weak:
            alpha = hex(r.alpha) if args.hex else str(r.alpha)
            print(f"{r.key_id}: WEAK d={r.d} alpha={alpha} "
                  f"(scalar_mults={r.scalar_mults}, point_adds={r.point_adds})")
        else:
            state = "complete" if r.complete else "incomplete"
            print(f"{r.key_id}: not weak up to {r.bound} ({state}; "
                  f"subgroups={r.subgroups_tested}, scalar_mults={r.scalar_mults})")
    return EXIT_WEAK if any(r.weak for r in reports) else EXIT_OK


# --- census --------------------------------------------------------------


def cmd_census(args) -> int:
    names = [n.strip() for n in args.curves.split(",") if n.strip()]
    if not names:
        raise UsageError("empty curve list")
    if names == ["all"]:
        names = registry_names()
    sections = _hint_sections(args.hints)
    entries = [registry_get(n) for n in names]
    rows = [
        census_row(e, args.bounds, _effort(args), _hints_for(sections, e.name)) for e in entries
    ]
    sys.stdout.write(emit_table(rows, args.format))
    if args.format == "json":
        sys.stdout.write("\n")
    return EXIT_OK


# --- genweak -------------------------------------------------------------


def cmd_genweak(args) -> int:
    from .weaksolve import gen_weak_key

    curve = _load_curve(args)
    rng = random.Random(args.seed)
    alpha, point = gen_weak_key(curve, args.d, None if args.random else args.index, rng)
    key = curve.encode_point(point, compressed=args.compressed).hex()
    shown = hex(alpha) if args.hex else str(alpha)
    if args.json:
        print(json.dumps({"curve": curve.name, "d": args.d, "alpha": shown, "key": key}))
    else:
        print(f"alpha = {shown}")
        print(f"key   = {key}")
    return EXIT_OK


# --- factor --------------------------------------------------------------


def cmd_factor(args) -> int:
    sections = _hint_sections(args.hints)
    if args.n is not None:
        n, name, hints = args.n, None, _hints_for(sections, None)
    else:
        entry = _load_curve(args, need_arithmetic=False)
        n, name = entry.p - 1, entry.name
        hints = list(entry.known_pm1_factors) + _hints_for(sections, name)
    if n < 2:
        raise UsageError("--n must be at least 2")
    f = factor_bounded(n, _effort(args), hints)
    label = f"{name}: p - 1" if name else str(n)
    if f.known_factors == ((n, 1),):
        print(f"{label} is prime")
    else:
        print(f"{label} = {f}")
    if not f.fully_factored:
        print(f"cofactor {f.cofactor} is composite; no prime factor below {f.trial_bound}")
    return EXIT_OK


# --- parser --------------------------------------------------------------


def _add_curve_args(p: argparse.ArgumentParser, file_ok: bool = True) -> None:
    p.add_argument("--curve", help="registry name (see `weakdl census --curves all`)")
    if file_ok:
        p.add_argument("--curve-file", help="curve parameters as key = value lines")


def _add_effort_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--effort", type=positive_int, help="rho iteration budget (default 2^21)")
    p.add_argument("--hints", help=f"file of known prime factors (default ${HINTS_ENV})")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weakdl", description="Weak-key audit tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("audit", help="test public keys for weakness")
    _add_curve_args(a)
    keys = a.add_mutually_exclusive_group(required=True)
    keys.add_argument("--key", help="SEC1 point as hex")
    keys.add_argument("--keys", help="file with one hex SEC1 point per line")
    a.add_argument("--bound", type=positive_int, required=True, help="e.g. 2^20 or 1048576")
    a.add_argument("--strategy", choices=("bsgs", "kangaroo"), default="bsgs")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--threads", type=positive_int, default=1, help="parallel keys")
    a.add_argument("--json", action="store_true", help="one JSON object per key")
    a.add_argument("--hex", action="store_true", help="print scalars in hex")
    a.add_argument(
        "--progress",
        action=argparse.BooleanOptionalAction,
        default=sys.stderr.isatty(),
        help="op counts on stderr per subgroup and every 2^16 point additions",
    )
    _add_effort_args(a)
    a.set_defaults(func=cmd_audit)

    c = sub.add_parser("census", help="weak-key counts and test costs per curve")
    c.add_argument("--curves", default="all", help="comma-separated names, or 'all'")
    c.add_argument("--bounds", type=parse_bounds, default=parse_bounds("32,64,128,160"),
                   help="exponents of 2, e.g. 32,64")
    c.add_argument("--format", choices=("text", "csv", "json"), default="text")
    _add_effort_args(c)
    c.set_defaults(func=cmd_census)

    g = sub.add_parser("genweak", help="make a key whose order divides d")
    _add_curve_args(g)
    g.add_argument("--d", type=positive_int, required=True)
    pick = g.add_mutually_exclusive_group()
    pick.add_argument("--index", type=parse_int, help="alpha = zeta_d^index")
    pick.add_argument("--random", action="store_true", help="uniform index (default)")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--compressed", action="store_true")
    g.add_argument("--json", action="store_true")
    g.add_argument("--hex", action="store_true")
    g.set_defaults(func=cmd_genweak)

    f = sub.add_parser("factor", help="factor p - 1 of a curve, or any integer")
    _add_curve_args(f, file_ok=True)
    f.add_argument("--n", type=parse_int)
    _add_effort_args(f)
    f.set_defaults(func=cmd_factor)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "genweak" and args.index is None:
        args.random = True
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"weakdl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownCurve as exc:
        print(f"weakdl: unknown curve {exc.args[0]!r}", file=sys.stderr)
        return EXIT_DATA
    except (DataError, WeakDLError) as exc:
        print(f"weakdl: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
