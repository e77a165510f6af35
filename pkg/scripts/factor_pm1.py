"""Factor p - 1 for registry curves offline and write the shipped hint file.

Uses sympy's ECM, which is far stronger than the bounded rho used at run
time. Each curve gets a wall-clock limit; curves that time out keep whatever
hints they already had. Results are cached in a JSON file so the script can
be rerun with a larger limit.

    python scripts/factor_pm1.py --limit 600 --cache /tmp/pm1.json
"""

from __future__ import annotations

import argparse
import json
import multiprocessing as mp
import time
from pathlib import Path

import sympy

from weakdl.ecgroup import registry_get, registry_names
from weakdl.factorization import PRE_TRIAL_BOUND

HINTS = Path(__file__).resolve().parent.parent / "src" / "weakdl" / "data" / "pm1_hints.txt"


def _factor(n, queue):
    queue.put({str(q): int(e) for q, e in sympy.factorint(n, use_ecm=True).items()})


def factor_with_limit(n: int, limit: float) -> dict[int, int] | None:
    queue: mp.Queue = mp.Queue()
    proc = mp.Process(target=_factor, args=(n, queue))
    proc.start()
    proc.join(limit)
    if proc.is_alive():
        proc.terminate()
        return None
    return {int(q): e for q, e in queue.get().items()}


def write_hints(results: dict[str, dict[int, int]], path: Path = HINTS) -> None:
    lines = [
        "# Prime factors of p - 1 above the built-in trial division range,",
        "# found offline with scripts/factor_pm1.py. Each section lists every",
        "# such prime, so together with trial division the factorization is",
        "# complete. Verified at load time (each must be prime and divide p - 1).",
    ]
    for name in sorted(results, key=str.lower):
        primes = sorted(q for q in results[name] if q >= PRE_TRIAL_BOUND)
        lines.append("")
        lines.append(f"[{name}]")
        lines.extend(str(q) for q in primes)
    path.write_text("\n".join(lines) + "\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=float, default=90.0, help="seconds per curve")
    ap.add_argument("--cache", type=Path, default=Path("pm1_factors.json"))
    ap.add_argument("--out", type=Path, default=HINTS)
    ap.add_argument("curves", nargs="*", help="registry names (default: all)")
    args = ap.parse_args(argv)

    cache = json.loads(args.cache.read_text()) if args.cache.exists() else {}
    for name in args.curves or registry_names():
        if name in cache:
            continue
        n = registry_get(name).p - 1
        start = time.time()
        found = factor_with_limit(n, args.limit)
        if found is None:
            print(f"{name}: timed out after {args.limit:.0f}s", flush=True)
            continue
        assert sympy.prod(q**e for q, e in found.items()) == n
        cache[name] = {str(q): e for q, e in found.items()}
        args.cache.write_text(json.dumps(cache, indent=1))
        print(f"{name}: {len(found)} primes in {time.time() - start:.1f}s", flush=True)

    results = {k: {int(q): e for q, e in v.items()} for k, v in cache.items()}
    write_hints(results, args.out)
    print(f"wrote {len(results)} sections to {args.out}")


if __name__ == "__main__":
    main()
