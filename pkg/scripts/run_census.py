"""Census table over registry curves, written as text, CSV or JSON.

    python scripts/run_census.py --format csv --out census.csv
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from weakdl.census import DEFAULT_BOUNDS, census_row, emit_table
from weakdl.ecgroup import registry_get, registry_names
from weakdl.factorization import EffortBudget


@dataclass
class CensusConfig:
    curves: list[str] = field(default_factory=list)  # empty means every registry curve
    bounds: tuple[int, ...] = DEFAULT_BOUNDS
    rho_iterations: int = EffortBudget().rho_iterations
    fmt: str = "text"
    include_toys: bool = False


def run(cfg: CensusConfig):
    names = cfg.curves or [n for n in registry_names() if cfg.include_toys or not n.startswith("toy")]
    effort = EffortBudget(rho_iterations=cfg.rho_iterations)
    rows = []
    for name in names:
        start = time.perf_counter()
        rows.append(census_row(registry_get(name), cfg.bounds, effort))
        print(f"{name}: {time.perf_counter() - start:.1f}s", file=sys.stderr, flush=True)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("curves", nargs="*")
    ap.add_argument("--bounds", default="32,64,128,160", help="exponents of 2")
    ap.add_argument("--rho", type=int, default=CensusConfig.rho_iterations)
    ap.add_argument("--format", choices=["text", "csv", "json"], default="text")
    ap.add_argument("--toys", action="store_true", help="include the toy curves")
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    cfg = CensusConfig(a.curves, tuple(2 ** int(e) for e in a.bounds.split(",")), a.rho, a.format, a.toys)
    text = emit_table(run(cfg), cfg.fmt)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
