"""Group operations of bsgs_weak against d on toy-2, with and without tables.

Prints one row per d with the median point additions and scalar
multiplications, then the least-squares log-log slope.
"""

from __future__ import annotations

import argparse
import math
import random
import statistics
from dataclasses import dataclass

from weakdl.ecgroup import OpCounter, registry_get
from weakdl.weaksolve import bsgs_weak, gen_weak_key, kkm_build, subgroup_context


@dataclass
class ScalingConfig:
    curve: str = "toy-2"
    exponents: tuple[int, ...] = (10, 12, 14, 16, 18, 20)
    samples: int = 5
    table_c: int = 4  # 0 means plain scalar multiplication
    seed: int = 7


def run(cfg: ScalingConfig) -> list[tuple[int, float, float]]:
    curve = registry_get(cfg.curve)
    base = kkm_build(curve.G, cfg.table_c, curve) if cfg.table_c else None
    rng = random.Random(cfg.seed)
    rows = []
    for e in cfg.exponents:
        d = 2**e
        ctx = subgroup_context(curve, d)
        adds, mults = [], []
        for _ in range(cfg.samples):
            alpha, g1 = gen_weak_key(curve, d, rng=rng)
            key = kkm_build(g1, cfg.table_c, curve) if cfg.table_c else None
            cnt = OpCounter()
            assert bsgs_weak(curve.G, g1, ctx, curve, base_table=base, key_table=key, counter=cnt) == alpha
            adds.append(cnt.point_adds)
            mults.append(cnt.scalar_mults)
        rows.append((d, statistics.median(adds), statistics.median(mults)))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curve", default="toy-2")
    ap.add_argument("--max-exp", type=int, default=20)
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--table-c", type=int, default=4)
    a = ap.parse_args(argv)
    cfg = ScalingConfig(a.curve, tuple(range(10, a.max_exp + 1, 2)), a.samples, a.table_c)
    rows = run(cfg)
    print(f"{'d':>10} {'adds':>10} {'mults':>8} {'adds/sqrt(d)':>13}")
    for d, adds, mults in rows:
        print(f"{d:>10} {adds:>10.0f} {mults:>8.0f} {adds / math.sqrt(d):>13.2f}")
    fit = statistics.linear_regression([math.log2(r[0]) for r in rows], [math.log2(r[1]) for r in rows])
    print(f"log-log slope {fit.slope:.3f}")


if __name__ == "__main__":
    main()
