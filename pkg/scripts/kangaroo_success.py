"""Kangaroo success rate on generated weak keys.

Counts first-try successes and successes after reseeded retries, and
aborts if a walk ever returns a wrong alpha.

    python scripts/kangaroo_success.py --curve toy-2 --d 65536 --trials 1000
    python scripts/kangaroo_success.py --curve secp256k1 --d 121152 --trials 200 --table-c 32
"""

from __future__ import annotations

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from weakdl.ecgroup import OpCounter, registry_get
from weakdl.weaksolve import gen_weak_key, kangaroo_weak, kkm_build, make_kangaroo_params, subgroup_context


@dataclass
class KangarooConfig:
    curve: str = "toy-2"
    d: int = 2**16
    trials: int = 1000
    retries: int = 3
    table_c: int = 4  # rows of the KKM tables; 0 disables them
    key_tables: bool = False
    wide_jumps: bool = False
    partitions: int = 1024
    seed: int = 0


def run(cfg: KangarooConfig) -> dict:
    curve = registry_get(cfg.curve)
    ctx = subgroup_context(curve, cfg.d)
    base = kkm_build(curve.G, cfg.table_c, curve) if cfg.table_c else None
    rng = random.Random(cfg.seed)
    attempts = Counter()
    adds = []
    for trial in range(cfg.trials):
        alpha, g1 = gen_weak_key(curve, cfg.d, rng=rng)
        key = kkm_build(g1, cfg.table_c, curve) if cfg.table_c and cfg.key_tables else None
        cnt = OpCounter()
        used = None
        for attempt in range(cfg.retries + 1):
            params = make_kangaroo_params(
                cfg.d, L=cfg.partitions, seed=cfg.seed * 10**6 + trial * 10 + attempt, wide_jumps=cfg.wide_jumps
            )
            got = kangaroo_weak(curve.G, g1, ctx, params, curve, base_table=base, key_table=key, counter=cnt)
            if got is not None:
                if got != alpha:
                    raise SystemExit(f"trial {trial}: wrong alpha {got}")
                used = attempt + 1
                break
        attempts[used] += 1
        adds.append(cnt.point_adds)
    adds.sort()
    return {
        "trials": cfg.trials,
        "first_try": attempts[1],
        "solved": cfg.trials - attempts[None],
        "attempts": dict(sorted((k or 0, v) for k, v in attempts.items())),
        "median_point_adds": adds[len(adds) // 2],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curve", default="toy-2")
    ap.add_argument("--d", type=int, default=2**16)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--retries", type=int, default=3)
    ap.add_argument("--table-c", type=int, default=4)
    ap.add_argument("--key-tables", action="store_true")
    ap.add_argument("--wide", action="store_true", help="wide jump distribution")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    cfg = KangarooConfig(a.curve, a.d, a.trials, a.retries, a.table_c, a.key_tables, a.wide, seed=a.seed)
    start = time.perf_counter()
    res = run(cfg)
    print(f"{cfg.curve} d={cfg.d}: first try {res['first_try']}/{res['trials']} "
          f"({100 * res['first_try'] / res['trials']:.1f}%), solved {res['solved']}/{res['trials']} "
          f"within {cfg.retries} retries")
    print(f"attempts histogram (0 = unsolved): {res['attempts']}")
    print(f"median point adds per instance: {res['median_point_adds']}, {time.perf_counter() - start:.0f}s")


if __name__ == "__main__":
    main()
