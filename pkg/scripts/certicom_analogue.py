"""Certify random keys as not weak up to a bound, at desk scale.

Generates random keys on each curve, audits them with BSGS and reports the
per-key cost. The default bound 2^20 finishes in minutes; larger bounds
scale as sqrt(B).

    python scripts/certicom_analogue.py --bound-exp 24 secp256k1
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass, field

from weakdl.ecgroup import registry_get
from weakdl.weaksolve import audit_key


@dataclass
class CertifyConfig:
    curves: list[str] = field(default_factory=lambda: ["secp256k1", "P-256"])
    bound: int = 2**20
    keys: int = 10
    seed: int = 8


def run(cfg: CertifyConfig):
    rng = random.Random(cfg.seed)
    for name in cfg.curves:
        curve = registry_get(name)
        start = time.perf_counter()
        reports = []
        for i in range(cfg.keys):
            g1 = curve.scalar_mul(rng.randrange(2, curve.p), curve.G)
            reports.append(audit_key(g1, curve, cfg.bound, key_id=f"{name}#{i}"))
        elapsed = time.perf_counter() - start
        ok = sum(not r.weak and r.complete for r in reports)
        adds = sum(r.point_adds for r in reports) / len(reports)
        yield name, ok, reports, adds, elapsed


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("curves", nargs="*", default=["secp256k1", "P-256"])
    ap.add_argument("--bound-exp", type=int, default=20)
    ap.add_argument("--keys", type=int, default=10)
    ap.add_argument("--seed", type=int, default=8)
    a = ap.parse_args(argv)
    cfg = CertifyConfig(a.curves, 2**a.bound_exp, a.keys, a.seed)
    for name, ok, reports, adds, elapsed in run(cfg):
        print(f"{name}: {ok}/{len(reports)} certified not weak up to 2^{a.bound_exp}, "
              f"subgroups {reports[0].subgroups_tested}, {adds:.0f} adds/key, {elapsed:.1f}s")


if __name__ == "__main__":
    main()
