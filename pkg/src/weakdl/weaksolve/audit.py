"""Test one public key against a weakness bound B.

Only the divisibility-maximal divisors d <= B of p - 1 are searched, in
ascending order: a key whose order divides a smaller divisor also lies in
some maximal subgroup. BSGS results certify non-weakness; kangaroo
results only recover keys.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Literal

from ..ecgroup import CurveParams, OpCounter, Point
from ..errors import IdentityInput, NotADivisor
from ..factorization import (
    EffortBudget,
    PartialFactorization,
    bsgs_cost,
    divisors_up_to,
    factor_bounded,
    reduce_divisor_set,
)
from ..modarith import PrimeModulus, SubgroupContext, subgroup_generator
from .bsgs import bsgs_weak
from .kangaroo import make_kangaroo_params, kangaroo_weak
from .kkm import DEFAULT_TABLE_CAP, KKMTable, choose_c, kkm_build, table_base

Strategy = Literal["bsgs", "kangaroo"]
Outcome = Literal["weak", "not-weak"]


@dataclass
class AuditReport:
    key_id: str
    curve: str
    bound: int
    strategy: str
    subgroups_tested: list[int] = field(default_factory=list)
    outcome: Outcome = "not-weak"
    alpha: int | None = None
    d: int | None = None
    complete: bool = False
    scalar_mults: int = 0
    point_adds: int = 0
    table_adds: int = 0
    wall_ms: float = 0.0

    @property
    def weak(self) -> bool:
        return self.outcome == "weak"

    def to_json(self, hex_scalars: bool = False) -> dict:
        out = {
            "key": self.key_id,
            "curve": self.curve,
            "bound": self.bound,
            "strategy": self.strategy,
            "outcome": self.outcome,
            "subgroups_tested": self.subgroups_tested,
            "scalar_mults": self.scalar_mults,
            "point_adds": self.point_adds,
            "table_adds": self.table_adds,
            "wall_ms": round(self.wall_ms, 3),
            "complete": self.complete,
        }
        if self.weak:
            out["alpha"] = hex(self.alpha) if hex_scalars else str(self.alpha)
            out["d"] = self.d
        return out


def factor_of_divisor(d: int, f: PartialFactorization) -> list[tuple[int, int]]:
    """Prime powers of a divisor d of n, using the primes known in f."""
    out = []
    for q, _ in f.prime_powers():
        e = 0
        while d % q == 0:
            d //= q
            e += 1
        if e:
            out.append((q, e))
    if d != 1:
        raise NotADivisor("divisor has a prime factor outside the known factorization")
    return out


@lru_cache(maxsize=16)
def base_table(curve: CurveParams, c: int) -> KKMTable:
    """Table on the curve generator; shared by every key and subgroup."""
    return kkm_build(curve.G, c, curve)


def plan_tables(p: int, divisors: Iterable[int], table_cap: int) -> int | None:
    """Row count for tables, or None when plain scalar multiplication is cheaper."""
    total = bsgs_cost(divisors)
    if total == 0:
        return None
    c = choose_c(p, (total // 2) ** 2 or 1, table_cap)
    per_table = c * (math.log2(p) + table_base(p, c))
    direct = total * 1.5 * math.log2(p)
    with_tables = 2 * per_table + total * (c - 1)
    return c if with_tables < direct else None


def audit_key(
    g1: Point,
    curve: CurveParams,
    bound: int,
    strategy: Strategy = "bsgs",
    pm1_hints: Iterable[tuple[int, int]] = (),
    *,
    effort: EffortBudget = EffortBudget(),
    factorization: PartialFactorization | None = None,
    seed: int = 0,
    partitions: int = 1024,
    use_kkm: bool | None = None,
    table_cap: int = DEFAULT_TABLE_CAP,
    key_id: str = "",
    progress: Callable[[OpCounter], None] | None = None,
) -> AuditReport:
    if g1 is None:
        raise IdentityInput("public key is the identity")
    if strategy not in ("bsgs", "kangaroo"):
        raise ValueError(f"unknown strategy {strategy!r}")
    start = time.perf_counter()
    p = curve.p
    if factorization is None:
        hints = list(curve.known_pm1_factors) + list(pm1_hints)
        factorization = factor_bounded(p - 1, effort, hints)
    divisors = divisors_up_to(factorization, bound)
    tests = reduce_divisor_set(divisors).divisors
    report = AuditReport(key_id, curve.name, bound, strategy)
    counter = OpCounter()

    c = plan_tables(p, tests, table_cap) if use_kkm is not False else None
    if use_kkm and c is None:
        c = choose_c(p, max(tests), table_cap)
    g_table = key_table = None
    if c is not None:
        g_table = base_table(curve, c)
        key_table = kkm_build(g1, c, curve, counter)

    modulus = PrimeModulus(p)
    for d in tests:
        ctx = subgroup_generator(modulus, d, factor_of_divisor(d, factorization))
        report.subgroups_tested.append(d)
        alpha = _solve(curve, g1, ctx, strategy, seed, partitions, g_table, key_table, counter, progress)
        if progress:
            progress(counter)
        if alpha is not None:
            report.outcome, report.alpha, report.d = "weak", alpha, d
            report.complete = True
            break
    else:
        report.complete = strategy == "bsgs" and divisors.complete

    report.scalar_mults = counter.scalar_mults
    report.point_adds = counter.point_adds
    report.table_adds = counter.table_adds
    report.wall_ms = (time.perf_counter() - start) * 1000
    return report


def _solve(curve, g1, ctx, strategy, seed, partitions, g_table, key_table, counter, progress):
    kwargs = dict(base_table=g_table, key_table=key_table, counter=counter, progress=progress)
    if strategy == "bsgs" or ctx.d == 1:
        return bsgs_weak(curve.G, g1, ctx, curve, **kwargs)
    params = make_kangaroo_params(ctx.d, L=partitions, seed=seed)
    return kangaroo_weak(curve.G, g1, ctx, params, curve, **kwargs)


def subgroup_context(
    curve: CurveParams, d: int, factorization: PartialFactorization | None = None
) -> SubgroupContext:
    p = curve.p
    if d < 1 or (p - 1) % d:
        raise NotADivisor(f"{d} does not divide p - 1")
    f = factorization or factor_bounded(d, hints=[h for h in curve.known_pm1_factors if d % h[0] == 0])
    if factorization is None and not f.fully_factored:
        raise NotADivisor(f"could not factor d = {d}")
    return subgroup_generator(PrimeModulus(p), d, factor_of_divisor(d, f))


def gen_weak_key(
    curve: CurveParams,
    d: int,
    index: int | None = None,
    rng: random.Random | None = None,
) -> tuple[int, Point]:
    """alpha = zeta_d^i mod p with i = index, or uniform in [1, d]; returns (alpha, alpha*G)."""
    ctx = subgroup_context(curve, d)
    if index is None:
        index = (rng or random.Random()).randint(1, d)
    alpha = pow(ctx.zeta_d, index, curve.p)
    return alpha, curve.scalar_mul(alpha, curve.G)


def report_dict(report: AuditReport) -> dict:
    return asdict(report)
