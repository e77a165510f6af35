"""Pollard kangaroo run on the exponent through the curve group.

Both walks keep an exponent E mod d. The tame walk sits at zeta_d^E * G and
starts at E = ceil(d/2); the wild walk sits at (alpha * zeta_d^E) * G and
starts at E = 0 (the public key itself). A jump adds s_k to E, where k is
the partition of the current point, so the walk on points is a function of
the point alone and the two walks merge once they meet. Meetings are
detected on distinguished points (low x bits zero); a tame/wild meeting
gives alpha = zeta_d^(E_tame - E_wild).

The walk cannot prove a key is *not* weak: a key outside the subgroup just
runs out of jumps and yields None.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

from ..ecgroup import CurveParams, OpCounter, Point
from ..errors import IdentityInput, IdentityPoint, InvalidParams
from ..factorization import ceil_sqrt
from ..modarith import SubgroupContext
from .bsgs import PROGRESS_EVERY, UnverifiedMatch
from .kkm import KKMTable, fixed_base

DEFAULT_PARTITIONS = 1024
TAME, WILD = "tame", "wild"


def jump_cap(d: int) -> int:
    """ceil(sqrt(d) / 2)."""
    return max(1, ceil_sqrt(-(-d // 4)))


def default_t_bits(d: int) -> int:
    return max(1, int(math.log2(d) / 4)) if d > 1 else 1


@dataclass(frozen=True)
class KangarooParams:
    d: int
    L: int
    t_bits: int
    jump_set: tuple[int, ...]
    max_jumps: int
    seed: int

    def __post_init__(self):
        if self.L < 1 or self.L & (self.L - 1):
            raise InvalidParams("L must be a power of two")
        if len(self.jump_set) != self.L:
            raise InvalidParams("jump set must have L entries")
        if min(self.jump_set) < 1:
            raise InvalidParams("jumps must be positive")
        if abs(sum(self.jump_set) / self.L - math.sqrt(self.d) / 2) > 1:
            raise InvalidParams("mean jump must be within 1 of sqrt(d)/2")
        if self.t_bits < 0 or self.max_jumps < 1:
            raise InvalidParams("t_bits must be >= 0 and max_jumps >= 1")


def make_kangaroo_params(
    d: int,
    L: int = DEFAULT_PARTITIONS,
    t_bits: int | None = None,
    seed: int = 0,
    max_jumps: int | None = None,
    wide_jumps: bool = False,
) -> KangarooParams:
    """Jump set with mean sqrt(d)/2.

    The first L - 1 jumps are uniform in [1, ceil(sqrt(d)/2)] (or twice that
    range, less one, with ``wide_jumps``), and the last one is chosen to pull the mean
    to sqrt(d)/2. Without ``wide_jumps`` that last jump is large.
    """
    if d < 2:
        raise InvalidParams("kangaroo needs d >= 2")
    rng = random.Random(seed)
    cap = jump_cap(d) * 2 - 1 if wide_jumps else jump_cap(d)
    target = max(L, round(L * math.sqrt(d) / 2))
    jumps = [rng.randint(1, cap) for _ in range(L - 1)]
    # if the draw overshoots, trim jumps (in order) so the last one stays >= 1
    excess, i = sum(jumps) + 1 - target, 0
    while excess > 0:
        take = min(jumps[i] - 1, excess)
        jumps[i] -= take
        excess -= take
        i += 1
    last = target - sum(jumps)
    while last % d == 0:
        last += 1
    jumps.append(last)
    t = default_t_bits(d) if t_bits is None else t_bits
    if max_jumps is None:
        max_jumps = math.ceil(20 * math.sqrt(d)) + 4 * 2**t
    return KangarooParams(d, L, t, tuple(jumps), max_jumps, seed)


def partition_index(P: Point, L: int) -> int:
    """Partition in [1, L] given by the low log2(L) bits of x."""
    if P is None:
        raise IdentityPoint("walk reached the identity")
    return (P[0] & (L - 1)) + 1


def kangaroo_weak(
    g: Point,
    g1: Point,
    ctx: SubgroupContext,
    params: KangarooParams,
    curve: CurveParams,
    *,
    base_table: KKMTable | None = None,
    key_table: KKMTable | None = None,
    counter: OpCounter | None = None,
    on_step: Callable[[str, int, Point], None] | None = None,
    progress: Callable[[OpCounter], None] | None = None,
) -> int | None:
    """Recover alpha if it lies in the order-d subgroup, else None (budget spent).

    ``on_step(walk, exponent, point)`` is called after every jump.
    """
    if g1 is None:
        raise IdentityInput("public key is the identity")
    d, p, z = ctx.d, curve.p, ctx.zeta_d
    if params.d != d:
        raise InvalidParams(f"params built for d={params.d}, subgroup has d={d}")
    if d < 2:
        raise InvalidParams("kangaroo needs d >= 2")
    counter = counter if counter is not None else OpCounter()
    L, jumps = params.L, params.jump_set
    steps = [pow(z, s % d, p) for s in jumps]
    dp_mask = (1 << params.t_bits) - 1
    rng = random.Random(params.seed ^ 0x5EED)
    next_report = counter.point_adds + PROGRESS_EVERY

    mul = {TAME: fixed_base(curve, g, base_table), WILD: fixed_base(curve, g1, key_table)}
    exp = {TAME: -(-d // 2) % d, WILD: 0}
    delta = {TAME: ctx.element(exp[TAME]), WILD: 1}
    point = {TAME: mul[TAME](delta[TAME], counter), WILD: g1}
    taken = {TAME: 0, WILD: 0}
    seen: dict[tuple[int, int], tuple[str, int]] = {}

    while True:
        for walk in (TAME, WILD):
            if taken[walk] >= params.max_jumps:
                return None
            k = partition_index(point[walk], L) - 1
            exp[walk] = (exp[walk] + jumps[k]) % d
            delta[walk] = delta[walk] * steps[k] % p
            P = mul[walk](delta[walk], counter)
            if P is None:
                raise IdentityPoint("walk reached the identity")
            point[walk] = P
            taken[walk] += 1
            if on_step:
                on_step(walk, exp[walk], P)
            if progress and counter.point_adds >= next_report:
                progress(counter)
                next_report += PROGRESS_EVERY
            if P[0] & dp_mask:
                continue
            other = seen.get(P)
            if other is None:
                seen[P] = (walk, exp[walk])
            elif other[0] != walk:
                e_tame = exp[walk] if walk == TAME else other[1]
                e_wild = exp[walk] if walk == WILD else other[1]
                alpha = ctx.element(e_tame - e_wild)
                if mul[TAME](alpha, counter) != g1:
                    raise UnverifiedMatch("tame/wild collision does not verify")
                return alpha
            else:
                # the walk is cycling through its own trail: hop elsewhere
                exp[walk] = (exp[walk] + rng.randrange(1, d)) % d
                delta[walk] = ctx.element(exp[walk])
                point[walk] = mul[walk](delta[walk], counter)
                if on_step:
                    on_step(walk, exp[walk], point[walk])
