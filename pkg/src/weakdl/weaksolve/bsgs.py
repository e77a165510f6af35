"""Baby-step giant-step on the exponent, carried out inside the curve group.

If alpha = zeta_d^i then i = v*m - u (mod d) for some 0 <= u < m,
1 <= v <= m, m = ceil(sqrt(d)). Baby steps are (alpha * zeta_d^u) * G,
giant steps are zeta_d^(v*m) * G; a match recovers i and so alpha.
Exhausting all giant steps proves alpha is outside the order-d subgroup.
For d <= 2m + 1 the exponents are simply scanned instead.
"""

from __future__ import annotations

from typing import Callable

from ..ecgroup import CurveParams, OpCounter, Point
from ..errors import IdentityInput
from ..factorization import ceil_sqrt
from ..modarith import SubgroupContext
from .kkm import KKMTable, fixed_base

PROGRESS_EVERY = 2**16


class UnverifiedMatch(RuntimeError):
    """A candidate key failed the final check; indicates a bug, never expected."""


def bsgs_weak(
    g: Point,
    g1: Point,
    ctx: SubgroupContext,
    curve: CurveParams,
    *,
    base_table: KKMTable | None = None,
    key_table: KKMTable | None = None,
    counter: OpCounter | None = None,
    progress: Callable[[OpCounter], None] | None = None,
) -> int | None:
    """Return alpha with alpha * g == g1 if alpha has order dividing d, else None.

    ``base_table`` must be built on ``g`` and ``key_table`` on ``g1``; with
    neither, every step is a plain scalar multiplication.
    """
    if g1 is None:
        raise IdentityInput("public key is the identity")
    counter = counter if counter is not None else OpCounter()
    p, d, z = curve.p, ctx.d, ctx.zeta_d
    m = ceil_sqrt(d)
    key_mul = fixed_base(curve, g1, key_table)
    base_mul = fixed_base(curve, g, base_table)
    next_report = counter.point_adds + PROGRESS_EVERY

    if d - 1 <= 2 * m:
        # tiny subgroup: comparing g1 with every zeta^i * g is cheaper, and a
        # hit is already the check alpha * g == g1
        e = 1
        for _ in range(d):
            if base_mul(e, counter) == g1:
                return e
            e = e * z % p
        return None

    baby = {g1: 0}
    e = 1
    for u in range(1, m):
        e = e * z % p
        baby.setdefault(key_mul(e, counter), u)
        if progress and counter.point_adds >= next_report:
            progress(counter)
            next_report += PROGRESS_EVERY

    zm = pow(z, m, p)
    e = 1
    for v in range(1, m + 1):
        e = e * zm % p
        u = baby.get(base_mul(e, counter))
        if u is not None:
            alpha = ctx.element(v * m - u)
            if base_mul(alpha, counter) != g1:
                raise UnverifiedMatch(f"match at u={u}, v={v} does not verify")
            return alpha
        if progress and counter.point_adds >= next_report:
            progress(counter)
            next_report += PROGRESS_EVERY
    return None
