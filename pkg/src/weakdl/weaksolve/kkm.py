"""Fixed-base exponentiation tables (Kozaki-Kutsuma-Matsuo).

A table for base point g_t with parameters (c, b), b = ceil(p^(1/c)), holds
t[i][j] = (j * b^i) * g_t. Any exponent delta < p is written in base b and
delta * g_t is the sum of one entry per digit: at most c - 1 additions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2

from ..ecgroup import CurveParams, OpCounter, Point

DEFAULT_TABLE_CAP = 2**24


def table_base(p: int, c: int) -> int:
    """Smallest b with b^c >= p."""
    b = int(gmpy2.iroot(p, c)[0])
    while b**c < p:
        b += 1
    return max(b, 2)


def kkm_cost(p: int, d: int, c: int) -> float:
    """Estimated group operations for one BSGS run with a c-row table."""
    return c * (math.log2(p) + 2 ** (math.log2(p) / c)) + 2 * (c - 1) * math.sqrt(d)


def choose_c(p: int, d: int, table_cap: int = DEFAULT_TABLE_CAP) -> int:
    """Number of table rows minimizing ``kkm_cost``, then grown to fit the cap."""
    if d < 1 or table_cap < 2:
        raise ValueError("need d >= 1 and table_cap >= 2")
    top = max(2, p.bit_length())
    best = min(range(2, top + 1), key=lambda c: (kkm_cost(p, d, c), c))
    c = best
    while c < top and c * table_base(p, c) > table_cap:
        c += 1
    return c


@dataclass(frozen=True)
class KKMTable:
    curve: CurveParams
    base_point: tuple[int, int]
    c: int
    b: int
    table: tuple[tuple[Point, ...], ...]

    def __len__(self) -> int:
        return sum(len(row) for row in self.table)


def kkm_build(
    g_t: Point, c: int, curve: CurveParams, counter: OpCounter | None = None
) -> KKMTable:
    if g_t is None:
        raise ValueError("table base must not be the identity")
    if c < 1:
        raise ValueError("c must be positive")
    p = curve.p
    b = table_base(p, c)
    scratch = OpCounter()
    rows = []
    row_base: Point = g_t
    for i in range(c):
        if i:
            row_base = curve._mul_raw(b, row_base, scratch)
        # top row only needs digits up to (p - 1) // b^(c-1)
        width = b if i < c - 1 else min(b, (p - 1) // b**i + 1)
        x, y = row_base
        jac = [(x, y, 1)]
        for _ in range(2, width):
            X, Y, Z = jac[-1]
            jac.append(curve._jadd_affine(X, Y, Z, x, y))
        scratch.table_adds += max(0, width - 2)
        rows.append((None, *curve.batch_normalize(jac))[:width])
    if counter is not None:
        counter.table_adds += scratch.table_adds + scratch.point_adds
    return KKMTable(curve, g_t, c, b, tuple(rows))


def kkm_pow(T: KKMTable, delta: int, counter: OpCounter | None = None) -> Point:
    """delta * base_point using one table entry per nonzero base-b digit."""
    delta %= T.curve.p
    b = T.b
    points = []
    for row in T.table:
        if delta == 0:
            break
        delta, digit = divmod(delta, b)
        if digit:
            points.append(row[digit])
    if counter is not None:
        counter.scalar_mults += 1
        counter.point_adds += max(0, len(points) - 1)
    return T.curve.sum_affine(points)


def fixed_base(curve: CurveParams, base: Point, table: KKMTable | None = None):
    """Return ``f(delta, counter)`` computing delta * base, via ``table`` if given.

    Exponents 0, 1 and -1 are answered directly and cost nothing.
    """
    if table is not None and table.base_point != base:
        raise ValueError("table was built for a different base point")
    p = curve.p
    trivial = {0: None, 1: base, p - 1: curve.negate(base)}

    def f(delta: int, counter: OpCounter | None = None) -> Point:
        delta %= p
        if delta in trivial:
            return trivial[delta]
        if table is not None:
            return kkm_pow(table, delta, counter)
        return curve.scalar_mul(delta, base, counter)

    return f
