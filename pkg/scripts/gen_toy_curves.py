"""Regenerate the two small test curves frozen into the registry.

toy-1: prime group order 1009 (p - 1 = 2^4 * 3^2 * 7), found by counting
points with Legendre symbols over every prime field in the Hasse window.

toy-2: j-invariant 0 curve whose prime order N satisfies 2^20 | N - 1 with
N - 1 otherwise 3-smooth. Built by the CM method: write 4N = u^2 + 3s^2,
take trace t = u + 2 so that q = N - 1 + t, and keep q when it is prime.
The six twists y^2 = x^3 + b are scanned until one has a point killed by N.

Prints the JSON records to paste into src/weakdl/data/curves.json.
"""

import json
from math import isqrt

from weakdl.ecgroup import CurveParams, sqrt_mod
from weakdl.modarith import is_probable_prime


def legendre(v, q):
    v %= q
    if v == 0:
        return 0
    return 1 if pow(v, (q - 1) // 2, q) == 1 else -1


def count_points(q, a, b):
    return q + 1 + sum(legendre(x * x * x + a * x + b, q) for x in range(q))


def first_point(q, a, b):
    for x in range(q):
        y = sqrt_mod(x * x * x + a * x + b, q)
        if y:
            return x, y
    raise ValueError("no affine point with y != 0")


def toy1(order=1009):
    lo = order + 1 - 2 * isqrt(order) - 2
    for q in range(max(lo, 5), order + 2 * isqrt(order) + 3):
        if not is_probable_prime(q):
            continue
        for a in range(1, 20):
            for b in range(1, 20):
                if (4 * a**3 + 27 * b**2) % q == 0:
                    continue
                if count_points(q, a, b) == order:
                    x, y = first_point(q, a, b)
                    return dict(name="toy-1", q=q, a=a, b=b, gx=x, gy=y, p=order, h=1)
    raise ValueError("no curve found")


def cornacchia3(n):
    """(x, y) with x^2 + 3y^2 = n for prime n = 1 mod 3."""
    r = sqrt_mod(-3, n)
    if r is None:
        return None
    if 2 * r < n:
        r = n - r
    a, b = n, r
    while b * b > n:
        a, b = b, a % b
    rest = n - b * b
    if rest % 3:
        return None
    y = isqrt(rest // 3)
    return (b, y) if y * y * 3 == rest else None


def toy2(two_power=20, min_bits=40):
    k = 1
    while True:
        k += 1
        m = k
        while m % 3 == 0:
            m //= 3
        while m % 2 == 0:
            m //= 2
        if m != 1 or k % 3:
            continue
        N = (k << two_power) + 1
        if N.bit_length() < min_bits or not is_probable_prime(N):
            continue
        rep = cornacchia3(N)
        if rep is None:
            continue
        x, y = rep
        for u in {2 * x, x + 3 * y, x - 3 * y, -2 * x, -x - 3 * y, -x + 3 * y}:
            q = N + u + 1
            if not is_probable_prime(q) or q % 3 != 1:
                continue
            for b in range(1, 200):
                x0, y0 = first_point(q, 0, b)
                try:
                    curve = CurveParams("toy-2", q, 0, b, x0, y0, N)
                except Exception:
                    continue
                if curve.in_subgroup(curve.G):
                    return dict(name="toy-2", q=q, a=0, b=b, gx=x0, gy=y0, p=N, h=1)


if __name__ == "__main__":
    for rec in (toy1(), toy2()):
        print(json.dumps({k: (hex(v) if isinstance(v, int) else v) for k, v in rec.items()}))
