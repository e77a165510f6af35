"""Short Weierstrass curves y^2 = x^3 + a*x + b over a prime field.

Points are affine ``(x, y)`` tuples of ints and ``None`` is the identity,
so points hash and compare exactly and can key a dict directly. Scalar
multiplication runs in Jacobian coordinates and normalizes once at the end.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import gmpy2

from .errors import (
    BadEncoding,
    InvalidCurve,
    PointNotOnCurve,
    UnknownCurve,
    WrongSubgroup,
)
from .modarith import is_probable_prime

Point = Optional[tuple[int, int]]
IDENTITY: Point = None


@dataclass
class OpCounter:
    """Work counters.

    ``scalar_mults`` counts exponentiations in the group (plain or table
    driven), ``point_adds`` every group addition or doubling done outside of
    precomputation, ``table_adds`` the additions spent building tables.
    """

    scalar_mults: int = 0
    point_adds: int = 0
    table_adds: int = 0

    def merge(self, other: "OpCounter") -> None:
        self.scalar_mults += other.scalar_mults
        self.point_adds += other.point_adds
        self.table_adds += other.table_adds


def _inv(x: int, q: int) -> int:
    return int(gmpy2.invert(x, q))


def sqrt_mod(v: int, q: int) -> int | None:
    """A square root of v modulo the odd prime q, or None."""
    v %= q
    if v == 0:
        return 0
    if pow(v, (q - 1) // 2, q) != 1:
        return None
    if q % 4 == 3:
        return pow(v, (q + 1) // 4, q)
    # Tonelli-Shanks
    s, t = 0, q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = 2
    while pow(z, (q - 1) // 2, q) != q - 1:
        z += 1
    m, c, r, u = s, pow(z, t, q), pow(v, (t + 1) // 2, q), pow(v, t, q)
    while u != 1:
        i, uu = 0, u
        while uu != 1:
            uu, i = uu * uu % q, i + 1
        b = pow(c, 1 << (m - i - 1), q)
        m, c, r, u = i, b * b % q, r * b % q, u * b * b % q
    return r


@dataclass(frozen=True)
class CurveParams:
    name: str
    q: int
    a: int
    b: int
    gx: int
    gy: int
    p: int
    h: int = 1
    known_pm1_factors: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        q = self.q
        if q < 3 or not is_probable_prime(q):
            raise InvalidCurve(f"{self.name}: field modulus is not an odd prime")
        if (4 * self.a**3 + 27 * self.b**2) % q == 0:
            raise InvalidCurve(f"{self.name}: curve is singular")
        if not self.is_on_curve((self.gx, self.gy)):
            raise InvalidCurve(f"{self.name}: base point is not on the curve")
        if not is_probable_prime(self.p):
            raise InvalidCurve(f"{self.name}: subgroup order is not prime")

    @property
    def G(self) -> tuple[int, int]:
        return (self.gx, self.gy)

    @property
    def byte_len(self) -> int:
        return (self.q.bit_length() + 7) // 8

    # --- group law ---------------------------------------------------

    def is_on_curve(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        q = self.q
        return 0 <= x < q and 0 <= y < q and (y * y - x * x * x - self.a * x - self.b) % q == 0

    def negate(self, P: Point) -> Point:
        if P is None:
            return None
        return (P[0], -P[1] % self.q)

    def add(self, P1: Point, P2: Point, counter: OpCounter | None = None) -> Point:
        if counter is not None:
            counter.point_adds += 1
        if P1 is None:
            return P2
        if P2 is None:
            return P1
        q = self.q
        x1, y1 = P1
        x2, y2 = P2
        if x1 == x2:
            if (y1 + y2) % q == 0:
                return None
            lam = (3 * x1 * x1 + self.a) * _inv(2 * y1, q) % q
        else:
            lam = (y2 - y1) * _inv(x2 - x1, q) % q
        x3 = (lam * lam - x1 - x2) % q
        return (x3, (lam * (x1 - x3) - y1) % q)

    def _jdouble(self, X: int, Y: int, Z: int) -> tuple[int, int, int]:
        q = self.q
        if Y == 0 or Z == 0:
            return (1, 1, 0)
        YY = Y * Y % q
        S = 4 * X * YY % q
        ZZ = Z * Z % q
        M = (3 * X * X + self.a * ZZ * ZZ) % q
        X3 = (M * M - 2 * S) % q
        Y3 = (M * (S - X3) - 8 * YY * YY) % q
        return (X3, Y3, 2 * Y * Z % q)

    def _jadd_affine(self, X: int, Y: int, Z: int, x2: int, y2: int) -> tuple[int, int, int]:
        """Jacobian (X, Y, Z) plus affine (x2, y2)."""
        q = self.q
        if Z == 0:
            return (x2, y2, 1)
        ZZ = Z * Z % q
        U2 = x2 * ZZ % q
        S2 = y2 * ZZ * Z % q
        H = (U2 - X) % q
        R = (S2 - Y) % q
        if H == 0:
            if R == 0:
                return self._jdouble(X, Y, Z)
            return (1, 1, 0)
        HH = H * H % q
        HHH = H * HH % q
        V = X * HH % q
        X3 = (R * R - HHH - 2 * V) % q
        Y3 = (R * (V - X3) - Y * HHH) % q
        return (X3, Y3, Z * H % q)

    def _to_affine(self, X: int, Y: int, Z: int) -> Point:
        if Z == 0:
            return None
        q = self.q
        zi = _inv(Z, q)
        zi2 = zi * zi % q
        return (X * zi2 % q, Y * zi2 * zi % q)

    def _mul_raw(self, k: int, P: Point, counter: OpCounter | None) -> Point:
        if P is None or k == 0:
            return None
        if k < 0:
            k, P = -k, self.negate(P)
        x, y = P
        X, Y, Z = x, y, 1
        ops = 0
        for bit in bin(k)[3:]:
            X, Y, Z = self._jdouble(X, Y, Z)
            ops += 1
            if bit == "1":
                X, Y, Z = self._jadd_affine(X, Y, Z, x, y)
                ops += 1
        if counter is not None:
            counter.point_adds += ops
        return self._to_affine(X, Y, Z)

    def scalar_mul(self, k: int, P: Point, counter: OpCounter | None = None) -> Point:
        """k * P, with k reduced mod p (P is assumed to lie in <G>)."""
        if counter is not None:
            counter.scalar_mults += 1
        return self._mul_raw(k % self.p, P, counter)

    def in_subgroup(self, P: Point) -> bool:
        return self.is_on_curve(P) and self._mul_raw(self.p, P, None) is None

    def sum_affine(self, points: Iterable[tuple[int, int]]) -> Point:
        """Sum of affine points with a single inversion at the end."""
        X, Y, Z = 1, 1, 0
        for x, y in points:
            X, Y, Z = self._jadd_affine(X, Y, Z, x, y)
        return self._to_affine(X, Y, Z)

    def batch_normalize(self, jac: Sequence[tuple[int, int, int]]) -> list[Point]:
        """Jacobian points to affine with one inversion (Montgomery's trick)."""
        q = self.q
        prefix = []
        acc = 1
        for _, _, Z in jac:
            prefix.append(acc)
            if Z:
                acc = acc * Z % q
        inv = _inv(acc, q) if acc != 1 else 1
        out: list[Point] = [None] * len(jac)
        for i in range(len(jac) - 1, -1, -1):
            X, Y, Z = jac[i]
            if not Z:
                continue
            zi = inv * prefix[i] % q
            inv = inv * Z % q
            zi2 = zi * zi % q
            out[i] = (X * zi2 % q, Y * zi2 * zi % q)
        return out

    # --- SEC1 --------------------------------------------------------

    def encode_point(self, P: Point, compressed: bool = False) -> bytes:
        if P is None:
            return b"\x00"
        n = self.byte_len
        x, y = P
        if compressed:
            return bytes([2 + (y & 1)]) + x.to_bytes(n, "big")
        return b"\x04" + x.to_bytes(n, "big") + y.to_bytes(n, "big")

    def decode_point(self, data: bytes) -> Point:
        """Parse a SEC1 encoding and check curve and subgroup membership."""
        n = self.byte_len
        if data == b"\x00":
            return None
        if not data:
            raise BadEncoding("empty point encoding")
        tag = data[0]
        if tag == 4 and len(data) == 1 + 2 * n:
            x = int.from_bytes(data[1 : 1 + n], "big")
            y = int.from_bytes(data[1 + n :], "big")
            P = (x, y)
            if not self.is_on_curve(P):
                raise PointNotOnCurve("point is not on the curve")
        elif tag in (2, 3) and len(data) == 1 + n:
            x = int.from_bytes(data[1:], "big")
            if x >= self.q:
                raise PointNotOnCurve("x coordinate out of range")
            y = sqrt_mod(x * x * x + self.a * x + self.b, self.q)
            if y is None:
                raise PointNotOnCurve("x coordinate is not on the curve")
            if (y & 1) != (tag & 1):
                y = -y % self.q
            P = (x, y)
        else:
            raise BadEncoding(f"bad SEC1 encoding (tag {tag:#x}, {len(data)} bytes)")
        if self._mul_raw(self.p, P, None) is not None:
            raise WrongSubgroup("point is not in the prime-order subgroup")
        return P

    def decode_hex(self, text: str) -> Point:
        text = text.strip()
        if text.lower().startswith("0x"):
            text = text[2:]
        try:
            data = bytes.fromhex(text)
        except ValueError as exc:
            raise BadEncoding(f"not a hex string: {text[:20]!r}") from exc
        return self.decode_point(data)


@dataclass(frozen=True)
class OrderOnlyEntry:
    """A named group known only by its prime order (enough for the census)."""

    name: str
    p: int
    known_pm1_factors: tuple[tuple[int, int], ...] = field(default=(), compare=False)
    form: str = ""
    field_type: str = ""

    def __post_init__(self):
        if not is_probable_prime(self.p):
            raise InvalidCurve(f"{self.name}: order is not prime")


Entry = Union[CurveParams, OrderOnlyEntry]


def add(P1: Point, P2: Point, c: CurveParams) -> Point:
    return c.add(P1, P2)


def negate(P: Point, c: CurveParams) -> Point:
    return c.negate(P)


def scalar_mul(k: int, P: Point, c: CurveParams) -> Point:
    return c.scalar_mul(k, P)


def encode_point(P: Point, c: CurveParams, compressed: bool = False) -> bytes:
    return c.encode_point(P, compressed)


def decode_point(data: bytes, c: CurveParams) -> Point:
    return c.decode_point(data)


# --- curve files and registry -------------------------------------------

CURVE_FIELDS = ("name", "q", "a", "b", "gx", "gy", "p", "h")


def parse_curve_text(text: str, hints: Sequence[tuple[int, int]] = ()) -> CurveParams:
    """Parse ``key = value`` (or ``key: value``) lines into CurveParams."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = re.match(r"^(\w+)\s*[=:]\s*(\S+)$", line)
        if not match or match.group(1).lower() not in CURVE_FIELDS:
            raise InvalidCurve(f"line {lineno}: cannot parse {raw!r}")
        values[match.group(1).lower()] = match.group(2)
    missing = [k for k in CURVE_FIELDS if k not in values and k != "h"]
    if missing:
        raise InvalidCurve(f"curve file lacks fields: {', '.join(missing)}")
    try:
        nums = {k: int(values[k], 0) for k in CURVE_FIELDS[1:] if k in values}
    except ValueError as exc:
        raise InvalidCurve(f"bad integer in curve file: {exc}") from exc
    return CurveParams(values["name"], known_pm1_factors=tuple(hints), **nums)


def load_curve_file(path: str | Path) -> CurveParams:
    return parse_curve_text(Path(path).read_text())


def _data_text(name: str) -> str:
    return resources.files("weakdl").joinpath("data", name).read_text()


@lru_cache(maxsize=1)
def shipped_hints() -> dict[str, tuple[tuple[int, int], ...]]:
    from .factorization import parse_hints

    sections = parse_hints(_data_text("pm1_hints.txt"))
    return {k: tuple(v) for k, v in sections.items() if k is not None}


@lru_cache(maxsize=1)
def _registry() -> tuple[dict[str, dict], dict[str, str]]:
    records = json.loads(_data_text("curves.json"))["curves"]
    by_name = {r["name"]: r for r in records}
    aliases = {}
    for r in records:
        for alias in r.get("aliases", ()):
            aliases[alias.lower()] = r["name"]
        aliases[r["name"].lower()] = r["name"]
    return by_name, aliases


def registry_names() -> list[str]:
    return list(_registry()[0])


def canonical_name(name: str) -> str:
    try:
        return _registry()[1][name.lower()]
    except KeyError:
        raise UnknownCurve(name) from None


def registry_get(name: str) -> Entry:
    """Curve parameters, or an order-only entry, by name or alias."""
    return _build_entry(canonical_name(name))


@lru_cache(maxsize=None)
def _build_entry(name: str) -> Entry:
    record = _registry()[0][name]
    hints = shipped_hints().get(record["name"], ())
    num = lambda key: int(record[key], 0)  # noqa: E731
    if "q" in record:
        return CurveParams(
            name=record["name"],
            q=num("q"),
            a=num("a"),
            b=num("b"),
            gx=num("gx"),
            gy=num("gy"),
            p=num("p"),
            h=num("h"),
            known_pm1_factors=hints,
        )
    return OrderOnlyEntry(
        record["name"], num("p"), hints, record.get("form", ""), record.get("field", "")
    )
