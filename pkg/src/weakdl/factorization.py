"""Bounded-effort factorization of p - 1 and the divisor sets built from it.

The pipeline is deterministic: a fixed small trial division, then Brent's
variant of Pollard rho under a global iteration budget, then trial division
of whatever is left up to ``EffortBudget.trial_bound``. Rho runs before the
configurable trial stage so that its trace depends only on ``n``, the seed
and the budget, which keeps results monotone in both effort knobs.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt, prod
from pathlib import Path
from typing import Iterable, Iterator, Literal, Mapping, Sequence

import gmpy2

from .errors import BadHints
from .modarith import is_probable_prime

CofactorStatus = Literal["one", "prime", "composite", "unknown"]

PRE_TRIAL_BOUND = 1000
RHO_BATCH = 128


@dataclass(frozen=True)
class EffortBudget:
    trial_bound: int = 10**6
    rho_iterations: int = 2**21
    seed: int = 0


@lru_cache(maxsize=8)
def primes_up_to(bound: int) -> tuple[int, ...]:
    if bound < 2:
        return ()
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@dataclass(frozen=True)
class PartialFactorization:
    """``n = prod(q^e for q, e in known_factors) * cofactor``.

    ``trial_bound`` records how far trial division went: every prime factor
    of a composite cofactor exceeds it.
    """

    n: int
    known_factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    cofactor_status: CofactorStatus = "one"
    trial_bound: int = 0

    def __post_init__(self):
        if prod(q**e for q, e in self.known_factors) * self.cofactor != self.n:
            raise BadHints("known factors times cofactor do not reassemble n")
        for q, _ in self.known_factors:
            if not is_probable_prime(q):
                raise BadHints(f"listed factor {q} is not prime")
        if self.cofactor_status == "one" and self.cofactor != 1:
            raise BadHints("cofactor_status 'one' requires cofactor 1")
        if self.cofactor_status == "prime" and not is_probable_prime(self.cofactor):
            raise BadHints(f"cofactor {self.cofactor} is not prime")

    @property
    def fully_factored(self) -> bool:
        return self.cofactor_status in ("one", "prime")

    def prime_powers(self) -> tuple[tuple[int, int], ...]:
        """Every prime power of n that is known, a prime cofactor included."""
        powers = dict(self.known_factors)
        if self.cofactor_status == "prime":
            powers[self.cofactor] = powers.get(self.cofactor, 0) + 1
        return tuple(sorted(powers.items()))

    def largest_prime_bits(self) -> int | None:
        """Bit length of the largest prime factor, None when it is not known."""
        if not self.fully_factored:
            return None
        powers = self.prime_powers()
        return max(q for q, _ in powers).bit_length() if powers else 0

    def complete_up_to(self, bound: int) -> bool:
        """True when every prime factor of n that is <= bound is known."""
        return self.fully_factored or bound <= self.trial_bound

    def __str__(self) -> str:
        parts = [f"{q}^{e}" if e > 1 else str(q) for q, e in self.prime_powers()]
        if not self.fully_factored:
            parts.append(f"[{self.cofactor_status} {self.cofactor}]")
        return " * ".join(parts) or "1"


# --- hint files ---------------------------------------------------------

_HINT_LINE = re.compile(r"^(0x[0-9a-fA-F]+|\d+)(?:\s*\^\s*(\d+))?$")


def parse_hints(text: str) -> dict[str | None, list[tuple[int, int]]]:
    """Parse ``prime[^exponent]`` lines, optionally grouped under ``[name]``.

    Lines before any section header are returned under the key ``None``.
    """
    sections: dict[str | None, list[tuple[int, int]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, [])
            continue
        match = _HINT_LINE.match(line)
        if not match:
            raise BadHints(f"line {lineno}: cannot parse {raw!r}")
        q = int(match.group(1), 0)
        e = int(match.group(2) or 1)
        if e < 1:
            raise BadHints(f"line {lineno}: exponent must be positive")
        sections.setdefault(current, []).append((q, e))
    return sections


def load_hints(path: str | Path) -> dict[str | None, list[tuple[int, int]]]:
    return parse_hints(Path(path).read_text())


def _apply_hints(n: int, hints: Iterable[tuple[int, int]]) -> tuple[int, dict[int, int]]:
    found: dict[int, int] = {}
    for q, _ in hints:
        if q in found:
            continue
        if not is_probable_prime(q):
            raise BadHints(f"hinted factor {q} is not prime")
        if n % q:
            raise BadHints(f"hinted factor {q} does not divide {n}")
        while n % q == 0:
            n //= q
            found[q] = found.get(q, 0) + 1
    return n, found


# --- Pollard rho (Brent) -------------------------------------------------


class _Budget:
    def __init__(self, iterations: int):
        self.left = iterations


def _brent(n: int, y: int, c: int, budget: _Budget) -> int | None:
    """One Brent rho run; a proper factor of n, or None on failure/budget."""
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        budget.left -= r
        k = 0
        while k < r and g == 1:
            ys = y
            step = min(RHO_BATCH, r - k)
            for _ in range(step):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            budget.left -= step
            g = gcd(q, n)
            k += step
        if g == 1 and budget.left <= 0:
            return None
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        root, exact = gmpy2.iroot(n, k)
        if root < 2:
            return None
        if exact:
            return int(root), k
    return None


def _rho_factor(n: int, budget: _Budget, rng: random.Random) -> tuple[dict[int, int], list[int]]:
    """Split n with rho. Returns (primes found, composite pieces left)."""
    primes: dict[int, int] = {}
    left: list[int] = []
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            primes[m] = primes.get(m, 0) + 1
            continue
        power = _split_power(m)
        if power:
            stack.extend([power[0]] * power[1])
            continue
        factor = None
        while factor is None and budget.left > 0:
            factor = _brent(m, rng.randrange(2, m), rng.randrange(1, m - 1), budget)
        if factor is None:
            left.append(m)
        else:
            stack.extend(sorted((factor, m // factor), reverse=True))
    return primes, left


def _trial_divide(n: int, primes: Iterable[int], found: dict[int, int]) -> int:
    for q in primes:
        if q * q > n:
            break
        if n % q == 0:
            while n % q == 0:
                n //= q
                found[q] = found.get(q, 0) + 1
    return n


def factor_bounded(
    n: int,
    effort: EffortBudget = EffortBudget(),
    hints: Iterable[tuple[int, int]] | None = None,
) -> PartialFactorization:
    """Factor ``n`` as far as ``effort`` allows.

    ``hints`` are (prime, exponent) pairs known in advance; each must be prime
    and divide ``n`` (exponents are recomputed, so a hint only names the prime).
    """
    if n < 1:
        raise ValueError("n must be positive")
    rest, found = _apply_hints(n, hints or ())
    rest = _trial_divide(rest, primes_up_to(PRE_TRIAL_BOUND), found)
    if rest > 1 and is_probable_prime(rest):
        found[rest] = found.get(rest, 0) + 1
        rest = 1

    left: list[int] = []
    if rest > 1:
        budget = _Budget(effort.rho_iterations)
        rng = random.Random(effort.seed)
        rho_primes, left = _rho_factor(rest, budget, rng)
        for q, e in rho_primes.items():
            found[q] = found.get(q, 0) + e

    cofactor = 1
    trial = tuple(q for q in primes_up_to(effort.trial_bound) if q >= PRE_TRIAL_BOUND)
    for piece in left:
        piece = _trial_divide(piece, trial, found)
        if piece > 1 and is_probable_prime(piece):
            found[piece] = found.get(piece, 0) + 1
        else:
            cofactor *= piece

    return PartialFactorization(
        n=n,
        known_factors=tuple(sorted(found.items())),
        cofactor=cofactor,
        cofactor_status="one" if cofactor == 1 else "composite",
        trial_bound=max(effort.trial_bound, PRE_TRIAL_BOUND - 1),
    )


# --- divisors ------------------------------------------------------------


@dataclass(frozen=True)
class DivisorSet:
    bound: int
    divisors: tuple[int, ...]
    complete: bool
    primes: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.divisors, self.divisors[1:])):
            raise ValueError("divisors must be strictly increasing")

    def __iter__(self) -> Iterator[int]:
        return iter(self.divisors)

    def __len__(self) -> int:
        return len(self.divisors)


def _divisors_with_phi(
    prime_powers: Sequence[tuple[int, int]], bound: int
) -> Iterator[tuple[int, int]]:
    """Yield (d, phi(d)) for every d <= bound built from prime_powers."""

    def walk(index: int, d: int, phi: int) -> Iterator[tuple[int, int]]:
        if index == len(prime_powers):
            yield d, phi
            return
        q, e = prime_powers[index]
        yield from walk(index + 1, d, phi)
        dq, phiq = d * q, phi * (q - 1)
        for _ in range(e):
            if dq > bound:
                break
            yield from walk(index + 1, dq, phiq)
            dq, phiq = dq * q, phiq * q

    yield from walk(0, 1, 1)


def divisors_up_to(f: PartialFactorization, bound: int) -> DivisorSet:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    powers = f.prime_powers()
    divisors = sorted(d for d, _ in _divisors_with_phi(powers, bound))
    return DivisorSet(bound, tuple(divisors), f.complete_up_to(bound), tuple(q for q, _ in powers))


def reduce_divisor_set(ds: DivisorSet) -> DivisorSet:
    """Keep only the divisibility-maximal elements of ``ds``."""
    members = set(ds.divisors)
    if ds.primes:
        # ds is divisor-closed, so d is dominated iff d*q is present for a prime q
        keep = [d for d in ds.divisors if not any(d * q in members for q in ds.primes)]
    else:
        keep = [
            d
            for i, d in enumerate(ds.divisors)
            if not any(e % d == 0 for e in ds.divisors[i + 1 :])
        ]
    return DivisorSet(ds.bound, tuple(keep), ds.complete, ds.primes)


def weak_key_count(f: PartialFactorization, bound: int) -> int:
    """Number of alpha in F_p* whose order is at most ``bound``: sum of phi(d)."""
    return sum(phi for _, phi in _divisors_with_phi(f.prime_powers(), bound))


def bsgs_cost(divisors: Iterable[int]) -> int:
    """Worst-case implicit exponentiations to test every listed subgroup."""
    return sum(2 * ceil_sqrt(d) for d in divisors)


def ceil_sqrt(d: int) -> int:
    return isqrt(d - 1) + 1 if d > 0 else 0


def test_cost(f: PartialFactorization, bound: int) -> int:
    return bsgs_cost(reduce_divisor_set(divisors_up_to(f, bound)))


def weak_key_count_log2(f: PartialFactorization, bound: int) -> float:
    return math.log2(weak_key_count(f, bound))


def test_cost_log2(f: PartialFactorization, bound: int) -> float:
    return math.log2(test_cost(f, bound))


def factors_from_mapping(n: int, factors: Mapping[int, int]) -> PartialFactorization:
    """Full factorization from a {prime: exponent} mapping (validated)."""
    return PartialFactorization(n, tuple(sorted(factors.items())))


# keep pytest from collecting these when imported into test modules
test_cost.__test__ = False  # type: ignore[attr-defined]
test_cost_log2.__test__ = False  # type: ignore[attr-defined]
