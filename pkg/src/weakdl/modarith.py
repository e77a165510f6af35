"""Arithmetic in the exponent field F_p* of a prime-order group.

Keys are integers mod p, so the multiplicative structure of F_p* decides
which keys are weak. Only generators of specific subgroups are ever built;
a primitive root of the whole of F_p* would need the full factorization
of p - 1, which is out of reach for several standard curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import TYPE_CHECKING, Iterator, Sequence

import gmpy2

from .errors import BadFactorization, NotADivisor, NotPrime, OutOfRange

if TYPE_CHECKING:
    from .factorization import PartialFactorization

PRIMALITY_ROUNDS = 32
MAX_GENERATOR_CANDIDATES = 10_000


def is_probable_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n, PRIMALITY_ROUNDS))


def small_primes() -> Iterator[int]:
    """Yield 2, 3, 5, 7, 11, ... without bound."""
    yield 2
    n = 3
    while True:
        if is_probable_prime(n):
            yield n
        n += 2


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if self.p < 3 or not is_probable_prime(self.p):
            raise NotPrime(f"group order {self.p} is not an odd prime")


@dataclass(frozen=True)
class SubgroupContext:
    """Divisor ``d`` of p - 1 with a generator ``zeta_d`` of exact order ``d``."""

    modulus: PrimeModulus
    d: int
    zeta_d: int
    d_factors: tuple[tuple[int, int], ...] = ()

    @property
    def p(self) -> int:
        return self.modulus.p

    def element(self, i: int) -> int:
        """zeta_d ** i mod p (i taken mod d)."""
        return pow(self.zeta_d, i % self.d, self.p)


def pow_mod(base: int, exponent: int, m: PrimeModulus) -> int:
    if base < 0 or exponent < 0:
        raise OutOfRange("pow_mod expects nonnegative base and exponent")
    return pow(base, exponent, m.p)


def has_exact_order(x: int, d: int, d_primes: Sequence[int], p: int) -> bool:
    if pow(x, d, p) != 1:
        return False
    return all(pow(x, d // q, p) != 1 for q in d_primes)


def _check_factors(d: int, d_factors: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    factors = tuple(sorted((int(q), int(e)) for q, e in d_factors if e > 0))
    if prod(q**e for q, e in factors) != d:
        raise BadFactorization(f"factors {factors} do not multiply to {d}")
    for q, _ in factors:
        if not is_probable_prime(q):
            raise BadFactorization(f"{q} in the factorization of {d} is not prime")
    return factors


def subgroup_generator(
    m: PrimeModulus, d: int, d_factors: Sequence[tuple[int, int]]
) -> SubgroupContext:
    """Generator of the order-``d`` subgroup of F_p*.

    Candidates 2, 3, 5, 7, 11, ... are tried in turn; the first x whose power
    x^((p-1)/d) has exact order d wins, so the result is reproducible.
    """
    p = m.p
    if d < 1 or (p - 1) % d:
        raise NotADivisor(f"{d} does not divide p - 1")
    factors = _check_factors(d, d_factors)
    if d == 1:
        return SubgroupContext(m, 1, 1, factors)
    primes = [q for q, _ in factors]
    cofactor = (p - 1) // d
    for count, x in enumerate(small_primes()):
        if count >= MAX_GENERATOR_CANDIDATES:
            break
        z = pow(x, cofactor, p)
        if has_exact_order(z, d, primes, p):
            return SubgroupContext(m, d, z, factors)
    raise RuntimeError(f"no generator of order {d} found among small primes")


@dataclass(frozen=True)
class UnknownOrder:
    """Order not determined by the known part of the factorization of p - 1.

    The true order is ``known_part * u`` where ``u > 1`` divides
    ``unfactored``.
    """

    known_part: int
    unfactored: int


def order_from_prime_powers(
    alpha: int, n: int, prime_powers: Sequence[tuple[int, int]], p: int
) -> int:
    """Exact order of alpha given alpha^n == 1 and n = prod(q^e)."""
    order = n
    for q, _ in prime_powers:
        while order % q == 0 and pow(alpha, order // q, p) == 1:
            order //= q
    return order


def multiplicative_order(
    alpha: int, m: PrimeModulus, pm1_factors: PartialFactorization
) -> int | UnknownOrder:
    p = m.p
    if not 0 < alpha < p:
        raise OutOfRange(f"alpha must lie in (0, p), got {alpha}")
    if pm1_factors.n != p - 1:
        raise BadFactorization("factorization is not of p - 1")
    powers = pm1_factors.prime_powers()
    known = prod(q**e for q, e in powers)
    rest = (p - 1) // known
    known_part = order_from_prime_powers(pow(alpha, rest, p), known, powers, p)
    if rest == 1 or pow(alpha, known, p) == 1:
        return known_part
    return UnknownOrder(known_part, rest)
