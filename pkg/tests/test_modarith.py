import pytest
import sympy
from hypothesis import given, settings
import hypothesis.strategies as st

from weakdl.errors import BadFactorization, NotADivisor, NotPrime, OutOfRange
from weakdl.factorization import PartialFactorization, factor_bounded, factors_from_mapping
from weakdl.modarith import (
    PrimeModulus,
    UnknownOrder,
    is_probable_prime,
    multiplicative_order,
    pow_mod,
    subgroup_generator,
)

K1_P = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
K1 = PrimeModulus(K1_P)
SMALL_PRIMES = [p for p in sympy.primerange(3, 3000)]


def test_prime_modulus_rejects_composites():
    for n in (1, 2, 4, 9, 1009 * 1013):
        with pytest.raises(NotPrime):
            PrimeModulus(n)


@given(st.integers(min_value=0, max_value=10**6))
def test_is_probable_prime_matches_sympy(n):
    assert is_probable_prime(n) == sympy.isprime(n)


def test_pow_mod_basic():
    m = PrimeModulus(1009)
    assert pow_mod(5, 0, m) == 1
    assert pow_mod(3, 1008, m) == 1
    with pytest.raises(OutOfRange):
        pow_mod(-1, 2, m)


def test_zeta4_on_secp256k1():
    z = pow_mod(7, (K1_P - 1) // 4, K1)
    assert z * z % K1_P == K1_P - 1
    ctx = subgroup_generator(K1, 4, [(2, 2)])
    assert ctx.zeta_d == z


def test_trivial_subgroups():
    m = PrimeModulus(1009)
    assert subgroup_generator(m, 1, []).zeta_d == 1
    assert subgroup_generator(m, 2, [(2, 1)]).zeta_d == 1008


def test_generator_errors():
    m = PrimeModulus(1009)
    with pytest.raises(NotADivisor):
        subgroup_generator(m, 5, [(5, 1)])
    with pytest.raises(BadFactorization):
        subgroup_generator(m, 12, [(2, 1), (3, 1)])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_PRIMES), st.data())
def test_generator_has_exact_order(p, data):
    m = PrimeModulus(p)
    d = data.draw(st.sampled_from(sympy.divisors(p - 1)))
    ctx = subgroup_generator(m, d, list(sympy.factorint(d).items()))
    assert sympy.n_order(ctx.zeta_d, p) == d
    assert {ctx.element(i) for i in range(d)} == {x for x in range(1, p) if pow(x, d, p) == 1}


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_PRIMES), st.data())
def test_order_matches_sympy(p, data):
    alpha = data.draw(st.integers(1, p - 1))
    f = factors_from_mapping(p - 1, sympy.factorint(p - 1))
    assert multiplicative_order(alpha, PrimeModulus(p), f) == sympy.n_order(alpha, p)


def test_order_out_of_range():
    f = factors_from_mapping(1008, {2: 4, 3: 2, 7: 1})
    for a in (0, 1009, -3):
        with pytest.raises(OutOfRange):
            multiplicative_order(a, PrimeModulus(1009), f)


def test_order_with_incomplete_factorization():
    # p - 1 = 2 * 3 * q1 * q2 with q1, q2 large primes hidden in a composite cofactor
    q1, q2 = 1000003, 1000033
    p = next(k * 6 * q1 * q2 + 1 for k in range(1, 1000) if sympy.isprime(k * 6 * q1 * q2 + 1))
    k = (p - 1) // (6 * q1 * q2)
    known = sympy.factorint(6 * k)
    f = PartialFactorization(p - 1, tuple(sorted(known.items())), q1 * q2, "composite", 10**6)
    m = PrimeModulus(p)
    # an element of order 6 is fully determined
    z6 = subgroup_generator(m, 6, [(2, 1), (3, 1)]).zeta_d
    assert multiplicative_order(z6, m, f) == 6
    # a generic element is not
    res = multiplicative_order(3, m, f)
    true_order = sympy.n_order(3, p)
    assert isinstance(res, UnknownOrder)
    assert true_order % res.known_part == 0
    assert (q1 * q2) % (true_order // res.known_part) == 0


def test_order_from_bounded_factorization():
    f = factor_bounded(1008)
    assert multiplicative_order(11, PrimeModulus(1009), f) == sympy.n_order(11, 1009)
