import math

import pytest
import sympy
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from weakdl.errors import BadHints
from weakdl.factorization import (
    DivisorSet,
    EffortBudget,
    PartialFactorization,
    bsgs_cost,
    ceil_sqrt,
    divisors_up_to,
    factor_bounded,
    parse_hints,
    reduce_divisor_set,
    test_cost_log2,
    weak_key_count,
    weak_key_count_log2,
)

K1_PM1 = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364140
K1_48 = (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48)


def product(f):
    return math.prod(q**e for q, e in f.known_factors) * f.cofactor


def naive_maximal(ds):
    return [d for d in ds if not any(e != d and e % d == 0 for e in ds)]


def test_small_examples():
    assert factor_bounded(12).prime_powers() == ((2, 2), (3, 1))
    f = factor_bounded(1008)
    assert f.prime_powers() == ((2, 4), (3, 2), (7, 1))
    assert f.cofactor == 1 and f.fully_factored
    assert factor_bounded(1).prime_powers() == ()


def test_secp256k1_small_primes():
    f = factor_bounded(K1_PM1)
    primes = dict(f.prime_powers())
    assert primes[2] == 6 and primes[3] == 1
    assert product(f) == K1_PM1


@settings(max_examples=300)
@given(st.integers(min_value=1, max_value=10**6))
def test_matches_sympy_below_a_million(n):
    f = factor_bounded(n)
    assert f.cofactor == 1
    assert dict(f.prime_powers()) == sympy.factorint(n)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=2**120))
def test_product_identity(n):
    f = factor_bounded(n, EffortBudget(trial_bound=10**4, rho_iterations=2**12))
    assert product(f) == n
    assert all(sympy.isprime(q) for q, _ in f.known_factors)
    if not f.fully_factored:
        assert f.cofactor > 1 and not sympy.isprime(f.cofactor)


def test_deterministic_and_monotone():
    # two 40-bit primes: out of reach of a tiny rho budget, easy for a larger one
    q1, q2 = 1099511627791, 1099511628401
    n = 2**5 * 3 * q1 * q2
    low = factor_bounded(n, EffortBudget(rho_iterations=2**8))
    assert low == factor_bounded(n, EffortBudget(rho_iterations=2**8))
    assert not low.fully_factored
    high = factor_bounded(n, EffortBudget(rho_iterations=2**22))
    assert high.fully_factored
    assert set(dict(low.prime_powers())) <= set(dict(high.prime_powers()))


def test_hints():
    q1, q2 = 1099511627791, 1099511628401
    n = 7 * q1 * q2
    f = factor_bounded(n, EffortBudget(rho_iterations=1), [(q1, 1)])
    assert f.prime_powers() == ((7, 1), (q1, 1), (q2, 1))
    with pytest.raises(BadHints):
        factor_bounded(n, hints=[(11, 1)])
    with pytest.raises(BadHints):
        factor_bounded(n, hints=[(q1 * q2, 1)])


def test_parse_hints():
    text = """
    # comment
    3
    [secp256k1]
    107361793816595537   # inline
    2^6
    [other]
    0x11
    """
    sections = parse_hints(text)
    assert sections[None] == [(3, 1)]
    assert sections["secp256k1"] == [(107361793816595537, 1), (2, 6)]
    assert sections["other"] == [(17, 1)]
    with pytest.raises(BadHints):
        parse_hints("12x")


def test_partial_factorization_invariants():
    with pytest.raises(BadHints):
        PartialFactorization(12, ((2, 2),), 1)
    with pytest.raises(BadHints):
        PartialFactorization(12, ((4, 1), (3, 1)))
    with pytest.raises(BadHints):
        PartialFactorization(12, ((2, 2),), 3, "one")
    f = PartialFactorization(12, ((2, 2),), 3, "prime")
    assert f.prime_powers() == ((2, 2), (3, 1))
    assert f.largest_prime_bits() == 2


def test_divisors_examples():
    assert divisors_up_to(factor_bounded(12), 6).divisors == (1, 2, 3, 4, 6)
    assert divisors_up_to(factor_bounded(K1_PM1), 48).divisors == K1_48
    ds = divisors_up_to(factor_bounded(1008), 20)
    assert ds.divisors == (1, 2, 3, 4, 6, 7, 8, 9, 12, 14, 16, 18)
    assert ds.complete


def test_reduce_examples():
    assert reduce_divisor_set(DivisorSet(48, K1_48, True)).divisors == (32, 48)
    assert reduce_divisor_set(divisors_up_to(factor_bounded(K1_PM1), 48)).divisors == (32, 48)
    assert reduce_divisor_set(DivisorSet(1, (1,), True)).divisors == (1,)
    ds = DivisorSet(20, (1, 2, 3, 4, 6, 7, 8, 9, 12, 14, 16, 18), True)
    assert reduce_divisor_set(ds).divisors == (12, 14, 16, 18)


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=2, max_value=10**7), st.integers(min_value=1, max_value=10**5))
def test_divisors_and_reduction_oracle(n, bound):
    f = factor_bounded(n)
    ds = divisors_up_to(f, bound)
    assert list(ds.divisors) == [d for d in sympy.divisors(n) if d <= bound]
    red = reduce_divisor_set(ds)
    assert list(red.divisors) == naive_maximal(ds.divisors)
    for d in ds:
        assert any(e % d == 0 for e in red)


def test_incomplete_divisor_set():
    q1, q2 = 1099511627791, 1099511628401
    f = factor_bounded(6 * q1 * q2, EffortBudget(rho_iterations=2**6))
    assert divisors_up_to(f, 10**5).complete
    assert not divisors_up_to(f, 2**64).complete


def test_counts_examples():
    assert weak_key_count_log2(factor_bounded(12), 6) == 3.0
    assert weak_key_count(factor_bounded(1008), 1) == 1
    assert bsgs_cost([4]) == 4
    assert [ceil_sqrt(d) for d in (1, 2, 4, 5, 9, 10)] == [1, 2, 2, 3, 3, 4]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(list(sympy.primerange(3, 10**4))), st.integers(1, 10**4))
def test_weak_key_count_brute_force(p, bound):
    f = factor_bounded(p - 1)
    brute = sum(1 for a in range(1, p) if sympy.n_order(a, p) <= bound)
    assert weak_key_count(f, bound) == brute


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10**9), st.integers(1, 10**6), st.integers(1, 10**6))
def test_monotone_in_bound(n, b1, b2):
    assume(b1 != b2)
    lo, hi = sorted((b1, b2))
    f = factor_bounded(n)
    assert weak_key_count_log2(f, lo) <= weak_key_count_log2(f, hi)


def test_cost_can_drop_when_bound_grows():
    # R(12, 6) = {4, 6} costs 4 + 6, R(12, 12) = {12} costs only 8
    f = factor_bounded(12)
    assert test_cost_log2(f, 6) > test_cost_log2(f, 12)
