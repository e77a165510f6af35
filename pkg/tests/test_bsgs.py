import random

import pytest
import sympy
from hypothesis import given, settings
import hypothesis.strategies as st

from weakdl.ecgroup import OpCounter
from weakdl.errors import IdentityInput
from weakdl.factorization import ceil_sqrt
from weakdl.modarith import PrimeModulus, subgroup_generator
from weakdl.weaksolve import bsgs_weak, kkm_build, subgroup_context

from conftest import ALPHA_EXAMPLE, Q_EXAMPLE


@pytest.fixture(scope="module")
def toy2_base4(toy2):
    return kkm_build(toy2.G, 4, toy2)


def ctx_for(curve, d):
    return subgroup_generator(PrimeModulus(curve.p), d, list(sympy.factorint(d).items()))


def test_worked_example(k1):
    cnt = OpCounter()
    alpha = bsgs_weak(k1.G, Q_EXAMPLE, subgroup_context(k1, 4), k1, counter=cnt)
    assert alpha == ALPHA_EXAMPLE
    assert cnt.scalar_mults <= 4


def test_d1(k1):
    ctx = subgroup_context(k1, 1)
    assert bsgs_weak(k1.G, k1.G, ctx, k1) == 1
    assert bsgs_weak(k1.G, k1.scalar_mul(2, k1.G), ctx, k1) is None


def test_identity_rejected(k1):
    with pytest.raises(IdentityInput):
        bsgs_weak(k1.G, None, subgroup_context(k1, 4), k1)


def test_order_12_subgroup_exhaustive(toy1, toy1_dlog):
    ctx = ctx_for(toy1, 12)
    members = {a for a in range(1, toy1.p) if pow(a, 12, toy1.p) == 1}
    assert len(members) == 12
    for P, k in toy1_dlog.items():
        if P is None:
            continue
        got = bsgs_weak(toy1.G, P, ctx, toy1)
        assert got == (k if k in members else None)


@pytest.mark.parametrize("d", [2, 3, 4, 6, 8, 9, 16, 27, 48, 864])
def test_members_of_small_subgroups(toy2, d):
    ctx = ctx_for(toy2, d)
    for i in range(d if d < 50 else 50):
        alpha = ctx.element(i)
        assert bsgs_weak(toy2.G, toy2.scalar_mul(alpha, toy2.G), ctx, toy2) == alpha


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**40), st.sampled_from([2**k for k in range(1, 17)] + [27, 3 * 2**10, 9 * 2**8]))
def test_found_with_tables_and_op_bound(toy2, toy2_base4, i, d):
    ctx = ctx_for(toy2, d)
    alpha = ctx.element(i)
    g1 = toy2.scalar_mul(alpha, toy2.G)
    base = toy2_base4
    key = kkm_build(g1, 4, toy2)
    cnt = OpCounter()
    assert bsgs_weak(toy2.G, g1, ctx, toy2, base_table=base, key_table=key, counter=cnt) == alpha
    assert cnt.scalar_mults <= 2 * ceil_sqrt(d) + 1
    assert cnt.point_adds <= (2 * ceil_sqrt(d) + 1) * 3


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 2**44))
def test_non_members_rejected(toy2, k):
    d = 2**10
    ctx = ctx_for(toy2, d)
    if pow(k % toy2.p, d, toy2.p) == 1:
        return
    assert bsgs_weak(toy2.G, toy2.scalar_mul(k, toy2.G), ctx, toy2) is None


def test_worst_case_exponentiation_count(toy2):
    d = 2**12
    ctx = ctx_for(toy2, d)
    cnt = OpCounter()
    g1 = toy2.scalar_mul(random.Random(0).randrange(2, toy2.p), toy2.G)
    assert bsgs_weak(toy2.G, g1, ctx, toy2, counter=cnt) is None
    m = ceil_sqrt(d)
    # baby steps u = 1..m-1, giant steps v = 1..m minus the free exponent 1
    assert 2 * m - 3 <= cnt.scalar_mults <= 2 * m


def test_progress_callback(toy2):
    d = 2**20
    ctx = ctx_for(toy2, d)
    seen = []
    g1 = toy2.scalar_mul(3, toy2.G)
    bsgs_weak(toy2.G, g1, ctx, toy2, progress=lambda c: seen.append(c.point_adds))
    assert seen and all(b > a for a, b in zip(seen, seen[1:]))
