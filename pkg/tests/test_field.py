"""Tests for table-backed finite fields and coherent characters."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelcover.errors import BadOrder, NotPrime, TooLarge
from abelcover.field import CharValue, character, make_field

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]


@pytest.fixture(scope="module")
def f5():
    return make_field(5)


@pytest.fixture(scope="module")
def f9():
    return make_field(3, 2)


def test_rejects_composite_characteristic():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(NotPrime):
        make_field(1)


def test_rejects_oversized_tables():
    with pytest.raises(TooLarge):
        make_field(2, 40)


def test_modulus_is_least_irreducible():
    # Frozen by scanning monic polynomials in encoding order and trial
    # dividing: x^2+x+1 over F_2, x^2+1 over F_3, x^3+x+1 over F_2.
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 3).modulus == (1, 1, 0, 1)
    assert make_field(5).modulus is None


def test_generator_is_smallest_primitive_element():
    # 2 generates F_5* and 3 generates F_7*; frozen from a direct scan.
    assert make_field(5).generator == 2
    assert make_field(7).generator == 3


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_units_have_full_multiplicative_order(p, k):
    ctx = make_field(p, k)
    g = ctx.generator
    seen = set()
    a = 1
    for _ in range(ctx.q - 1):
        seen.add(a)
        a = ctx.mul(a, g)
    assert seen == set(ctx.units())


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_dlog_roundtrip(p, k):
    ctx = make_field(p, k)
    for a in ctx.units():
        assert ctx.pow(ctx.generator, ctx.dlog(a)) == a


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_field_axioms_sampled(pk, data):
    ctx = make_field(*pk)
    pick = st.integers(min_value=0, max_value=ctx.q - 1)
    a, b, c = data.draw(pick), data.draw(pick), data.draw(pick)
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.add(a, ctx.neg(a)) == 0
    if a != 0:
        assert ctx.mul(a, ctx.inv(a)) == 1


def test_character_order_must_divide_group_order(f5):
    with pytest.raises(BadOrder):
        character(f5, 3, 2)


def test_character_values(f5):
    # dlog table for F_5 with generator 2: 1->0, 2->1, 4->2, 3->3.
    chi = lambda a: character(f5, 2, a)
    assert chi(0).is_zero
    assert chi(1).is_one
    assert chi(4).is_one
    assert chi(2) == CharValue.root(2, 1)
    assert chi(3) == CharValue.root(2, 1)


@pytest.mark.parametrize("p,k", [(5, 1), (7, 1), (3, 2), (13, 1)])
def test_character_sums_vanish(p, k):
    """Sum over F_q* of a nontrivial character is zero, exponent-exactly."""
    ctx = make_field(p, k)
    for m in range(2, ctx.q):
        if (ctx.q - 1) % m:
            continue
        counts = [0] * m
        for a in ctx.units():
            counts[character(ctx, m, a).exponent] += 1
        assert len(set(counts)) == 1


def test_coherence_under_power_embedding(f9):
    """chi_d is recovered from chi_m by raising to m/d, for d | m | q-1."""
    q1 = f9.q - 1
    divs = [d for d in range(1, q1 + 1) if q1 % d == 0]
    for m in divs:
        for d in divs:
            if m % d:
                continue
            for a in f9.units():
                assert character(ctx := f9, m, a).power(m // d) == character(
                    ctx, d, a
                ).in_order(m)


def test_char_value_arithmetic():
    z = CharValue.zero(4)
    i = CharValue.root(4, 1)
    assert z.times(i).is_zero
    assert i.times(i) == CharValue.root(4, 2)
    assert i.power(4).is_one
    assert i.power(0).is_one
    with pytest.raises(BadOrder):
        i.times(CharValue.root(2, 1))
    with pytest.raises(BadOrder):
        CharValue.root(3, 1).in_order(4)
