"""Tests for the character-sum point count and its brute-force oracle."""

import pytest

from abelcover.counting import (
    INFINITY,
    count_points,
    derived_polys,
    eval_at,
    oracle_count,
    space_count_histogram,
    space_pattern_histogram,
)
from abelcover.errors import MultipleVanishing, RamifiedPoint
from abelcover.field import make_field
from abelcover.groupcomb import GroupSpec, class_of
from abelcover.moduli import enumerate_space, make_cover_tuple, normalize_degrees
from abelcover.polyring import Polynomial


@pytest.fixture(scope="module")
def f5():
    return make_field(5)


@pytest.fixture(scope="module")
def f7():
    return make_field(7)


def hyper(ctx, c, coeffs):
    return make_cover_tuple((c,), {(1,): Polynomial(ctx, coeffs)})


def test_conic_point_counts(f5):
    # y^2 = x^2 + 1 over F_5, counts frozen from listing squares:
    # x=0 -> 2, x=1 -> 6 not a square -> 0, x=2,3 -> branch points,
    # x=4 -> 17=2 not a square -> 0, infinity unramified with chi(1)=1.
    G = GroupSpec((2,))
    report = count_points(f5, G, hyper(f5, 1, [1, 0, 1]))
    assert [(ev.x, ev.count) for ev in report.points] == [
        (0, 2),
        (1, 0),
        (2, 1),
        (3, 1),
        (4, 0),
        (INFINITY, 2),
    ]
    assert report.total == 6
    assert report.trace == 0


def test_odd_degree_ramifies_at_infinity(f5):
    # y^2 = x: branch points at 0 and infinity, one point above each.
    G = GroupSpec((2,))
    report = count_points(f5, G, hyper(f5, 1, [0, 1]))
    by_x = {ev.x: ev.count for ev in report.points}
    assert by_x[0] == 1
    assert by_x[INFINITY] == 1
    assert report.total == 6
    ev_inf = next(ev for ev in report.points if ev.x == INFINITY)
    assert ev_inf.beta == (1,)


def test_nonresidue_twist_at_infinity(f5):
    # Scaling by a non-square flips the fibre above infinity from 2 to 0.
    G = GroupSpec((2,))
    plus = count_points(f5, G, hyper(f5, 1, [1, 0, 1]))
    twist = count_points(f5, G, hyper(f5, 2, [1, 0, 1]))
    assert plus.points[-1].count == 2
    assert twist.points[-1].count == 0


def test_eval_rejects_common_roots(f5):
    G = GroupSpec((2, 2))
    f = Polynomial.x_minus(f5, 1)
    bad = make_cover_tuple((1, 1), {(1, 0): f, (0, 1): f, (1, 1): Polynomial.one(f5)})
    with pytest.raises(MultipleVanishing):
        eval_at(f5, G, bad, 1)


def test_oracle_refuses_branch_points(f5):
    G = GroupSpec((2,))
    with pytest.raises(RamifiedPoint):
        oracle_count(f5, G, hyper(f5, 1, [0, 1]), 0)


def test_oracle_on_known_fibres(f5):
    G = GroupSpec((2,))
    t = hyper(f5, 1, [1, 0, 1])
    assert oracle_count(f5, G, t, 0) == 2
    assert oracle_count(f5, G, t, 1) == 0


def test_derived_polynomials_multiply_out(f7):
    """Each derived polynomial equals its defining product, pointwise."""
    G = GroupSpec((3,))
    t = make_cover_tuple(
        (3,),
        {(1,): Polynomial.x_minus(f7, 2), (2,): Polynomial.x_minus(f7, 4)},
    )
    polys = t.polys()
    for dp in derived_polys(f7, G, t):
        expect = Polynomial.one(f7)
        for alpha, e in dp.exponents:
            expect = expect * polys[alpha] ** e
        # the unit constant is kept separate from the monic product
        assert dp.poly == expect
        for x in range(f7.q):
            assert f7.mul(dp.constant, expect.evaluate(x)) == f7.mul(
                dp.constant, dp.poly.evaluate(x)
            )


def test_trivial_pair_contributes_constant_one(f5):
    G = GroupSpec((2,))
    t = hyper(f5, 3, [1, 0, 1])
    trivial = [dp for dp in derived_polys(f5, G, t) if dp.pair.is_trivial]
    assert len(trivial) == 1
    assert trivial[0].poly == Polynomial.one(f5)


def test_cubic_cover_against_oracle(f7):
    # y^3 = c(x-2)(x-4)^2 over F_7, every unramified fibre.
    G = GroupSpec((3,))
    t = make_cover_tuple(
        (3,),
        {(1,): Polynomial.x_minus(f7, 2), (2,): Polynomial.x_minus(f7, 4)},
    )
    report = count_points(f7, G, t)
    for ev in report.points:
        if ev.x in (2, 4, INFINITY):
            continue
        assert oracle_count(f7, G, t, ev.x) == ev.count


def test_hasse_bound_on_elliptic_space(f5):
    """Quartic hyperelliptic covers have genus 1: |trace| <= 2*sqrt(5)."""
    G = GroupSpec((2,))
    dv = normalize_degrees(G, {(1,): 4})
    for cover in enumerate_space(f5, G, dv):
        report = count_points(f5, G, cover)
        assert abs(report.trace) <= 4


def test_bulk_histogram_matches_per_cover_counts(f5):
    G = GroupSpec((2,))
    dv = normalize_degrees(G, {(1,): 4})
    from collections import Counter

    slow = Counter(
        count_points(f5, G, cover, check=False).total
        for cover in enumerate_space(f5, G, dv)
    )
    assert space_count_histogram(f5, G, dv) == slow


def test_bulk_histogram_multifactor(f5):
    G = GroupSpec((2, 2))
    dv = normalize_degrees(G, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    from collections import Counter

    slow = Counter(
        count_points(f5, G, cover, check=False).total
        for cover in enumerate_space(f5, G, dv)
    )
    assert space_count_histogram(f5, G, dv) == slow


def test_pattern_histogram_matches_eval(f5):
    G = GroupSpec((2,))
    dv = normalize_degrees(G, {(1,): 2})
    x = 0
    from collections import Counter

    slow = Counter()
    for cover in enumerate_space(f5, G, dv):
        ev = eval_at(f5, G, cover, x)
        rep = class_of(G, ev.beta).representative
        all_one = ev.count > 0
        slow[(rep, all_one)] += 1
    assert space_pattern_histogram(f5, G, dv, x) == slow


def test_report_serializes(f5):
    G = GroupSpec((2,))
    report = count_points(f5, G, hyper(f5, 1, [1, 0, 1]))
    payload = report.to_json_dict()
    assert payload["total"] == 6
    assert payload["trace"] == 0
    assert len(payload["points"]) == 6
