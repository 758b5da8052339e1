from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from paveset.core import (
    Constant,
    HarmonicAbove,
    HarmonicBelow,
    LinearGrowth,
    NatFn,
    PointFn,
    Staircase,
    TwoPoint,
    indicator,
    mask_of,
    members,
    nat_eval,
    nat_liminf,
    nat_limit,
    nat_limsup,
    nat_sup,
    pointwise,
    scale,
    staircase_eval,
    truncate,
    upper_shift,
    zero,
)
from paveset.errors import GroundTooLarge, InvalidStaircase, NegativeValue
from paveset.extrat import INF, NEG_INF, ext, ext_max, ext_min, fmt
from paveset.paving import Paving

from strategies import ext_values, finite_values, pointfns


# -- extended rationals ------------------------------------------------------


def test_zero_times_infinity_is_zero():
    assert 0 * INF == 0
    assert INF * F(0) == 0
    assert INF * F(1, 3) is INF


def test_empty_extrema_conventions():
    assert ext_min([]) is INF
    assert ext_max([]) == 0


def test_infinity_ordering_and_arithmetic():
    assert F(10**9) < INF and NEG_INF < F(-(10**9))
    assert INF + 5 is INF and 5 + INF is INF
    with pytest.raises(ArithmeticError):
        INF + NEG_INF


@pytest.mark.parametrize("text,value", [("1/3", F(1, 3)), ("inf", INF), ("-inf", NEG_INF), ("4", F(4))])
def test_ext_parses_exact_text(text, value):
    assert ext(text) == value
    assert fmt(ext(text)) == text


def test_ext_rejects_inexact_floats():
    with pytest.raises(TypeError):
        ext(0.5)
    assert ext(math.inf) is INF


# -- finite functions --------------------------------------------------------


def test_indicator_examples():
    assert indicator(0, 2) == zero(2)
    assert indicator(0b11, 2).values == (1, 1)
    assert indicator(mask_of([0]), 2).values == (1, 0)


def test_truncate_examples():
    f = PointFn((3, 1))
    assert truncate(f, 2).values == (2, 1)
    assert truncate(f, 0) == zero(2)
    assert truncate(f, INF) == f


def test_upper_shift_examples():
    f = PointFn((3, 1))
    assert upper_shift(f, 2).values == (1, 0)
    assert upper_shift(f, 0) == f
    assert upper_shift(PointFn((1, 1)), 2) == zero(2)


def test_scale_examples():
    assert scale(PointFn((INF, 1)), 0).values == (0, 0)
    assert scale(PointFn((1, INF)), 2).values == (2, INF)
    f = PointFn((F(1, 3), 7))
    assert scale(f, 1) == f


def test_pointwise_examples():
    f, g = PointFn((2, 1)), PointFn((1, 3))
    assert pointwise(f, g, "min").values == (1, 1)
    assert pointwise(f, g, "add").values == (3, 4)
    assert pointwise(f, zero(2), "add") == f


def test_negative_values_need_signed_flag():
    with pytest.raises(NegativeValue):
        PointFn((1, -1))
    f = PointFn((1, -2), signed=True)
    assert f.positive_part().values == (1, 0)
    assert f.negative_part().values == (0, 2)


def test_ground_cap():
    with pytest.raises(GroundTooLarge):
        zero(17)


@given(pointfns(values=ext_values), ext_values, ext_values)
def test_truncate_twice_is_truncate_at_min(f, a, b):
    assert truncate(truncate(f, a), b) == truncate(f, min(a, b))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(pointfns(n), pointfns(n))), finite_values)
def test_scale_distributes_over_add(fg, c):
    f, g = fg
    assert scale(pointwise(f, g, "add"), c) == pointwise(scale(f, c), scale(g, c), "add")


# -- staircases --------------------------------------------------------------


def test_staircase_eval_examples():
    H1, H2 = 0b011, 0b001
    s = Staircase(3, ((1, H1), (2, H2)))
    assert staircase_eval(s, 0) == 3
    assert staircase_eval(s, 1) == 1
    assert staircase_eval(s, 2) == 0


def test_staircase_validation():
    with pytest.raises(InvalidStaircase):
        Staircase(2, ((1, 0b01), (1, 0b11)))
    with pytest.raises(InvalidStaircase):
        Staircase(2, ((1, 0b01),), Paving.of(2, [[], [1]]))


def test_collapsed_merges_repeated_sets():
    s = Staircase.collapsed(2, [(1, 0b11), (2, 0b11), (0, 0b01), (INF, 0b01)])
    assert s.terms == ((3, 0b11), (INF, 0b01))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.tuples(finite_values, st.integers(0, (1 << n) - 1)), max_size=4).map(lambda t: (n, t))))
def test_staircase_matches_expanded_sum(data):
    n, raw = data
    # force a decreasing chain by intersecting prefixes
    terms, current = [], (1 << n) - 1
    for a, h in raw:
        current &= h
        terms.append((a, current))
    s = Staircase(n, tuple(terms))
    expanded = zero(n)
    for a, h in terms:
        expanded = pointwise(expanded, scale(indicator(h, n), a), "add")
    assert s.to_pointfn() == expanded


def test_members_round_trip():
    assert members(mask_of([3, 0, 2])) == [0, 2, 3]


# -- functions on ℕ ----------------------------------------------------------


def test_nat_eval_examples():
    f = NatFn((5, 0), HarmonicAbove(1, 1))
    assert nat_eval(f, 0) == 5
    assert nat_eval(f, 3) == F(5, 4)
    assert nat_eval(NatFn((), TwoPoint(0, 1)), 4) == 0


def test_nat_limits_examples():
    ha = NatFn((), HarmonicAbove(1, 1))
    assert nat_liminf(ha) == nat_limsup(ha) == 1
    tp = NatFn((), TwoPoint(0, 1))
    assert (nat_liminf(tp), nat_limsup(tp)) == (0, 1)
    lg = NatFn((), LinearGrowth(2))
    assert nat_liminf(lg) is INF and nat_limsup(lg) is INF


tails = st.one_of(
    finite_values.map(Constant),
    st.tuples(finite_values, finite_values.filter(bool)).map(lambda t: HarmonicAbove(*t)),
    st.tuples(finite_values, finite_values.filter(bool)).map(lambda t: HarmonicBelow(*t)),
    finite_values.filter(bool).map(LinearGrowth),
    st.tuples(finite_values, finite_values.filter(bool)).map(lambda t: TwoPoint(t[0], t[0] + t[1])),
)


@given(tails, st.lists(finite_values, max_size=3))
def test_liminf_below_limsup_equality_iff_not_two_point(tail, prefix):
    f = NatFn(tuple(prefix), tail)
    assert nat_liminf(f) <= nat_limsup(f)
    assert (nat_limit(f) is None) == isinstance(tail, TwoPoint)


@given(tails, st.lists(finite_values, max_size=3))
def test_nat_sup_bounds_sampled_values(tail, prefix):
    f = NatFn(tuple(prefix), tail)
    sup, attained = nat_sup(f)
    sample = [nat_eval(f, k) for k in range(60)]
    assert all(v <= sup for v in sample)
    if attained:
        assert sup in sample
