from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from paveset.capacity import Capacity, NatFilterCapacity, NatFilterKind, enumerate_zero_one, make_capacity
from paveset.core import (
    Constant,
    HarmonicAbove,
    NatFn,
    PointFn,
    Staircase,
    TwoPoint,
    indicator,
    pointwise,
    scale,
    truncate,
    upper_shift,
    zero,
)
from paveset.errors import GroundMismatch
from paveset.extrat import INF, is_inf
from paveset.integral import (
    UNDEFINED,
    choquet,
    choquet_over,
    choquet_signed,
    nat_filter_integral,
    staircase_integral,
)
from paveset.sampling import SMALL_VALUES, all_functions

from oracles import riemann_choquet, zero_one_integral
from strategies import ext_values, finite_values, pointfns

ALPHA = make_capacity([0, 1, 2, 2])


def as_oracle(v):
    return "inf" if is_inf(v) else v


@st.composite
def capacities(draw, n):
    # monotone by construction: sup of nonnegative weights over subsets
    weights = draw(st.lists(st.one_of(finite_values, st.just(INF)), min_size=1 << n, max_size=1 << n))
    weights[0] = F(0)
    return Capacity.from_function(
        n, lambda a: max((weights[b] for b in range(1 << n) if b & ~a == 0), default=F(0))
    )


@st.composite
def fn_and_capacity(draw, values=ext_values):
    n = draw(st.integers(1, 4))
    return draw(pointfns(n, values)), draw(capacities(n))


def test_choquet_examples():
    for A in range(4):
        assert choquet(indicator(A, 2), ALPHA) == ALPHA[A]
    assert choquet(PointFn((3, 1)), ALPHA) == 4
    assert choquet(PointFn((INF, 1)), make_capacity([0, 0, 1, 1])) == 1


def test_choquet_ground_mismatch():
    with pytest.raises(GroundMismatch):
        choquet(zero(3), ALPHA)


@given(fn_and_capacity())
def test_choquet_matches_riemann_oracle(fa):
    f, alpha = fa
    assert as_oracle(choquet(f, alpha)) == riemann_choquet(list(f.values), alpha.table)


def test_choquet_signed_examples():
    half = Capacity.additive([F(1, 2), F(1, 2)])
    assert choquet_signed(PointFn((1, -2), signed=True), half) == F(-1, 2)
    assert choquet_signed(PointFn((3, 1), signed=True), ALPHA) == 4
    ones = make_capacity([0, 1, 1, 1])
    assert choquet_signed(PointFn((INF, -INF), signed=True), ones) is UNDEFINED


def test_choquet_over_examples():
    f = PointFn((3, 1))
    assert choquet_over(0b11, f, ALPHA) == choquet(f, ALPHA)
    assert choquet_over(0, f, ALPHA) == 0
    assert choquet_over(0b01, f, ALPHA) == 3


def test_staircase_integral_examples():
    assert staircase_integral(Staircase(2, ((F(5, 2), 0b10),)), ALPHA) == 5
    s = Staircase(2, ((1, 0b11), (2, 0b01)))
    assert staircase_integral(s, ALPHA) == 4 == choquet(s.to_pointfn(), ALPHA)
    assert staircase_integral(Staircase(2, ((0, 0b11), (0, 0b01))), ALPHA) == 0


def test_nat_filter_integral_examples():
    lower = NatFilterCapacity(NatFilterKind.LOWER_FRECHET)
    upper = NatFilterCapacity(NatFilterKind.UPPER_FRECHET)
    assert nat_filter_integral(NatFn((), HarmonicAbove(1, 1)), lower) == 1
    assert nat_filter_integral(NatFn((), TwoPoint(0, 1)), upper) == 1
    assert nat_filter_integral(NatFn((), TwoPoint(0, 1)), lower) == 0
    principal = NatFilterCapacity(NatFilterKind.PRINCIPAL, 0)
    assert nat_filter_integral(NatFn((5,), Constant(0)), principal) == 5


@given(fn_and_capacity())
def test_indicator_integral_is_capacity(fa):
    f, alpha = fa
    for A in range(1 << alpha.n):
        assert choquet(indicator(A, alpha.n), alpha) == alpha[A]


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(pointfns(n), pointfns(n), capacities(n), capacities(n))))
def test_monotone_in_function_and_capacity(data):
    f, g, alpha, beta = data
    lo = pointwise(f, g, "min")
    assert choquet(lo, alpha) <= choquet(f, alpha)
    both = Capacity(alpha.n, tuple(max(a, b) for a, b in zip(alpha.table, beta.table)))
    assert choquet(f, alpha) <= choquet(f, both)


@given(fn_and_capacity(), finite_values)
def test_positive_homogeneity(fa, c):
    f, alpha = fa
    assert choquet(scale(f, c), alpha) == c * choquet(f, alpha)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_truncation_identities_on_all_zero_one_capacities(n):
    levels = [F(0), F(1, 2), F(1), F(3, 2), F(2), INF]
    for z in enumerate_zero_one(n):
        alpha = z.capacity
        for f in all_functions(n, SMALL_VALUES):
            base = choquet(f, alpha)
            assert as_oracle(base) == zero_one_integral(list(f.values), z.family)
            for a in levels:
                assert choquet(truncate(f, a), alpha) == min(base, a)
                if not is_inf(a):
                    assert choquet(upper_shift(f, a), alpha) == max(base, a) - a


def test_continuity_from_above_on_explicit_sequences():
    alpha = make_capacity([0, 1, 2, 3, 1, 2, 3, 4])
    base = PointFn((2, F(1, 2), 1))
    assert choquet(base, alpha) < INF
    previous = None
    for k in range(1, 60):
        fk = scale(base, F(1, k))
        value = choquet(fk, alpha)
        assert value == choquet(base, alpha) / k
        if previous is not None:
            assert value <= previous
        previous = value
    assert previous < F(1, 10)
