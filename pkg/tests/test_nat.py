from __future__ import annotations

from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from paveset.core import Constant, HarmonicAbove, HarmonicBelow, LinearGrowth, NatFn, TwoPoint, nat_eval
from paveset.nat import (
    nat_attains_max,
    nat_is_bounded,
    nat_is_measurable,
    nat_level_set,
    nat_sandwich,
    nat_ultrafilter_limits,
)
from paveset.paving import NatPavingKind, nat_member

from strategies import finite_values

FS = NatPavingKind.FINITE_SETS
CPE = NatPavingKind.COFINITE_PLUS_EMPTY
FOC = NatPavingKind.FINITE_OR_COFINITE

positive = finite_values.filter(bool)
tails = st.one_of(
    finite_values.map(Constant),
    st.tuples(finite_values, positive).map(lambda t: HarmonicAbove(*t)),
    st.tuples(finite_values, positive).map(lambda t: HarmonicBelow(*t)),
    positive.map(LinearGrowth),
    st.tuples(finite_values, positive).map(lambda t: TwoPoint(t[0], t[0] + t[1])),
)
nat_fns = st.builds(lambda p, t: NatFn(tuple(p), t), st.lists(finite_values, max_size=3), tails)


def test_finite_or_cofinite_examples():
    assert nat_is_measurable(NatFn((), HarmonicAbove(1, 1)), FOC)
    assert not nat_is_measurable(NatFn((), TwoPoint(0, 1)), FOC)


def test_finite_sets_examples():
    assert nat_is_measurable(NatFn((), HarmonicBelow(0, 1)), FS)
    assert not nat_is_measurable(NatFn((), Constant(1)), FS)


def test_cofinite_examples():
    assert nat_is_measurable(NatFn((), LinearGrowth(1)), CPE)
    assert not nat_is_bounded(NatFn((), LinearGrowth(1)))
    assert not nat_is_measurable(NatFn((), HarmonicAbove(1, 1)), CPE)
    assert nat_is_measurable(NatFn((), HarmonicBelow(1, 1)), CPE)


def test_ultrafilter_limit_examples():
    assert nat_ultrafilter_limits(NatFn((), HarmonicAbove(1, 1))).frechet == 1
    assert nat_ultrafilter_limits(NatFn((), TwoPoint(0, 1))).frechet is None
    lim = nat_ultrafilter_limits(NatFn((7,), Constant(0)))
    assert lim.principal == (7,) and lim.frechet == 0


def test_finite_sets_function_is_bounded_with_max():
    # the descriptor formula max(L - c/(n+1), 0) makes HarmonicBelow(0, 1) the zero
    # function; n ↦ 1/(n+1) is HarmonicAbove(0, 1).  Both read the same way here.
    below = NatFn((), HarmonicBelow(0, 1))
    assert nat_eval(below, 0) == 0
    assert nat_is_measurable(below, FS) and nat_is_bounded(below) and nat_attains_max(below)
    f = NatFn((), HarmonicAbove(0, 1))
    assert nat_eval(f, 0) == 1 and nat_eval(f, 3) == F(1, 4)
    assert nat_is_measurable(f, FS) and nat_is_bounded(f) and nat_attains_max(f)


LEVELS = [F(1, 4), F(1, 2), F(1), F(3, 2), F(2), F(3), F(5)]


@settings(max_examples=200)
@given(nat_fns, st.sampled_from(LEVELS), st.booleans())
def test_level_sets_match_pointwise_evaluation(f, level, strict):
    S = nat_level_set(f, level, strict)
    sample = range(300)
    if S is None:
        assert isinstance(f.tail, TwoPoint)
        return
    for k in sample:
        v = nat_eval(f, k)
        assert (k in S) == (v > level if strict else v >= level)


def sampled_measurable(f, kind):
    # definition check over a grid of rational pairs a > b > 0
    for a in LEVELS:
        for b in LEVELS:
            if a > b and nat_sandwich(f, kind, a, b) is None:
                return False
    return True


@settings(max_examples=300)
@given(nat_fns, st.sampled_from(list(NatPavingKind)))
def test_closed_form_criterion_agrees_with_grid_of_pairs(f, kind):
    if nat_is_measurable(f, kind):
        assert sampled_measurable(f, kind)
    for a in LEVELS:
        for b in LEVELS:
            if a > b:
                H = nat_sandwich(f, kind, a, b)
                if H is not None:
                    assert nat_member(H, kind)
                    for k in range(300):
                        v = nat_eval(f, k)
                        assert (v < a or k in H) and (k not in H or v > b)


@given(nat_fns)
def test_finite_or_cofinite_iff_tail_limit(f):
    assert nat_is_measurable(f, FOC) == (not isinstance(f.tail, TwoPoint))


@settings(max_examples=300)
@given(nat_fns)
def test_finite_sets_measurable_real_functions_are_bounded_and_attain_max(f):
    if nat_is_measurable(f, FS):
        assert nat_is_bounded(f) and nat_attains_max(f)
