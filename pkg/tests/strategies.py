"""Hypothesis strategies for small exact instances."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from paveset.core import PointFn
from paveset.extrat import INF
from paveset.paving import Paving, close_under

finite_values = st.fractions(min_value=0, max_value=6, max_denominator=4)
ext_values = st.one_of(finite_values, finite_values, finite_values, st.just(INF))
small_values = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), INF])
grounds = st.integers(min_value=1, max_value=4)


@st.composite
def pointfns(draw, n=None, values=ext_values):
    n = draw(grounds) if n is None else n
    return PointFn(tuple(draw(st.lists(values, min_size=n, max_size=n))))


@st.composite
def pavings(draw, n=None):
    n = draw(grounds) if n is None else n
    sets = draw(st.sets(st.integers(min_value=1, max_value=(1 << n) - 1)))
    return Paving(n, (0, *sets))


@st.composite
def lattices(draw, n=None):
    return close_under(draw(pavings(n)), ("cap", "cup"))


@st.composite
def paving_and_fn(draw, values=ext_values):
    n = draw(grounds)
    return draw(pavings(n)), draw(pointfns(n, values))
