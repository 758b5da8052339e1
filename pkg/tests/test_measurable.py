from __future__ import annotations

from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from paveset.capacity import agree_on
from paveset.core import PointFn, indicator, mask_of, scale, truncate, upper_shift, zero
from paveset.errors import IsMeasurable, NotAnAlgebra, NotMeasurable
from paveset.extrat import INF, is_finite
from paveset.integral import choquet
from paveset.measurable import (
    MonotoneMap,
    compose_monotone,
    is_measurable,
    is_measurable_algebra,
    is_measurable_signed,
    nonmeasurability_witness,
    oracle_is_measurable,
    sandwich_holds,
    staircase_approx,
    t3_cell_ok,
    t3_partition,
)
from paveset.paving import Paving, algebra_from_partition, all_pavings, atoms, set_partitions
from paveset.sampling import all_functions

from oracles import level_sets, sandwich_measurable
from strategies import finite_values, paving_and_fn, pointfns

CHAIN2 = Paving.of(2, [[], [0], [0, 1]])


def test_is_measurable_examples():
    P = Paving.power_set(3)
    for f in all_functions(3, (0, 1, INF)):
        assert is_measurable(f, P)
    assert is_measurable(PointFn((2, 1)), CHAIN2)
    report = is_measurable(PointFn((1, 2)), CHAIN2)
    assert not report
    assert report.missing_level == 0b10
    assert report.failing_pair == (F(7, 4), F(3, 2))
    empty = Paving(2, (0,))
    assert not is_measurable(PointFn((F(1, 3), F(1, 3))), empty)
    assert is_measurable(zero(2), empty)


def test_infinite_value_critical_pair():
    report = is_measurable(PointFn((INF, 1)), Paving.of(2, [[], [0, 1]]))
    assert report.missing_level == 0b01
    a, b = report.failing_pair
    assert a > b > 1 and is_finite(a)
    assert not sandwich_holds(PointFn((INF, 1)), Paving.of(2, [[], [0, 1]]), a, b)


@settings(max_examples=300)
@given(paving_and_fn())
def test_level_set_criterion_matches_sandwich_definition(Ef):
    E, f = Ef
    assert bool(is_measurable(f, E)) == sandwich_measurable(list(f.values), set(E.sets), E.n)
    assert bool(is_measurable(f, E)) == level_sets(list(f.values)).issubset(set(E.sets))


@settings(max_examples=300)
@given(paving_and_fn())
def test_failing_pair_has_no_sandwich(Ef):
    E, f = Ef
    report = is_measurable(f, E)
    if not report:
        a, b = report.failing_pair
        assert a > b > 0
        assert not sandwich_holds(f, E, a, b)


def test_is_measurable_signed_examples():
    f = PointFn((F(1, 2), 3, 0))
    E = Paving.of(3, [[], [1], [0, 1]])
    assert is_measurable_signed(f, E) == bool(is_measurable(f, E))
    assert is_measurable_signed(PointFn((1, -1), signed=True), Paving.power_set(2))
    assert not is_measurable_signed(PointFn((1, -2), signed=True), CHAIN2)


def test_oracle_examples():
    assert oracle_is_measurable(PointFn((3, 1, 0)), Paving.power_set(3))
    assert not oracle_is_measurable(PointFn((1, 2)), CHAIN2)
    assert oracle_is_measurable(PointFn((2, 1)), CHAIN2)


def test_oracle_agrees_with_level_sets_over_values_0_1_2():
    for n in (1, 2, 3):
        for E in all_pavings(n):
            for f in all_functions(n, (0, 1, 2)):
                assert oracle_is_measurable(f, E) == bool(is_measurable(f, E))


def check_staircase(f, E, depth):
    s = staircase_approx(f, E, depth)
    g = s.to_pointfn()
    bound = F(2, 2 ** depth)
    for fv, gv in zip(f.values, g.values):
        assert gv <= fv
        if is_finite(fv):
            assert fv - gv <= bound
        else:
            assert gv == INF
    assert all(h in E for _, h in s.terms)
    return s


def test_staircase_examples():
    E = Paving.of(2, [[], [0], [0, 1]])
    A = mask_of([0])
    for depth in (1, 2, 3):
        s = check_staircase(indicator(A, 2), E, depth)
    s1 = staircase_approx(indicator(A, 2), E, 1)
    assert set(s1.to_pointfn().values) <= {0, F(1, 2), 1}
    assert staircase_approx(zero(2), E, 4).terms == ()
    s = check_staircase(PointFn((3, 1)), Paving.power_set(2), 2)
    assert s.to_pointfn().values == (F(11, 4), F(3, 4))
    with pytest.raises(NotMeasurable):
        staircase_approx(PointFn((1, 2)), E, 2)


@given(paving_and_fn(), st.integers(1, 6))
def test_staircase_bound_property(Ef, depth):
    E, f = Ef
    assume(is_measurable(f, E))
    check_staircase(f, E, depth)


def test_staircases_converge_uniformly_and_stay_measurable():
    f = PointFn((F(7, 3), F(1, 5), 0))
    E = Paving.of(3, [[], [0], [0, 1], [0, 1, 2]])
    gaps = []
    for depth in range(1, 10):
        g = staircase_approx(f, E, depth).to_pointfn()
        assert is_measurable(g, E)
        gaps.append(max(a - b for a, b in zip(f.values, g.values)))
    assert gaps[-1] <= F(1, 256)


def test_witness_examples():
    w = nonmeasurability_witness(PointFn((1, 2)), CHAIN2)
    assert agree_on(w.alpha, w.beta, CHAIN2)
    assert w.integral_alpha < w.integral_beta
    assert (w.integral_alpha, w.integral_beta) == (0, 2)
    assert w.g.values == (0, 1)
    with pytest.raises(IsMeasurable):
        nonmeasurability_witness(zero(2), CHAIN2)
    empty = Paving(2, (0,))
    w = nonmeasurability_witness(PointFn((1, 1)), empty)
    assert all(w.alpha[a] == 0 for a in (0, 1, 2))
    t = w.t_gap
    assert w.beta[w.g.above(t)] >= 2 - t


@settings(max_examples=300)
@given(paving_and_fn())
def test_witness_capacities_agree_and_separate(Ef):
    E, f = Ef
    assume(not is_measurable(f, E))
    w = nonmeasurability_witness(f, E)
    assert agree_on(w.alpha, w.beta, E)
    assert w.alpha.dominated_by(w.beta)
    assert choquet(w.g, w.alpha) < choquet(w.g, w.beta)
    assert all(0 <= v <= 1 for v in w.tau1 + w.tau2)


def test_compose_monotone_examples():
    f = PointFn((3, 1))
    assert compose_monotone(f, MonotoneMap.identity()) == f
    psi = MonotoneMap.sampled(lambda t: t / (1 + t), f.values, at_infinity=1)
    assert compose_monotone(f, psi).values == (F(3, 4), F(1, 2))
    flat = MonotoneMap(((0, 0), (1, 0)))
    assert compose_monotone(f, flat) == zero(2)


@given(paving_and_fn(), st.lists(st.tuples(finite_values.filter(bool), finite_values), min_size=1, max_size=4))
def test_composition_preserves_measurability(Ef, steps):
    E, f = Ef
    assume(is_measurable(f, E))
    pts, t, y = [(0, 0)], F(0), F(0)
    for dt, dy in steps:
        t, y = t + dt, y + dy
        pts.append((t, y))
    assert is_measurable(compose_monotone(f, MonotoneMap(tuple(pts))), E)


@given(paving_and_fn(), finite_values, finite_values)
def test_scaling_and_truncation_preserve_measurability(Ef, c, a):
    E, f = Ef
    assume(is_measurable(f, E))
    assert is_measurable(scale(f, c), E)
    assert is_measurable(truncate(f, a), E)
    assert is_measurable(upper_shift(f, a), E)


BLOCKS = algebra_from_partition(4, [mask_of([0, 1]), mask_of([2, 3])])


def test_algebra_examples():
    assert is_measurable_algebra(PointFn((5, 5, 2, 2)), BLOCKS)
    assert not is_measurable_algebra(PointFn((5, 4, 2, 2)), BLOCKS)
    assert is_measurable_algebra(PointFn((3, 3)), Paving.trivial(2))
    with pytest.raises(NotAnAlgebra):
        is_measurable_algebra(PointFn((1, 1)), CHAIN2)


def test_t3_partition_examples():
    assert t3_partition(PointFn((5, 5, 2, 2)), BLOCKS, 1) == [0b0011, 0b1100]
    assert t3_partition(PointFn((F(1, 2), 9, -3), signed=True), Paving.power_set(3), F(1, 3)) == [1, 2, 4]
    assert t3_partition(PointFn((2, 2)), Paving.trivial(2), F(1, 2)) == [0b11]
    with pytest.raises(NotMeasurable):
        t3_partition(PointFn((5, 4, 2, 2)), BLOCKS, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_algebra_criterion_equals_signed_measurability(n):
    values = (-INF, -1, 0, 1, INF) if n <= 3 else (-1, 0, 2)
    for blocks in set_partitions(n):
        A = algebra_from_partition(n, blocks)
        for combo in product(values, repeat=n):
            f = PointFn(combo, signed=True)
            assert is_measurable_algebra(f, A) == is_measurable_signed(f, A)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.sampled_from(list(set_partitions(n))), pointfns(n, finite_values))), finite_values.filter(bool))
def test_t3_partition_postconditions(data, a):
    blocks, raw = data
    n = raw.n
    A = algebra_from_partition(n, blocks)
    # make f constant on blocks so that it is measurable
    f = PointFn(tuple(raw(min(x for x in range(n) if b >> x & 1)) for x in range(n) for b in blocks if b >> x & 1))
    cells = t3_partition(f, A, a)
    covered = 0
    for c in cells:
        assert c in A and c and not c & covered
        covered |= c
        assert t3_cell_ok(f, c, a)
    assert covered == A.full
    assert cells == list(atoms(A).blocks)
