"""Measurability of a function with respect to a paving ℰ on a finite set.

``f ≥ 0`` is ℰ-measurable when ``∫ f dα = ∫ f dβ`` for every pair of monotone
set functions agreeing on ℰ.  Equivalently, every pair ``a > b > 0`` admits a
sandwich set ``H ∈ ℰ`` with ``{f ≥ a} ⊆ H ⊆ {f > b}``.

Finite-model reduction used by :func:`is_measurable`.  Let ``v_1 < ... < v_m``
be the distinct positive values of ``f`` (``inf`` included) and ``v_0 = 0``.

* If every ``{f ≥ v_j}`` is in ℰ, then for any ``a > b > 0`` the set
  ``{f > b}`` is either empty or equal to ``{f ≥ v_j}`` for the least
  ``v_j > b``; it contains ``{f ≥ a}`` and serves as ``H``.
* If ``L = {f ≥ v_j} ∉ ℰ``, pick ``v_{j-1} < b < a ≤ v_j``.  Then
  ``{f ≥ a} = L = {f > b}``, the only candidate is ``L`` itself, and the
  sandwich fails.

So ``f`` is measurable iff all of its positive level sets lie in ℰ.  The
brute-force :func:`oracle_is_measurable` checks the definition directly
against every {0,1}-valued capacity, which is enough by the reduction from
general to two-valued set functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Iterable

from .capacity import Capacity, agree_on, enumerate_zero_one
from .core import (
    ONE,
    ORACLE_MAX,
    ZERO,
    PointFn,
    Staircase,
    full,
    is_subset,
)
from .errors import GroundMismatch, GroundTooLarge, IsMeasurable, NegativeValue, NotAnAlgebra, NotMeasurable
from .extrat import INF, ExtRat, ext, is_finite, is_inf
from .integral import choquet
from .paving import AtomPartition, Paving, atoms, is_algebra


@dataclass(frozen=True)
class MeasurabilityReport:
    measurable: bool
    failing_pair: tuple[ExtRat, ExtRat] | None = None
    missing_level: int | None = None

    def __bool__(self) -> bool:
        return self.measurable


def _check(f: PointFn, E: Paving) -> None:
    if f.n != E.n:
        raise GroundMismatch(f"function on {f.n} points, paving on {E.n}")
    if f.signed and not f.is_nonnegative():
        raise NegativeValue("measurability of signed functions goes through f⁺ and f⁻")


def critical_pair(prev: ExtRat, value: ExtRat) -> tuple[Fraction, Fraction]:
    """A pair ``a > b`` with ``prev < b < a ≤ value``, both finite.

    For a finite ``value`` this is ``b`` = midpoint of ``(prev, value)`` and
    ``a`` = midpoint of ``(b, value)``.  When ``value`` is ``inf`` the pair
    ``(prev + 2, prev + 1)`` isolates the set where ``f = inf``.
    """
    if is_inf(value):
        return prev + 2, prev + 1
    b = (prev + value) / 2
    a = (prev + 3 * value) / 4
    return a, b


def is_measurable(f: PointFn, E: Paving) -> MeasurabilityReport:
    """Sandwich criterion, decided through the positive level sets of ``f``.

    On failure, reports the critical pair around the smallest offending value
    and the level set missing from ``E``.
    """
    _check(f, E)
    prev: ExtRat = ZERO
    for v in f.positive_values():
        level = f.at_least(v)
        if level not in E:
            return MeasurabilityReport(False, critical_pair(prev, v), level)
        prev = v
    return MeasurabilityReport(True)


def is_measurable_signed(f: PointFn, E: Paving) -> bool:
    return bool(is_measurable(f.positive_part(), E)) and bool(is_measurable(f.negative_part(), E))


def sandwich(E: Paving, lower: int, upper: int) -> int | None:
    """First member ``H`` of ``E`` (canonical order) with ``lower ⊆ H ⊆ upper``."""
    for h in E:
        if is_subset(lower, h) and is_subset(h, upper):
            return h
    return None


def sandwich_holds(f: PointFn, E: Paving, a: ExtRat, b: ExtRat) -> bool:
    return sandwich(E, f.at_least(a), f.above(b)) is not None


# -- brute-force oracle -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _zero_one_tables(n: int) -> tuple[tuple[int, Capacity], ...]:
    return tuple((z.code, z.capacity) for z in enumerate_zero_one(n))


def oracle_disagreement(f: PointFn, E: Paving) -> tuple[Capacity, Capacity] | None:
    """Two {0,1}-valued capacities that agree on ``E`` but integrate ``f`` differently.

    Enumerates every {0,1}-valued capacity, groups them by their trace on
    ``E`` and compares integrals within each group.
    """
    _check(f, E)
    if E.n > ORACLE_MAX:
        raise GroundTooLarge(f"oracle capped at n = {ORACLE_MAX}", n=E.n, cap=ORACLE_MAX)
    trace_mask = 0
    for h in E:
        trace_mask |= 1 << h
    seen: dict[int, tuple[ExtRat, Capacity]] = {}
    for code, cap in _zero_one_tables(E.n):
        trace = code & trace_mask
        value = choquet(f, cap)
        if trace in seen:
            other_value, other = seen[trace]
            if other_value != value:
                return other, cap
        else:
            seen[trace] = (value, cap)
    return None


def oracle_is_measurable(f: PointFn, E: Paving) -> bool:
    return oracle_disagreement(f, E) is None


# -- staircase approximation ------------------------------------------------------------


def staircase_approx(f: PointFn, E: Paving, depth: int) -> Staircase:
    """Staircase ``g_n = 2^{-n} Σ_{i≥1} φ_{H_i}`` with ``H_i = {f ≥ (i+1)/2^n} ∈ E``.

    ``g_n ≤ f`` everywhere, ``g_n = inf`` exactly where ``f = inf``, and
    ``f − g_n ≤ 2^{1−n}`` wherever ``f`` is finite.  Consecutive ``H_i`` that
    coincide are merged: the level set ``{f ≥ v_j}`` absorbs every ``i`` with
    ``v_{j−1} < (i+1)/2^n ≤ v_j``.
    """
    _check(f, E)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    report = is_measurable(f, E)
    if not report:
        raise NotMeasurable(
            "staircase approximation needs a measurable function", missing_level=report.missing_level
        )
    step = Fraction(1, 2 ** depth)
    terms: list[tuple[ExtRat, int]] = []
    prev_index = 1  # multiples m = i + 1 start at 2
    for v in f.positive_values():
        level = f.at_least(v)
        if is_inf(v):
            terms.append((INF, level))
            break
        top = floor(v / step)
        count = top - prev_index
        if count > 0:
            terms.append((step * count, level))
            prev_index = top
    return Staircase.collapsed(E.n, terms, paving=E)


# -- non-measurability witness ----------------------------------------------------------


@dataclass(frozen=True)
class WitnessReport:
    """Two capacities agreeing on ``E`` that integrate ``g`` differently."""

    failing_pair: tuple[ExtRat, ExtRat]
    g: PointFn
    tau1: tuple[ExtRat, ...]
    tau2: tuple[ExtRat, ...]
    alpha: Capacity
    beta: Capacity
    t_gap: Fraction
    integral_alpha: ExtRat
    integral_beta: ExtRat


WITNESS_CLAMP = Fraction(2)


def nonmeasurability_witness(f: PointFn, E: Paving) -> WitnessReport:
    """Build α, β equal on ``E`` with ``∫ g dα < ∫ g dβ`` for ``g = (f∧a − f∧b)/(a−b)``.

    ``(a, b)`` is the failing pair of :func:`is_measurable`, so no ``H ∈ E`` lies
    between ``{f > a}`` and ``{f > b}``.  With

        τ₁(A) = 0 if A = X else sup{g(x) : x ∉ A}
        τ₂(A) = 1 if A = ∅ else inf{g(x) : x ∈ A}
        w(H)  = 2 − τ₁(H) − τ₂(H)

    α takes the sup of ``w`` over members of ``E`` inside ``A`` and β the inf over
    members containing ``A``.  When no member contains ``A`` the inf is clamped
    to 2, the largest value ``w`` can take; this keeps β finite and monotone.
    """
    _check(f, E)
    report = is_measurable(f, E)
    if report:
        raise IsMeasurable("f is measurable; no witness exists")
    a, b = report.failing_pair
    n = f.n
    X = full(n)
    g = PointFn(tuple((min(v, a) - min(v, b)) / (a - b) for v in f.values))
    gv = g.values

    def sup_outside(A: int) -> ExtRat:
        return max((gv[x] for x in range(n) if not A >> x & 1), default=ZERO)

    def inf_inside(A: int) -> ExtRat:
        return min((gv[x] for x in range(n) if A >> x & 1), default=INF)

    tau1 = tuple(ZERO if A == X else sup_outside(A) for A in range(1 << n))
    tau2 = tuple(ONE if A == 0 else inf_inside(A) for A in range(1 << n))
    w = {h: 2 - tau1[h] - tau2[h] for h in E}
    alpha = Capacity.from_function(n, lambda A: max(w[h] for h in E if is_subset(h, A)))
    beta = Capacity.from_function(
        n, lambda A: min((w[h] for h in E if is_subset(A, h)), default=WITNESS_CLAMP)
    )
    t_gap = Fraction(1, 2)
    _check_witness(g, E, tau1, tau2, alpha, beta)
    ia, ib = choquet(g, alpha), choquet(g, beta)
    assert ia < ib, "witness integrals are not strictly ordered"
    return WitnessReport(report.failing_pair, g, tau1, tau2, alpha, beta, t_gap, ia, ib)


def _check_witness(g, E, tau1, tau2, alpha, beta) -> None:
    n = g.n
    assert tau1[0] == 1 and tau2[0] == 1
    for A in range(1 << n):
        for i in range(n):
            B = A | (1 << i)
            assert tau1[B] <= tau1[A] and tau2[B] <= tau2[A], "τ not decreasing"
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        upper = g.above(t)
        for h in E:
            if is_subset(upper, h):
                assert tau1[h] <= t and tau2[h] == 0, "bound for supersets of {g > t} fails"
            if is_subset(h, upper):
                assert tau1[h] == 1 and tau2[h] >= t, "bound for subsets of {g > t} fails"
        assert beta[upper] > 1 > alpha[upper], "no strict gap at {g > t}"
    assert agree_on(alpha, beta, E), "α and β differ on E"
    assert alpha.dominated_by(beta), "α ≤ β fails"


# -- composition with monotone maps -----------------------------------------------------


@dataclass(frozen=True)
class MonotoneMap:
    """Continuous nondecreasing ``ψ: [0, inf] → [0, inf]`` with ``ψ(0) = 0``.

    Piecewise linear through ``points``.  Past the last breakpoint ``ψ`` keeps
    the final slope, unless ``at_infinity`` is given finite, in which case it
    rises continuously towards that value as
    ``last + (ψ(∞) − last) · s / (s + 1)`` with ``s`` the distance past the
    last breakpoint.
    """

    points: tuple[tuple[ExtRat, ExtRat], ...]
    at_infinity: ExtRat | None = None

    def __post_init__(self) -> None:
        pts = tuple((ext(t), ext(y)) for t, y in self.points)
        if not pts or pts[0] != (ZERO, ZERO):
            raise ValueError("a monotone map starts at (0, 0)")
        for (t0, y0), (t1, y1) in zip(pts, pts[1:]):
            if not (is_finite(t1) and t0 < t1):
                raise ValueError("breakpoints must be finite and strictly increasing")
            if not (is_finite(y1) and y0 <= y1):
                raise ValueError("a monotone map must be nondecreasing")
        object.__setattr__(self, "points", pts)
        if self.at_infinity is not None:
            inf_value = ext(self.at_infinity)
            if inf_value < pts[-1][1]:
                raise ValueError("ψ(inf) below the last breakpoint value")
            object.__setattr__(self, "at_infinity", inf_value)

    @classmethod
    def identity(cls) -> MonotoneMap:
        return cls(((ZERO, ZERO), (ONE, ONE)))

    @classmethod
    def sampled(cls, fn, ts: Iterable[object], at_infinity: object = None) -> MonotoneMap:
        """Breakpoints of ``fn`` at the finite points ``ts`` (exact values expected)."""
        grid = sorted({ZERO} | {ext(t) for t in ts if is_finite(ext(t))})
        return cls(tuple((t, ext(fn(t))) for t in grid), at_infinity)

    def _final_slope(self) -> Fraction:
        if len(self.points) < 2:
            return ZERO
        (t0, y0), (t1, y1) = self.points[-2:]
        return (y1 - y0) / (t1 - t0)

    def __call__(self, t: ExtRat) -> ExtRat:
        t = ext(t)
        if t < 0:
            raise ValueError("ψ is defined on [0, inf]")
        last_t, last_y = self.points[-1]
        slope = self._final_slope()
        if is_inf(t):
            if self.at_infinity is not None:
                return self.at_infinity
            return INF if slope > 0 else last_y
        for (t0, y0), (t1, y1) in zip(self.points, self.points[1:]):
            if t <= t1:
                return y0 + (y1 - y0) * (t - t0) / (t1 - t0)
        s = t - last_t
        cap = self.at_infinity
        if cap is None or is_inf(cap):
            if cap is not None and slope == 0:
                slope = ONE
            return last_y + slope * s
        return last_y + (cap - last_y) * s / (s + 1)


def compose_monotone(f: PointFn, psi: MonotoneMap) -> PointFn:
    """``ψ ∘ f``; measurable whenever ``f`` is, since ``ψ(0) = 0``."""
    return PointFn(tuple(psi(v) for v in f.values))


# -- algebras ---------------------------------------------------------------------------


def is_measurable_algebra(f: PointFn, A: Paving) -> bool:
    """Measurability w.r.t. a finite algebra: ``f`` is constant on every atom.

    The ultrafilters of a finite algebra are principal on its atoms, so the
    limit along an ultrafilter is the (common) value on the atom.
    """
    if f.n != A.n:
        raise GroundMismatch(f"function on {f.n} points, algebra on {A.n}")
    if not is_algebra(A):
        raise NotAnAlgebra("paving is not an algebra")
    return _constant_on_blocks(f, atoms(A))


def _constant_on_blocks(f: PointFn, partition: AtomPartition) -> bool:
    for block in partition:
        vals = {f(x) for x in range(f.n) if block >> x & 1}
        if len(vals) > 1:
            return False
    return True


def t3_cell_ok(f: PointFn, cell: int, a: ExtRat) -> bool:
    """One of: oscillation at most ``a``, all values ≥ 1/a, or all values ≤ −1/a."""
    vals = [f(x) for x in range(f.n) if cell >> x & 1]
    close = all(x <= a + y for x in vals for y in vals)
    return close or all(v >= 1 / a for v in vals) or all(v <= -1 / a for v in vals)


def t3_partition(f: PointFn, A: Paving, a: object) -> list[int]:
    """A partition of ``X`` into members of ``A`` meeting one clause per cell.

    For a measurable ``f`` the atoms do: ``f`` is constant on each of them.
    """
    a = ext(a)
    if not is_finite(a) or a <= 0:
        raise ValueError("a must be a positive rational")
    if not is_measurable_algebra(f, A):
        raise NotMeasurable("f is not constant on the atoms of the algebra")
    cells = list(atoms(A).blocks)
    assert all(t3_cell_ok(f, c, a) for c in cells)
    return cells
