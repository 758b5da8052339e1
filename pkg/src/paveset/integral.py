"""The layer-cake integral ``∫ f dα = ∫_0^∞ α{f > t} dt`` for monotone set functions."""

from __future__ import annotations

from .capacity import Capacity, NatFilterCapacity, NatFilterKind, _check_ground
from .core import ZERO, NatFn, PointFn, Staircase, nat_eval, nat_liminf, nat_limsup
from .errors import GroundMismatch, NegativeValue
from .extrat import INF, ExtRat, is_inf


class _Undefined:
    """Result of ``∫f⁺ − ∫f⁻`` when both parts are infinite."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __str__(self) -> str:
        return "undefined"


UNDEFINED = _Undefined()


def choquet(f: PointFn, alpha: Capacity) -> ExtRat:
    """Integral of a nonnegative function on a finite set.

    With the distinct finite positive values ``0 = v_0 < v_1 < ... < v_m`` the
    map ``t ↦ α{f > t}`` is constant on each ``[v_{k-1}, v_k)``, where
    ``{f > t} = {f ≥ v_k}``; beyond ``v_m`` it equals ``α{f = inf}``.  Hence

        ∫ f dα = Σ_k (v_k − v_{k−1}) α{f ≥ v_k} + inf · α{f = inf}

    and the last product is the only place ``0 · inf = 0`` enters.
    """
    if f.n != alpha.n:
        raise GroundMismatch(f"function on {f.n} points, capacity on {alpha.n}")
    if f.signed and not f.is_nonnegative():
        raise NegativeValue("use choquet_signed for signed functions")
    table = alpha.table
    values = f.values
    total: ExtRat = ZERO
    prev: ExtRat = ZERO
    for v in sorted({v for v in values if v > 0}):
        level = 0
        for i, w in enumerate(values):
            if w >= v:
                level |= 1 << i
        if is_inf(v):
            total = total + INF * table[level]
        else:
            total = total + (v - prev) * table[level]
            prev = v
    return total


def choquet_signed(f: PointFn, alpha: Capacity) -> ExtRat | _Undefined:
    pos = choquet(f.positive_part(), alpha)
    neg = choquet(f.negative_part(), alpha)
    if is_inf(pos) and is_inf(neg):
        return UNDEFINED
    return pos - neg


def choquet_over(A: int, f: PointFn, alpha: Capacity) -> ExtRat:
    """``∫_A f dα = ∫ f·φ_A dα``."""
    restricted = PointFn(tuple(v if A >> i & 1 else ZERO for i, v in enumerate(f.values)))
    return choquet(restricted, alpha)


def staircase_integral(s: Staircase, alpha: Capacity) -> ExtRat:
    """``Σ a_i α(H_i)``, exact for every monotone ``α`` since the ``H_i`` are nested."""
    _check_ground(s.n, alpha.n)
    total: ExtRat = ZERO
    for a, h in s.terms:
        total = total + a * alpha[h]
    return total


def nat_filter_integral(f: NatFn, c: NatFilterCapacity) -> ExtRat:
    """Integral over ℕ against a filter capacity: liminf, limsup or a point value."""
    if f.signed:
        raise NegativeValue("filter integrals take nonnegative functions")
    if c.kind is NatFilterKind.LOWER_FRECHET:
        return nat_liminf(f)
    if c.kind is NatFilterKind.UPPER_FRECHET:
        return nat_limsup(f)
    return nat_eval(f, c.point)
