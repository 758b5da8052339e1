"""Measurability on ℕ for the three symbolic pavings.

Level sets of a :class:`~paveset.core.NatFn` are computed exactly: the tail
formula fixes the eventual truth of ``f(n) ≥ t`` (or ``> t``) and an explicit
index bound past which nothing changes, so the finitely many exceptions can
be listed.  The only level sets that are neither finite nor cofinite are the
parity sets of a two-point tail; those come back as ``None``.

Criteria (``a > b > 0`` throughout, ``H`` the sandwich set):

* finite sets -- ``H`` finite forces ``{f ≥ a}`` finite for every ``a > 0``,
  and ``H = {f ≥ a}`` then works.  Measurable iff ``limsup f = 0``.
* cofinite sets plus ∅ -- a sandwich exists iff ``{f ≥ a} = ∅`` or
  ``{f > b}`` is cofinite.  Some ``a > b`` has ``{f ≥ a} ≠ ∅`` exactly when
  ``b < sup f``, so measurability means ``{f > b}`` is cofinite for every
  ``b ∈ (0, sup f)``, i.e. ``sup f ≤ liminf f``.  A harmonic tail from above
  always fails (its supremum sits strictly above its limit); linear growth
  always passes.
* finite or cofinite sets -- a sandwich exists iff ``{f ≥ a}`` is finite or
  ``{f > b}`` is cofinite, which holds for all pairs iff ``lim f`` exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import floor

from .core import (
    Constant,
    HarmonicAbove,
    HarmonicBelow,
    LinearGrowth,
    NatFn,
    TwoPoint,
    nat_eval,
    nat_liminf,
    nat_limit,
    nat_limsup,
    nat_sup,
)
from .extrat import ExtRat, ext, is_finite
from .paving import NatPavingKind, NatSet


def _tail_profile(f: NatFn, level: ExtRat, strict: bool) -> tuple[bool, int] | None:
    """``(eventual truth, bound)`` of ``f(n) ≥ level`` (``>`` if strict) on the tail.

    For every ``n ≥ bound`` the predicate equals the eventual truth.  ``None``
    for a two-point tail split by the level.
    """
    t, N = f.tail, f.start

    def holds(v: ExtRat) -> bool:
        return v > level if strict else v >= level

    if isinstance(t, Constant):
        return holds(t.c), N
    if isinstance(t, TwoPoint):
        lo, hi = holds(t.lo), holds(t.hi)
        return (lo, N) if lo == hi else None
    if isinstance(t, HarmonicAbove):
        if not is_finite(t.L) or t.L >= level:
            return True, N  # every value exceeds L ≥ level
        return False, max(N, floor(t.c / (level - t.L)) + 1)
    if isinstance(t, HarmonicBelow):
        if not is_finite(t.L):
            return True, N
        if t.L <= level:
            return False, N  # every value stays below L (or is 0)
        return True, max(N, floor(t.c / (t.L - level)) + 1)
    if isinstance(t, LinearGrowth):
        return True, max(N, floor(level / t.c) + 1)
    raise TypeError(f"unknown tail {t!r}")


def nat_level_set(f: NatFn, level: object, strict: bool = False) -> NatSet | None:
    """``{f ≥ level}`` (``{f > level}`` if strict) for a finite ``level > 0``."""
    level = ext(level)
    if not is_finite(level) or level <= 0:
        raise ValueError("levels must be finite and positive")
    profile = _tail_profile(f, level, strict)
    if profile is None:
        return None
    eventual, bound = profile

    def holds(v: ExtRat) -> bool:
        return v > level if strict else v >= level

    flipped = [n for n in range(bound) if holds(nat_eval(f, n)) != eventual]
    if eventual:
        return NatSet.cofinite_excluding(flipped)
    return NatSet.finite(flipped)


def nat_is_measurable(f: NatFn, kind: NatPavingKind) -> bool:
    """Closed-form measurability criterion per paving kind (see module notes)."""
    if f.signed:
        raise ValueError("nonnegative functions only")
    if kind is NatPavingKind.FINITE_OR_COFINITE:
        return nat_limit(f) is not None
    if kind is NatPavingKind.FINITE_SETS:
        return nat_limsup(f) == 0
    sup, _ = nat_sup(f)
    return sup <= nat_liminf(f)


def nat_sandwich(f: NatFn, kind: NatPavingKind, a: object, b: object) -> NatSet | None:
    """A member ``H`` of the paving with ``{f ≥ a} ⊆ H ⊆ {f > b}``, or ``None``."""
    a, b = ext(a), ext(b)
    if not a > b > 0:
        raise ValueError("need a > b > 0")
    lower = nat_level_set(f, a)
    upper = nat_level_set(f, b, strict=True)
    lower_finite = lower is not None and not lower.cofinite
    upper_cofinite = upper is not None and upper.cofinite
    if kind is NatPavingKind.FINITE_SETS:
        return lower if lower_finite else None
    if kind is NatPavingKind.COFINITE_PLUS_EMPTY:
        if lower is not None and lower.is_empty():
            return lower
        return upper if upper_cofinite else None
    if lower_finite:
        return lower
    return upper if upper_cofinite else None


@dataclass(frozen=True)
class UltrafilterLimits:
    """Limits of ``f`` along the ultrafilters of the finite/cofinite algebra.

    ``principal`` lists ``f(n)`` for the explicit prefix (further point
    ultrafilters give the tail values); ``frechet`` is the limit along the
    single free ultrafilter, ``None`` when it does not exist.
    """

    principal: tuple[ExtRat, ...]
    frechet: ExtRat | None

    def at(self, f: NatFn, n: int) -> ExtRat:
        return nat_eval(f, n)


def nat_ultrafilter_limits(f: NatFn) -> UltrafilterLimits:
    return UltrafilterLimits(tuple(f.prefix), nat_limit(f))


def nat_is_bounded(f: NatFn) -> bool:
    return is_finite(nat_sup(f)[0])


def nat_attains_max(f: NatFn) -> bool:
    return nat_sup(f)[1]


def nat_is_real_valued(f: NatFn) -> bool:
    """No value equals ``inf`` (linear growth is unbounded but finite everywhere)."""
    if any(not is_finite(v) for v in f.prefix):
        return False
    t = f.tail
    if isinstance(t, Constant):
        return is_finite(t.c)
    if isinstance(t, (HarmonicAbove, HarmonicBelow)):
        return is_finite(t.L)
    if isinstance(t, TwoPoint):
        return is_finite(t.hi) and is_finite(t.lo)
    return True
