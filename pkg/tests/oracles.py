"""Independent reference computations used to freeze expected values.

Nothing here calls into the level-set shortcuts of the package: integrals are
Riemann sums of ``t ↦ α{f > t}``, measurability is the sandwich definition
checked over a grid of pairs, and {0,1} capacities are enumerated by brute
force or by the classical split recursion for monotone Boolean functions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product


def _mask(pred, n):
    return sum(1 << x for x in range(n) if pred(x))


def _is_inf(v):
    return str(v) == "inf"


def riemann_choquet(values, table):
    """``∫_0^∞ α{f > t} dt`` for a step function, evaluated on the refined grid.

    ``values`` is a list of nonnegative Fractions or the package's ``INF``;
    ``table`` maps a bitmask to the capacity value.  The integrand is constant
    on each open interval between consecutive breakpoints, so sampling at the
    midpoint and multiplying by the width is exact.
    """
    n = len(values)
    finite = sorted({v for v in values if not _is_inf(v)} | {Fraction(0)})
    total = Fraction(0)
    for lo, hi in zip(finite, finite[1:]):
        mid = (lo + hi) / 2
        level = _mask(lambda x: _is_inf(values[x]) or values[x] > mid, n)
        if _is_inf(table[level]):
            return "inf"
        total += (hi - lo) * Fraction(table[level])
    top = finite[-1] + 1
    tail = table[_mask(lambda x: _is_inf(values[x]) or values[x] > top, n)]
    if tail != 0:
        return "inf"
    return total


def zero_one_integral(values, family):
    """``sup{t ≥ 0 : {f > t} ∈ family}`` over the breakpoints (sup ∅ = 0)."""
    n = len(values)
    best = Fraction(0)
    finite = sorted({v for v in values if not _is_inf(v)} | {Fraction(0)})
    for t in finite:
        if _mask(lambda x: _is_inf(values[x]) or values[x] > t, n) in family:
            # {f > s} is constant for s in [t, next value), so the sup reaches
            # the next value (or infinity past the largest finite one)
            bigger = [v for v in finite if v > t]
            if not bigger:
                return "inf"
            best = max(best, bigger[0])
    return best


def sandwich_measurable(values, paving, n):
    """Definition check: for all grid pairs ``a > b > 0`` some ``H`` fits between.

    The grid consists of the finite values, their midpoints and one point
    above the largest, which hits every combinatorial type of pair.
    """
    finite = sorted({v for v in values if not _is_inf(v)} | {Fraction(0)})
    pts = set(finite)
    pts |= {(a + b) / 2 for a, b in zip(finite, finite[1:])}
    pts |= {(a + 3 * b) / 4 for a, b in zip(finite, finite[1:])}
    pts |= {finite[-1] + 1, finite[-1] + 2}
    grid = sorted(p for p in pts if p > 0)
    for a in grid:
        for b in grid:
            if not a > b:
                continue
            lower = _mask(lambda x: _is_inf(values[x]) or values[x] >= a, n)
            upper = _mask(lambda x: _is_inf(values[x]) or values[x] > b, n)
            if not any(lower & ~h == 0 and h & ~upper == 0 for h in paving):
                return False
    return True


def brute_force_upsets(n):
    """All upward-closed families without ∅, by testing every family (n ≤ 4)."""
    size = 1 << n
    out = []
    for code in range(1 << size):
        if code & 1:
            continue
        ok = True
        for a in range(size):
            if code >> a & 1:
                for i in range(n):
                    if not code >> (a | 1 << i) & 1:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(code)
    return out


@lru_cache(maxsize=None)
def monotone_functions(n):
    """Truth tables of monotone Boolean functions on ``n`` variables.

    ``f(x_1..x_n) = x_n ? f1 : f0`` is monotone iff ``f0 ≤ f1`` and both are;
    the table of ``f`` is ``f0`` in the low half and ``f1`` in the high half.
    """
    if n == 0:
        return (0, 1)
    half = 1 << (n - 1)
    lower = monotone_functions(n - 1)
    return tuple(
        f0 | (f1 << half) for f0, f1 in product(lower, repeat=2) if f0 & ~f1 == 0
    )


def count_upsets_recursive(n):
    """Upward-closed families without ∅ = monotone functions minus the constant 1."""
    return len(monotone_functions(n)) - 1


def level_sets(values):
    """``{f ≥ v}`` for every positive value ``v`` (``inf`` included)."""
    n = len(values)
    pos = {v for v in values if _is_inf(v) or v > 0}
    return {_mask(lambda x, v=v: values[x] >= v, n) for v in pos}
