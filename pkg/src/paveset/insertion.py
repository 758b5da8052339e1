"""Insertion of a doubly measurable function between ``k ≤ u``.

``A ≪ B`` (relative to a pair of pavings ``𝒦``, ``𝒰``) means some ``K ∈ 𝒦``
and ``U ∈ 𝒰`` satisfy ``A ⊆ K ⊆ U ⊆ B``.  Property (N) asks every ``K ⊆ U``
to admit ``K ⊆ U′ ⊆ K′ ⊆ U``.  Under (N) a decreasing dyadic family
``{F_t}`` with ``F_r ≪ F_t`` for ``t < r`` is grown one midpoint at a time;
``f(x) = sup{t : x ∈ F_t}`` is then measurable for both pavings.

Exact finite construction
-------------------------
Values are first pushed into ``[0, 1]`` by a strictly increasing piecewise
linear map ``ψ`` that sends the ``m`` distinct positive finite values of
``k`` and ``u`` to the grid points ``j / 2^p`` with ``2^p > m`` and ``inf``
to ``1``.  Write ``k′ = ψ∘k`` and ``u′ = ψ∘u``.  A candidate ``F`` at a
midpoint ``t`` between assigned neighbours ``F_lo ⊇ F_hi`` (at ``lo < t < hi``)
must satisfy

    F ≪ F_lo,   F_hi ≪ F,   F ≪ {u′ ≥ t},   {k′ > t} ≪ F.

The last two give ``k′ ≤ f′ ≤ u′`` in the limit.  A valid candidate exists:
with ``A = F_hi ∪ {k′ > t}`` and ``B = F_lo ∩ {u′ ≥ t}`` the invariants of
the neighbours combine, through ∪-stability of ``𝒦`` and ∩-stability of
``𝒰``, into ``A ≪ B``; property (N) then interpolates ``A ⊆ K ⊆ U′ ⊆ K′ ⊆ U ⊆ B``
and ``U′`` qualifies.

Candidates are tried in the order: the smaller neighbour ``F_hi``, the bigger
neighbour ``F_lo``, then every ``A ⊆ S ⊆ B`` by (cardinality, mask).  Once the
grid depth ``p`` is reached, ``{k′ > t}`` and ``{u′ ≥ t}`` are constant on each
open grid interval, so the choice between two given neighbours no longer
depends on ``t``.  Choosing a neighbour therefore repeats at every deeper
midpoint of that interval: the whole open interval carries that set.  Any
other choice lies strictly between the neighbours, so an interval splits at
most ``|F_lo ∖ F_hi|`` more times.  The infinite family is thus described
exactly by finitely many breakpoints plus one fill set per gap, and the
supremum defining ``f′`` is read off from it without truncation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .core import ZERO, PointFn, full, indicator, is_subset, popcount, submasks
from .errors import NonConvergent, PreconditionFailed
from .extrat import INF, ExtRat, is_finite
from .measurable import is_measurable
from .paving import Paving, close_under, is_stable
from .sampling import random_measurable, rng_for
from .suites import SuiteReport

log = logging.getLogger(__name__)

Witness = tuple[int, int]


@dataclass(frozen=True)
class PavingPair:
    """Two pavings on the same ground set, both stable for finite ∩ and ∪."""

    K: Paving
    U: Paving

    def __post_init__(self) -> None:
        if self.K.n != self.U.n:
            raise PreconditionFailed("pavings live on different ground sets", which="ground")
        for name, E in (("K", self.K), ("U", self.U)):
            for op in ("cap", "cup"):
                stable, pair = is_stable(E, op)
                if not stable:
                    raise PreconditionFailed(f"{name} is not {op}-stable", which=f"{name}-{op}", pair=pair)

    @property
    def n(self) -> int:
        return self.K.n


def rel_ll(A: int, B: int, P: PavingPair) -> Witness | None:
    """A pair ``(K, U) ∈ 𝒦 × 𝒰`` with ``A ⊆ K ⊆ U ⊆ B``, or ``None``.

    Both pavings are lattices, so the smallest ``K ∈ 𝒦`` above ``A`` and the
    largest ``U ∈ 𝒰`` below ``B`` decide the question; the search simply
    returns the first pair in canonical order.
    """
    if not is_subset(A, B):
        return None
    for K in P.K:
        if is_subset(A, K) and is_subset(K, B):
            for U in P.U:
                if is_subset(K, U) and is_subset(U, B):
                    return K, U
    return None


def interpolant(K: int, U: int, P: PavingPair) -> Witness | None:
    """``(U′, K′) ∈ 𝒰 × 𝒦`` with ``K ⊆ U′ ⊆ K′ ⊆ U``, or ``None``."""
    for Up in P.U:
        if is_subset(K, Up) and is_subset(Up, U):
            for Kp in P.K:
                if is_subset(Up, Kp) and is_subset(Kp, U):
                    return Up, Kp
    return None


def has_property_N(P: PavingPair) -> tuple[bool, Witness | None]:
    """Check every ``K ⊆ U`` pair; return the first one without an interpolant."""
    for K in P.K:
        for U in P.U:
            if is_subset(K, U) and interpolant(K, U, P) is None:
                return False, (K, U)
    return True, None


def topology_pair(n: int, opens) -> PavingPair:
    """Closed sets and open sets of the topology generated by ``opens``."""
    X = full(n)
    base = Paving(n, (0, X, *opens))
    open_sets = close_under(base, ("cap", "cup"))
    closed = Paving(n, tuple(X & ~s for s in open_sets))
    return PavingPair(closed, open_sets)


# -- normalisation ------------------------------------------------------------


@dataclass(frozen=True)
class Normalizer:
    """Strictly increasing ``ψ: [0, inf] → [0, 1]`` pinned on finitely many values.

    ``values[j-1] ↦ j / 2^p``; linear in between, linear from 0 to the first
    value, and ``s ↦ w_m + (s − s_m)/(1 − s)`` above the last grid point so
    that ``1`` corresponds to ``inf``.
    """

    values: tuple[Fraction, ...]
    p: int

    @classmethod
    def for_values(cls, values) -> Normalizer:
        finite = sorted({v for v in values if is_finite(v) and v > 0})
        p = 0
        while 1 << p <= len(finite):
            p += 1
        return cls(tuple(finite), p)

    def _grid(self, j: int) -> Fraction:
        return Fraction(j, 1 << self.p)

    def forward(self, v: ExtRat) -> Fraction:
        if not is_finite(v):
            return Fraction(1)
        if v == 0:
            return ZERO
        try:
            return self._grid(self.values.index(v) + 1)
        except ValueError:
            raise ValueError(f"{v} is not a pinned value") from None

    def inverse(self, s: Fraction) -> ExtRat:
        if s >= 1:
            return INF
        if s <= 0:
            return ZERO
        pts = [(ZERO, ZERO)] + [(self._grid(j + 1), w) for j, w in enumerate(self.values)]
        for (s0, w0), (s1, w1) in zip(pts, pts[1:]):
            if s <= s1:
                return w0 + (w1 - w0) * (s - s0) / (s1 - s0)
        s_m, w_m = pts[-1]
        return w_m + (s - s_m) / (1 - s)


# -- the dyadic family --------------------------------------------------------


@dataclass
class DyadicFamily:
    """Exact description of an infinite decreasing family ``{F_t}``, ``t`` dyadic in ``[0, 1]``.

    ``points`` lists the explicitly constructed ``(t, F_t)`` in increasing
    ``t``; ``fills[i]`` is the set carried by every dyadic strictly between
    ``points[i]`` and ``points[i+1]``.  ``witnesses[i]`` certifies
    ``F_{t_{i+1}} ≪ fill ≪ F_{t_i}`` with two ``(K, U)`` pairs.
    """

    n: int
    points: list[tuple[Fraction, int]] = field(default_factory=list)
    fills: list[int] = field(default_factory=list)
    witnesses: list[tuple[Witness, Witness]] = field(default_factory=list)
    depth: int = 0

    def at(self, t: object) -> int:
        t = Fraction(t)
        if not 0 <= t <= 1 or t.denominator & (t.denominator - 1):
            raise ValueError(f"{t} is not a dyadic number in [0, 1]")
        for i, (s, F) in enumerate(self.points):
            if t == s:
                return F
            if t < s:
                return self.fills[i - 1]
        raise AssertionError("family does not cover [0, 1]")

    def read_off(self, depth: int) -> tuple[Fraction, ...]:
        """``f_d(x) = max{t = i/2^d : x ∈ F_t}``."""
        out = [ZERO] * self.n
        for i in range(1 << depth, -1, -1):
            t = Fraction(i, 1 << depth)
            F = self.at(t)
            for x in range(self.n):
                if F >> x & 1 and out[x] == 0 and t > 0:
                    out[x] = t
        return tuple(out)

    def limit(self) -> tuple[Fraction, ...]:
        """``f(x) = sup{t : x ∈ F_t}``: attained at a breakpoint or approached across a gap."""
        out = [ZERO] * self.n
        for i, (t, F) in enumerate(self.points):
            for x in range(self.n):
                if F >> x & 1:
                    out[x] = max(out[x], t)
            if i + 1 < len(self.points):
                right = self.points[i + 1][0]
                for x in range(self.n):
                    if self.fills[i] >> x & 1:
                        out[x] = max(out[x], right)
        return tuple(out)

    def validate(self, P: PavingPair) -> bool:
        """Re-check endpoint sets and every stored ``≪`` witness."""
        if self.points[0] != (ZERO, full(self.n)) or self.points[-1] != (Fraction(1), 0):
            return False
        for i, ((Kh, Uh), (Kl, Ul)) in enumerate(self.witnesses):
            lo, hi, G = self.points[i][1], self.points[i + 1][1], self.fills[i]
            if not (Kh in P.K and Uh in P.U and Kl in P.K and Ul in P.U):
                return False
            if not (is_subset(hi, Kh) and is_subset(Kh, Uh) and is_subset(Uh, G)):
                return False
            if not (is_subset(G, Kl) and is_subset(Kl, Ul) and is_subset(Ul, lo)):
                return False
        return True


class _Builder:
    def __init__(self, kn: tuple[Fraction, ...], un: tuple[Fraction, ...], P: PavingPair, p: int, max_depth: int):
        self.kn, self.un, self.P, self.p, self.max_depth = kn, un, P, p, max_depth
        self.n = P.n
        self.family = DyadicFamily(self.n)

    def _k_above(self, t: Fraction) -> int:
        return sum(1 << x for x, v in enumerate(self.kn) if v > t)

    def _u_at_least(self, t: Fraction) -> int:
        return sum(1 << x for x, v in enumerate(self.un) if v >= t)

    def _valid(self, S: int, lo_set: int, hi_set: int, t: Fraction) -> bool:
        P = self.P
        return (
            rel_ll(S, lo_set, P) is not None
            and rel_ll(hi_set, S, P) is not None
            and rel_ll(S, self._u_at_least(t), P) is not None
            and rel_ll(self._k_above(t), S, P) is not None
        )

    def choose(self, lo_set: int, hi_set: int, t: Fraction) -> int:
        for S in (hi_set, lo_set):
            if self._valid(S, lo_set, hi_set, t):
                return S
        A = hi_set | self._k_above(t)
        B = lo_set & self._u_at_least(t)
        if is_subset(A, B):
            free = B & ~A
            for extra in sorted(submasks(free), key=lambda m: (popcount(m), m)):
                S = A | extra
                if self._valid(S, lo_set, hi_set, t):
                    return S
        raise NonConvergent(
            "no admissible set between neighbours", t=str(t), lo=lo_set, hi=hi_set
        )

    def build(self) -> DyadicFamily:
        one = Fraction(1)
        self._segment(ZERO, one, full(self.n), 0, 0)
        fam = self.family
        fam.points.append((one, 0))
        return fam

    def _segment(self, lo: Fraction, hi: Fraction, lo_set: int, hi_set: int, depth: int) -> None:
        """Emit ``(lo, lo_set)`` and the description of ``[lo, hi)``."""
        fam = self.family
        fam.depth = max(fam.depth, depth)
        t = (lo + hi) / 2
        S = self.choose(lo_set, hi_set, t)
        if depth >= self.p and S in (lo_set, hi_set):
            self._fill(lo, lo_set, hi_set, S)
            return
        if depth + 1 > self.max_depth:
            raise NonConvergent("dyadic recursion exceeded max_depth", max_depth=self.max_depth)
        self._segment(lo, t, lo_set, S, depth + 1)
        self._segment(t, hi, S, hi_set, depth + 1)

    def _fill(self, lo: Fraction, lo_set: int, hi_set: int, G: int) -> None:
        fam = self.family
        fam.points.append((lo, lo_set))
        fam.fills.append(G)
        upper = rel_ll(hi_set, G, self.P)
        lower = rel_ll(G, lo_set, self.P)
        if upper is None or lower is None:
            raise NonConvergent("fill set breaks the ≪ chain", lo=lo_set, hi=hi_set)
        fam.witnesses.append((upper, lower))


def _check_preconditions(k: PointFn, u: PointFn, P: PavingPair, check_n: bool) -> None:
    if k.n != P.n or u.n != P.n:
        raise PreconditionFailed("functions and pavings use different ground sets", which="ground")
    if k.signed or u.signed or not (k.is_nonnegative() and u.is_nonnegative()):
        raise PreconditionFailed("k and u must be nonnegative", which="nonnegative")
    if not k <= u:
        raise PreconditionFailed("k ≤ u fails", which="k<=u")
    if not is_measurable(k, P.K):
        raise PreconditionFailed("some {k ≥ t} is not in K", which="k-levels")
    if not is_measurable(u, P.U):
        raise PreconditionFailed("some {u > t} is not in U", which="u-levels")
    if check_n:
        ok, pair = has_property_N(P)
        if not ok:
            raise PreconditionFailed("property (N) fails", which="property-N", pair=pair)


def insert_family(
    k: PointFn, u: PointFn, P: PavingPair, max_depth: int | None = None
) -> tuple[DyadicFamily, Normalizer]:
    """Build the normalised dyadic family for ``k ≤ u`` (preconditions checked)."""
    _check_preconditions(k, u, P, check_n=True)
    norm = Normalizer.for_values(tuple(k.values) + tuple(u.values))
    kn = tuple(norm.forward(v) for v in k.values)
    un = tuple(norm.forward(v) for v in u.values)
    depth = P.n + 8 if max_depth is None else max_depth
    family = _Builder(kn, un, P, norm.p, depth).build()
    log.debug("dyadic family: %d breakpoints, depth %d", len(family.points), family.depth)
    return family, norm


def insert(k: PointFn, u: PointFn, P: PavingPair, max_depth: int | None = None) -> PointFn:
    """A function measurable for both pavings with ``k ≤ f ≤ u``.

    The result is re-verified with the measurability checker before it is
    returned; a failed verification is reported as :class:`NonConvergent`.
    """
    family, norm = insert_family(k, u, P, max_depth)
    f = PointFn(tuple(norm.inverse(s) for s in family.limit()))
    if not (k <= f <= u):
        raise NonConvergent("limit escaped the bounds k ≤ f ≤ u")
    if not (is_measurable(f, P.K) and is_measurable(f, P.U)):
        raise NonConvergent("limit failed the measurability re-check")
    return f


def urysohn(K0: int, U0: int, P: PavingPair, max_depth: int | None = None) -> PointFn:
    """Insert between ``φ_{K0}`` and ``φ_{U0}`` for ``K0 ∈ 𝒦``, ``U0 ∈ 𝒰``, ``K0 ⊆ U0``."""
    if K0 not in P.K or U0 not in P.U:
        raise PreconditionFailed("K0 must lie in K and U0 in U", which="membership")
    if not is_subset(K0, U0):
        raise PreconditionFailed("K0 ⊆ U0 fails", which="K0<=U0")
    return insert(indicator(K0, P.n), indicator(U0, P.n), P, max_depth)


# -- verification -------------------------------------------------------------

GRID = tuple(Fraction(j, 4) for j in range(5))


def grid_insertions(K0: int, U0: int, P: PavingPair) -> list[PointFn]:
    """Every ``f`` with values in ``{0, 1/4, 1/2, 3/4, 1}``, ``φ_{K0} ≤ f ≤ φ_{U0}``, measurable both ways.

    If such an ``f`` exists for any values at all, its sandwich sets at the
    level pairs ``(1, 1/2)`` and ``(1/2, 1/4)`` interpolate ``K0 ⊆ U0``, so an
    empty list on a property (N) counterexample certifies that no insertion
    exists at all.
    """
    n = P.n
    lower, upper = indicator(K0, n), indicator(U0, n)
    out = []
    for combo in product(GRID, repeat=n):
        f = PointFn(combo)
        if lower <= f <= upper and is_measurable(f, P.K) and is_measurable(f, P.U):
            out.append(f)
    return out


def random_admissible(rng, P: PavingPair, max_levels: int = 3) -> tuple[PointFn, PointFn]:
    """A random ``u`` measurable for ``𝒰`` and ``k ≤ u`` measurable for ``𝒦``."""
    u = random_measurable(rng, P.U, max_levels)
    values = [ZERO] * P.n
    level: ExtRat = ZERO
    current = full(P.n)
    for _ in range(rng.randint(0, max_levels)):
        level = level + Fraction(rng.randint(1, 4), rng.choice((1, 2)))
        room = current & u.at_least(level)
        options = [K for K in P.K if K and is_subset(K, room)]
        if not options:
            break
        current = rng.choice(options)
        for x in range(P.n):
            if current >> x & 1:
                values[x] = level
    return PointFn(tuple(values)), u


def verify_theorem45(P: PavingPair, sample_count: int = 20, seed: int | None = None) -> SuiteReport:
    """Property (N) against insertability (Urysohn pairs and general ``k ≤ u``)."""
    rng = rng_for(seed)
    report = SuiteReport("theorem45", seed)
    has_n, counter = has_property_N(P)
    report.details["property_N"] = has_n
    if not has_n:
        K, U = counter
        report.details["counterexample"] = counter
        report.record("grid certificate: no insertion exists", not grid_insertions(K, U, P))
        return report

    pairs_ok = True
    for K0 in P.K:
        for U0 in P.U:
            if is_subset(K0, U0):
                f = urysohn(K0, U0, P)
                pairs_ok = pairs_ok and indicator(K0, P.n) <= f <= indicator(U0, P.n)
    report.record("every indicator pair insertable", pairs_ok)

    general_ok = True
    for _ in range(sample_count):
        k, u = random_admissible(rng, P)
        f = insert(k, u, P)
        general_ok = general_ok and k <= f <= u
    report.record("sampled k ≤ u insertable", general_ok)
    report.details["sampled"] = sample_count
    return report
