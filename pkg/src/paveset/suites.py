"""Seeded verification suites that cross-check theorems on finite and ℕ models.

Each suite returns a :class:`SuiteReport`: a named set of Boolean checks plus
free-form details.  Exhaustive tiers stay small; random tiers are seeded and
the seed is recorded in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .capacity import (
    NatFilterCapacity,
    NatFilterKind,
    PartialCapacity,
    SetFunction,
    caratheodory_algebra,
    caratheodory_restriction,
    inner_extension,
    is_modular,
)
from .core import (
    ZERO,
    Constant,
    HarmonicAbove,
    HarmonicBelow,
    LinearGrowth,
    NatFn,
    PointFn,
    TwoPoint,
    indicator,
    nat_eval,
    nat_sup,
    pointwise,
)
from .extrat import INF, ExtRat
from .integral import choquet, nat_filter_integral
from .measurable import is_measurable
from .nat import nat_is_bounded, nat_attains_max, nat_is_measurable, nat_is_real_valued
from .paving import (
    NatPavingKind,
    Paving,
    close_under,
    is_algebra,
    is_lattice,
    is_stable,
    nat_member,
    nat_semicompact,
)
from .sampling import all_functions, random_measurable, rng_for

EXHAUSTIVE_VALUES = (ZERO, Fraction(1), Fraction(2))


@dataclass
class SuiteReport:
    name: str
    seed: int | None
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, key: str, value: bool) -> None:
        self.checks[key] = bool(value)


def _measurable_functions(E: Paving, values=EXHAUSTIVE_VALUES) -> list[PointFn]:
    return [f for f in all_functions(E.n, values) if is_measurable(f, E)]


def _closed(E: Paving, fns: list[PointFn], op: str) -> bool:
    return all(is_measurable(pointwise(f, g, op), E) for f in fns for g in fns)


# -- closure under lattice operations and sums -------------------------------


def verify_prop2(E: Paving, sample_count: int = 50, seed: int | None = None) -> SuiteReport:
    """Closure of ``ℳ⁺(X, E)`` under min, max and + against stability of ``E``.

    Exhaustive over functions with values in ``{0, 1, 2}`` plus seeded random
    measurable functions with rational and infinite values.
    """
    rng = rng_for(seed)
    report = SuiteReport("prop2", seed)
    fns = _measurable_functions(E)
    fns += [random_measurable(rng, E) for _ in range(sample_count)]
    cap_stable, cap_pair = is_stable(E, "cap")
    cup_stable, cup_pair = is_stable(E, "cup")

    closed_min = _closed(E, fns, "min")
    closed_max = _closed(E, fns, "max")
    closed_add = _closed(E, fns, "add")
    report.record("min-closed iff cap-stable", closed_min == cap_stable)
    report.record("max-closed iff cup-stable", closed_max == cup_stable)
    report.record("sum-closed iff lattice", closed_add == (cap_stable and cup_stable))

    # The reverse directions are witnessed by indicators of a bad pair.
    if cap_pair is not None:
        a, b = cap_pair
        report.record(
            "indicator min witness",
            not is_measurable(pointwise(indicator(a, E.n), indicator(b, E.n), "min"), E),
        )
    if cup_pair is not None:
        a, b = cup_pair
        report.record(
            "indicator max witness",
            not is_measurable(pointwise(indicator(a, E.n), indicator(b, E.n), "max"), E),
        )

    # Level-set characterisation on every function, measurable or not.
    grid = sorted({Fraction(k, 2) for k in range(1, 6)})
    agrees = True
    for f in all_functions(E.n, EXHAUSTIVE_VALUES + (INF,)):
        by_levels = all(f.at_least(t) in E for t in grid + [INF])
        by_strict = all(f.above(t) in E for t in grid)
        if bool(is_measurable(f, E)) != by_levels or by_levels != by_strict:
            agrees = False
            break
    report.record("measurable iff level sets in E", agrees)

    # Sums of two staircases: level sets are unions of intersections of
    # level sets of the summands, so they live in the lattice closure.
    lattice = close_under(E, ("cap", "cup"))
    sums_ok = True
    for _ in range(sample_count):
        g1 = random_measurable(rng, E, allow_inf=False)
        g2 = random_measurable(rng, E, allow_inf=False)
        total = pointwise(g1, g2, "add")
        for t in [ZERO, *total.positive_values()]:
            level = total.above(t)
            union = 0
            for a in [ZERO, *g1.positive_values()]:
                for b in [ZERO, *g2.positive_values()]:
                    if a + b > t:
                        union |= g1.at_least(a) & g2.at_least(b)
            if level != union or level not in lattice:
                sums_ok = False
        if not is_measurable(total, lattice):
            sums_ok = False
    report.record("staircase sums measurable over lattice closure", sums_ok)
    report.details["functions"] = len(fns)
    return report


# -- modularity versus additivity of the integral ----------------------------


def _integral_relation(lhs: ExtRat, rhs: ExtRat, mode: str) -> bool:
    if mode == "eq":
        return lhs == rhs
    if mode == "le":
        return lhs <= rhs
    return lhs >= rhs


def additivity_violation(
    delta: PartialCapacity, mode: str = "eq", values=EXHAUSTIVE_VALUES
) -> tuple[PointFn, PointFn] | None:
    """First pair of measurable ``f, g`` with ``∫(f+g) ≁ ∫f + ∫g``, or ``None``.

    The relation ``≁`` is ``≠`` for ``eq``; for ``le`` it is ``>`` (subadditivity
    fails) and for ``ge`` it is ``<``.
    """
    alpha = inner_extension(delta)
    fns = _measurable_functions(delta.domain, values)
    integral = {f: choquet(f, alpha) for f in fns}
    for f, g in product(fns, repeat=2):
        lhs = choquet(pointwise(f, g, "add"), alpha)
        if not _integral_relation(lhs, integral[f] + integral[g], mode):
            return f, g
    return None


def split_violation(
    delta: PartialCapacity, mode: str = "eq", values=EXHAUSTIVE_VALUES
) -> tuple[PointFn, PointFn] | None:
    """First pair violating ``∫(f∧g) + ∫(f∨g) ~ ∫f + ∫g``."""
    alpha = inner_extension(delta)
    fns = _measurable_functions(delta.domain, values)
    integral = {f: choquet(f, alpha) for f in fns}
    for f, g in product(fns, repeat=2):
        lhs = choquet(pointwise(f, g, "min"), alpha) + choquet(pointwise(f, g, "max"), alpha)
        if not _integral_relation(lhs, integral[f] + integral[g], mode):
            return f, g
    return None


def verify_remark1(delta: PartialCapacity, values=EXHAUSTIVE_VALUES) -> SuiteReport:
    """Modular / sub- / supermodular ``δ`` against the same property of ``∫ · dδ``.

    A failing pair ``A, B`` of the set function gives the violation
    ``φ_A + φ_B`` directly, so each mode is also checked for that witness.
    """
    report = SuiteReport("remark1", None)
    E = delta.domain
    report.record("domain is a lattice", is_lattice(E))
    alpha = inner_extension(delta)
    for mode in ("eq", "le", "ge"):
        modular, pair = is_modular(delta, mode)
        additive = additivity_violation(delta, mode, values) is None
        splitting = split_violation(delta, mode, values) is None
        report.record(f"{mode}: modular iff additive", modular == additive)
        report.record(f"{mode}: modular iff min/max split", modular == splitting)
        report.details[mode] = {"modular": modular, "pair": pair}
        if pair is not None:
            a, b = pair
            fa, fb = indicator(a, E.n), indicator(b, E.n)
            lhs = choquet(pointwise(fa, fb, "add"), alpha)
            report.record(
                f"{mode}: indicator witness",
                not _integral_relation(lhs, alpha[a] + alpha[b], mode),
            )
    return report


def verify_remark5(mu: SetFunction, max_value: int = 2) -> SuiteReport:
    """The Carathéodory algebra of ``μ`` and additivity of the integral on it."""
    report = SuiteReport("remark5", None)
    A = caratheodory_algebra(mu)
    report.record("algebra", is_algebra(A))
    delta = caratheodory_restriction(mu)
    values = tuple(Fraction(k) for k in range(max_value + 1))
    report.record("additive", additivity_violation(delta, "eq", values) is None)
    report.details["algebra_size"] = len(A)
    return report


# -- semi-compactness on ℕ ---------------------------------------------------

_SPOT_DEPTH = 10


def _random_nat_fn(rng) -> NatFn:
    prefix = tuple(Fraction(rng.randint(0, 6), rng.choice((1, 2))) for _ in range(rng.randint(0, 4)))
    c = Fraction(rng.randint(1, 3))
    L = rng.choice((ZERO, ZERO, Fraction(1), Fraction(2)))
    tail = rng.choice(
        (
            Constant(L),
            HarmonicAbove(L, c),
            HarmonicBelow(L, c),
            LinearGrowth(c),
            TwoPoint(ZERO, c),
        )
    )
    return NatFn(prefix, tail)


def verify_theorem2_nat(sample_count: int = 200, seed: int | None = None) -> SuiteReport:
    """Boundedness and maxima over the finite sets; counterexamples over cofinite sets."""
    rng = rng_for(seed)
    report = SuiteReport("theorem2", seed)

    answers = {kind: nat_semicompact(kind) for kind in NatPavingKind}
    report.record(
        "semicompact answers",
        [answers[k][0] for k in NatPavingKind] == [True, False, False],
    )
    for kind, (compact, chain) in answers.items():
        if compact:
            continue
        ok = chain is not None
        for k in range(_SPOT_DEPTH):
            h, nxt = chain(k), chain(k + 1)
            ok = ok and nat_member(h, kind) and not h.is_empty() and nxt.issubset(h) and k not in h
        report.record(f"{kind.value}: decreasing chain with empty intersection", ok)

    # Finite sets: every measurable real-valued function is bounded with a maximum.
    fixed = [NatFn((), HarmonicBelow(ZERO, Fraction(1))), NatFn((Fraction(3),), HarmonicAbove(ZERO, Fraction(1)))]
    samples = fixed + [_random_nat_fn(rng) for _ in range(sample_count)]
    checked = 0
    bounded_ok = True
    for f in samples:
        if nat_is_measurable(f, NatPavingKind.FINITE_SETS) and nat_is_real_valued(f):
            checked += 1
            bounded_ok = bounded_ok and nat_is_bounded(f) and nat_attains_max(f)
    report.record("finite sets: bounded and attains maximum", bounded_ok and checked > 0)
    report.details["finite_sets_measurable_samples"] = checked

    # Cofinite sets plus ∅: an unbounded measurable function.
    kind = NatPavingKind.COFINITE_PLUS_EMPTY
    growth = NatFn((), LinearGrowth(Fraction(1)))
    report.record(
        "cofinite: linear growth measurable and unbounded",
        nat_is_measurable(growth, kind) and not nat_is_bounded(growth),
    )

    # Indicators of the tail chain decrease to 0 without uniform convergence
    # and keep integral 1 against the lower Fréchet capacity.
    frechet = NatFilterCapacity(NatFilterKind.LOWER_FRECHET)
    seq_ok = True
    for n in range(_SPOT_DEPTH + 1):
        phi = NatFn((ZERO,) * (n + 1), Constant(Fraction(1)))
        nxt = NatFn((ZERO,) * (n + 2), Constant(Fraction(1)))
        seq_ok = seq_ok and nat_is_measurable(phi, kind)
        seq_ok = seq_ok and all(nat_eval(nxt, m) <= nat_eval(phi, m) for m in range(n + 4))
        seq_ok = seq_ok and nat_eval(phi, n) == 0
        seq_ok = seq_ok and nat_sup(phi)[0] == 1
        seq_ok = seq_ok and nat_filter_integral(phi, frechet) == 1
    report.record("cofinite: tail indicators keep integral 1", seq_ok)
    return report
