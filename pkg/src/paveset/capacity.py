"""Monotone set functions (capacities) on finite power sets.

A :class:`Capacity` stores one value per subset, indexed by bitmask.  The
{0,1}-valued ones are in bijection with upward-closed families not containing
∅ (:class:`ZeroOneCapacity`); :func:`enumerate_zero_one` lists them all for
small ground sets, which is what the brute-force measurability oracle runs on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from .core import ONE, ORACLE_MAX, ZERO, check_ground, format_subset, full, is_subset, popcount
from .errors import (
    DomainNotLattice,
    EmptySetIncluded,
    GroundMismatch,
    GroundTooLarge,
    NonzeroEmpty,
    NotMonotone,
    NotUpwardClosed,
)
from .extrat import ExtRat, ext, ext_max, ext_min
from .paving import NatSet, Paving, is_algebra, is_lattice


def _monotone_violation(n: int, value: Callable[[int], ExtRat], domain: Iterable[int] | None = None):
    """First pair ``(A, B)``, ``A ⊆ B``, with ``value(A) > value(B)``; ``None`` if monotone."""
    if domain is None:
        for a in range(1 << n):
            va = value(a)
            for i in range(n):
                b = a | (1 << i)
                if b != a and va > value(b):
                    return a, b
        return None
    sets = list(domain)
    for a in sets:
        for b in sets:
            if a != b and is_subset(a, b) and value(a) > value(b):
                return a, b
    return None


@dataclass(frozen=True)
class Capacity:
    """A monotone set function on the power set of ``{0..n-1}`` with ``α(∅) = 0``."""

    n: int
    table: tuple[ExtRat, ...]

    def __post_init__(self) -> None:
        check_ground(self.n)
        table = tuple(ext(v) for v in self.table)
        if len(table) != 1 << self.n:
            raise ValueError(f"capacity table needs {1 << self.n} entries, got {len(table)}")
        object.__setattr__(self, "table", table)
        if table[0] != 0:
            raise NonzeroEmpty(f"α(∅) = {table[0]}, expected 0")
        if any(v < 0 for v in table):
            raise ValueError("capacity values must lie in [0, +inf]")
        bad = _monotone_violation(self.n, table.__getitem__)
        if bad is not None:
            a, b = bad
            raise NotMonotone(
                f"α({format_subset(a)}) = {table[a]} > α({format_subset(b)}) = {table[b]}", pair=bad
            )

    def __getitem__(self, mask: int) -> ExtRat:
        return self.table[mask]

    def __call__(self, mask: int) -> ExtRat:
        return self.table[mask]

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], object]) -> Capacity:
        return cls(n, tuple(ext(fn(a)) for a in range(1 << n)))

    @classmethod
    def additive(cls, weights: Iterable[object]) -> Capacity:
        w = [ext(x) for x in weights]
        n = len(w)
        return cls.from_function(n, lambda a: sum((w[i] for i in range(n) if a >> i & 1), ZERO))

    def restrict(self, E: Paving) -> PartialCapacity:
        _check_ground(self.n, E.n)
        return PartialCapacity(E, {h: self.table[h] for h in E})

    def is_zero_one(self) -> bool:
        return all(v == 0 or v == 1 for v in self.table)

    def dominated_by(self, other: Capacity) -> bool:
        _check_ground(self.n, other.n)
        return all(a <= b for a, b in zip(self.table, other.table))


def make_capacity(table: Mapping[int, object] | Iterable[object], n: int | None = None) -> Capacity:
    """Validated capacity from a full table (sequence indexed by bitmask, or mapping)."""
    if isinstance(table, Mapping):
        if n is None:
            n = max(table).bit_length() if table else 0
        missing = [a for a in range(1 << n) if a not in table]
        if missing:
            raise ValueError(f"capacity table misses {len(missing)} subsets, e.g. {format_subset(missing[0])}")
        values = tuple(table[a] for a in range(1 << n))
    else:
        values = tuple(table)
        if n is None:
            n = len(values).bit_length() - 1
    return Capacity(n, values)


def _check_ground(n: int, m: int) -> None:
    if n != m:
        raise GroundMismatch(f"ground sizes {n} and {m} differ")


# -- {0,1}-valued capacities ----------------------------------------------------------


@dataclass(frozen=True)
class ZeroOneCapacity:
    """An upward-closed family of subsets not containing ∅, read as α(A) = [A ∈ family]."""

    n: int
    family: frozenset[int]

    def __post_init__(self) -> None:
        check_ground(self.n)
        fam = frozenset(int(a) for a in self.family)
        object.__setattr__(self, "family", fam)
        if 0 in fam:
            raise EmptySetIncluded("∅ cannot carry capacity 1")
        X = full(self.n)
        for a in fam:
            if a & ~X:
                raise ValueError("set outside the ground set")
            for i in range(self.n):
                b = a | (1 << i)
                if b not in fam:
                    raise NotUpwardClosed(
                        f"{format_subset(a)} in family but superset {format_subset(b)} missing", pair=(a, b)
                    )

    @property
    def code(self) -> int:
        """The family as a bitmask over subset bitmasks."""
        c = 0
        for a in self.family:
            c |= 1 << a
        return c

    @property
    def capacity(self) -> Capacity:
        return _zero_one_table(self.n, self.family)

    def __contains__(self, mask: object) -> bool:
        return mask in self.family


@lru_cache(maxsize=None)
def _zero_one_table(n: int, family: frozenset[int]) -> Capacity:
    return Capacity(n, tuple(ONE if a in family else ZERO for a in range(1 << n)))


def zero_one_from_family(n: int, family: Iterable[int]) -> ZeroOneCapacity:
    return ZeroOneCapacity(n, frozenset(family))


def family_of(alpha: Capacity) -> ZeroOneCapacity:
    """Inverse of :attr:`ZeroOneCapacity.capacity` for {0,1}-valued capacities."""
    if not alpha.is_zero_one():
        raise ValueError("capacity is not {0,1}-valued")
    return ZeroOneCapacity(alpha.n, frozenset(a for a in range(1 << alpha.n) if alpha[a] == 1))


def enumerate_zero_one(n: int) -> Iterator[ZeroOneCapacity]:
    """Every {0,1}-valued capacity on an ``n``-set, once each, ordered by family code.

    Subsets are decided from the top (X) down by cardinality.  A subset may join
    the family only when each superset with one more element already has, which
    propagates upward closure; leaving a subset out is always consistent.
    """
    for code in _zero_one_codes(n):
        fam = frozenset(a for a in range(1 << n) if code >> a & 1)
        yield ZeroOneCapacity(n, fam)


@lru_cache(maxsize=None)
def _zero_one_codes(n: int) -> tuple[int, ...]:
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if n > ORACLE_MAX:
        raise GroundTooLarge(f"enumeration capped at n = {ORACLE_MAX}", n=n, cap=ORACLE_MAX)
    order = sorted(range(1, 1 << n), key=lambda a: (-popcount(a), a))
    covers = {a: [a | (1 << i) for i in range(n) if not a >> i & 1] for a in order}
    codes: list[int] = []

    def extend(k: int, code: int) -> None:
        if k == len(order):
            codes.append(code)
            return
        a = order[k]
        extend(k + 1, code)
        if all(code >> b & 1 for b in covers[a]):
            extend(k + 1, code | (1 << a))

    extend(0, 0)
    codes.sort()
    return tuple(codes)


def count_zero_one(n: int) -> int:
    return len(_zero_one_codes(n))


# -- capacities on ℕ --------------------------------------------------------------------


class NatFilterKind(enum.Enum):
    LOWER_FRECHET = "lower_frechet"
    UPPER_FRECHET = "upper_frechet"
    PRINCIPAL = "principal"


@dataclass(frozen=True)
class NatFilterCapacity:
    """α_ℱ / β_ℱ for the cofinite (Fréchet) filter, or the point filter at ``point``."""

    kind: NatFilterKind
    point: int | None = None

    def __post_init__(self) -> None:
        if (self.kind is NatFilterKind.PRINCIPAL) != (self.point is not None):
            raise ValueError("a point is required exactly for principal filters")

    def __call__(self, S: NatSet) -> Fraction:
        if self.kind is NatFilterKind.PRINCIPAL:
            return ONE if self.point in S else ZERO
        # lower: S belongs to the cofinite filter; upper: S meets every cofinite set,
        # i.e. S is infinite -- which for finite/cofinite NatSets means cofinite
        return ONE if S.cofinite else ZERO


# -- partial capacities and extensions --------------------------------------------------


@dataclass(frozen=True)
class PartialCapacity:
    """A monotone set function given only on the members of a paving."""

    domain: Paving
    values: Mapping[int, ExtRat] = field(compare=False)

    def __post_init__(self) -> None:
        vals = {int(h): ext(v) for h, v in dict(self.values).items()}
        if set(vals) != set(self.domain.sets):
            raise ValueError("partial capacity must be given exactly on its paving")
        object.__setattr__(self, "values", vals)
        if vals[0] != 0:
            raise NonzeroEmpty(f"δ(∅) = {vals[0]}, expected 0")
        if any(v < 0 for v in vals.values()):
            raise ValueError("partial capacity values must lie in [0, +inf]")
        bad = _monotone_violation(self.domain.n, vals.__getitem__, self.domain.sets)
        if bad is not None:
            a, b = bad
            raise NotMonotone(f"δ({format_subset(a)}) > δ({format_subset(b)})", pair=bad)

    @property
    def n(self) -> int:
        return self.domain.n

    def __getitem__(self, mask: int) -> ExtRat:
        return self.values[mask]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialCapacity):
            return NotImplemented
        return self.domain == other.domain and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.domain, tuple(self.values[h] for h in self.domain)))


def inner_extension(delta: PartialCapacity) -> Capacity:
    """``α_*(A) = sup{δ(H) : H ∈ ℰ, H ⊆ A}``."""
    E = delta.domain
    return Capacity.from_function(
        E.n, lambda a: ext_max(delta[h] for h in E if is_subset(h, a))
    )


def outer_extension(delta: PartialCapacity) -> Capacity:
    """``α^*(A) = inf{δ(H) : H ∈ ℰ, H ⊇ A}``, with ``inf ∅ = +inf``."""
    E = delta.domain
    return Capacity.from_function(
        E.n, lambda a: ext_min(delta[h] for h in E if is_subset(a, h))
    )


def agree_on(alpha: Capacity, beta: Capacity, E: Paving) -> bool:
    _check_ground(alpha.n, beta.n)
    _check_ground(alpha.n, E.n)
    return all(alpha[h] == beta[h] for h in E)


_MODES = {
    "eq": lambda lhs, rhs: lhs == rhs,
    "le": lambda lhs, rhs: lhs <= rhs,
    "ge": lambda lhs, rhs: lhs >= rhs,
}


def is_modular(delta: PartialCapacity, mode: str = "eq") -> tuple[bool, tuple[int, int] | None]:
    """Check ``δ(A∩B) + δ(A∪B)  {=, ≤, ≥}  δ(A) + δ(B)`` on all pairs of the domain.

    ``le`` is submodularity, ``ge`` supermodularity.  The domain has to be a
    lattice for the left-hand side to make sense.
    """
    try:
        holds = _MODES[mode]
    except KeyError:
        raise ValueError(f"mode must be one of {sorted(_MODES)}") from None
    E = delta.domain
    if not is_lattice(E):
        raise DomainNotLattice("modularity needs a domain stable for (∩f, ∪f)")
    sets = E.sets
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if not holds(delta[a & b] + delta[a | b], delta[a] + delta[b]):
                return False, (a, b)
    return True, None


# -- Carathéodory -----------------------------------------------------------------------


@dataclass(frozen=True)
class SetFunction:
    """An arbitrary ``[0, +inf]``-valued set function with ``μ(∅) = 0``; no monotonicity."""

    n: int
    table: tuple[ExtRat, ...]

    def __post_init__(self) -> None:
        check_ground(self.n)
        table = tuple(ext(v) for v in self.table)
        if len(table) != 1 << self.n:
            raise ValueError(f"set function table needs {1 << self.n} entries")
        if table[0] != 0:
            raise NonzeroEmpty(f"μ(∅) = {table[0]}, expected 0")
        if any(v < 0 for v in table):
            raise ValueError("set function values must lie in [0, +inf]")
        object.__setattr__(self, "table", table)

    def __getitem__(self, mask: int) -> ExtRat:
        return self.table[mask]


def splits(mu: SetFunction, a: int) -> bool:
    """Whether ``μ(E) = μ(E∩A) + μ(E∖A)`` for every test set ``E``."""
    return all(mu[e] == mu[e & a] + mu[e & ~a] for e in range(1 << mu.n))


def caratheodory_algebra(mu: SetFunction) -> Paving:
    """The algebra of sets that split every test set additively under ``μ``."""
    A = Paving(mu.n, tuple(a for a in range(1 << mu.n) if splits(mu, a)))
    assert is_algebra(A), "Carathéodory family failed to be an algebra"
    return A


def caratheodory_restriction(mu: SetFunction) -> PartialCapacity:
    """``μ`` restricted to its Carathéodory algebra (monotone there since μ ≥ 0)."""
    A = caratheodory_algebra(mu)
    return PartialCapacity(A, {h: mu[h] for h in A})
