"""Pavings (families of sets containing ∅), closures, finite algebras and atoms,
plus the three symbolic pavings of ℕ used for the infinite examples.

On a finite ground set there are only finitely many distinct subsets, so
stability under countable unions or intersections is the same thing as
stability under finite ones.  The ``"∩d"``/``"∪d"`` operation names are
accepted as aliases of ``"∩f"``/``"∪f"`` for that reason.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .core import canonical_key, check_ground, format_subset, full, members
from .errors import NotAnAlgebra, NotAPaving

_OP_ALIASES = {
    "cap": "cap", "∩f": "cap", "∩d": "cap", "intersection": "cap",
    "cup": "cup", "∪f": "cup", "∪d": "cup", "union": "cup",
}


def _op(name: str) -> str:
    try:
        return _OP_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown set operation {name!r}") from None


_COMBINE: dict[str, Callable[[int, int], int]] = {
    "cap": lambda a, b: a & b,
    "cup": lambda a, b: a | b,
}


@dataclass(frozen=True)
class Paving:
    """A duplicate-free family of subsets of ``{0..n-1}`` that contains ∅.

    ``sets`` is kept in canonical order (cardinality, then bitmask value).
    """

    n: int
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        check_ground(self.n)
        family = sorted(set(int(s) for s in self.sets), key=canonical_key)
        for s in family:
            if s < 0 or s & ~full(self.n):
                raise ValueError(f"set {s:#b} is not a subset of the ground set")
        if not family or family[0] != 0:
            raise NotAPaving("a paving must contain the empty set")
        object.__setattr__(self, "sets", tuple(family))
        object.__setattr__(self, "_members", frozenset(family))

    @classmethod
    def of(cls, n: int, family: Iterable[Iterable[int]]) -> Paving:
        """Build from element lists, e.g. ``Paving.of(2, [[], [0], [0, 1]])``."""
        from .core import mask_of

        return cls(n, tuple(mask_of(s) for s in family))

    @classmethod
    def power_set(cls, n: int) -> Paving:
        return cls(n, tuple(range(1 << n)))

    @classmethod
    def trivial(cls, n: int) -> Paving:
        return cls(n, (0, full(n)))

    @property
    def full(self) -> int:
        return full(self.n)

    def __contains__(self, mask: object) -> bool:
        return mask in self._members  # type: ignore[attr-defined]

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __le__(self, other: Paving) -> bool:
        return self.n == other.n and self._members <= other._members  # type: ignore[attr-defined]

    def __str__(self) -> str:
        return "{" + ", ".join(format_subset(s) for s in self.sets) + "}"

    def as_lists(self) -> list[list[int]]:
        return [members(s) for s in self.sets]


def is_paving(family: Iterable[int]) -> bool:
    return 0 in set(family)


def is_stable(E: Paving, op: str) -> tuple[bool, tuple[int, int] | None]:
    """Closure of ``E`` under pairwise ``∩`` or ``∪``; returns a witness pair on failure."""
    combine = _COMBINE[_op(op)]
    sets = E.sets
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if combine(a, b) not in E:
                return False, (a, b)
    return True, None


def is_lattice(E: Paving) -> bool:
    return is_stable(E, "cap")[0] and is_stable(E, "cup")[0]


def close_under(E: Paving, ops: Iterable[str]) -> Paving:
    """Smallest family containing ``E`` and closed under the requested operations."""
    combiners = [_COMBINE[_op(o)] for o in set(_op(o) for o in ops)]
    family = set(E.sets)
    frontier = list(family)
    while frontier:
        fresh = []
        snapshot = list(family)
        for a in frontier:
            for b in snapshot:
                for combine in combiners:
                    c = combine(a, b)
                    if c not in family:
                        family.add(c)
                        fresh.append(c)
        frontier = fresh
    return Paving(E.n, tuple(family))


def is_algebra(E: Paving) -> bool:
    X = E.full
    if X not in E:
        return False
    if any((X & ~s) not in E for s in E.sets):
        return False
    return is_stable(E, "cup")[0]


@dataclass(frozen=True)
class AtomPartition:
    """A partition of ``{0..n-1}`` into nonempty blocks, ordered by least element."""

    n: int
    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        seen = 0
        for b in self.blocks:
            if b == 0 or b & seen:
                raise ValueError("blocks must be nonempty and pairwise disjoint")
            seen |= b
        if seen != full(self.n):
            raise ValueError("blocks must cover the ground set")

    def block_of(self, x: int) -> int:
        for b in self.blocks:
            if b >> x & 1:
                return b
        raise IndexError(x)

    def __iter__(self) -> Iterator[int]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


def atoms(A: Paving) -> AtomPartition:
    """Atoms of a finite algebra: classes of points no member of ``A`` separates.

    Ultrafilters of a finite algebra are exactly the principal ones
    ``{H ∈ A : block ⊆ H}``, one per atom.
    """
    if not is_algebra(A):
        raise NotAnAlgebra("atoms are defined for algebras only")
    signature: dict[int, int] = {}
    for x in range(A.n):
        sig = 0
        for j, s in enumerate(A.sets):
            if s >> x & 1:
                sig |= 1 << j
        signature[x] = sig
    classes: dict[int, int] = {}
    for x in range(A.n):
        classes[signature[x]] = classes.get(signature[x], 0) | (1 << x)
    blocks = sorted(classes.values(), key=lambda b: (b & -b))
    return AtomPartition(A.n, tuple(blocks))


def algebra_from_partition(n: int, blocks: Iterable[int]) -> Paving:
    """The algebra whose atoms are ``blocks``: all unions of blocks."""
    blocks = list(blocks)
    AtomPartition(n, tuple(blocks))
    sets = []
    for choice in range(1 << len(blocks)):
        s = 0
        for j, b in enumerate(blocks):
            if choice >> j & 1:
                s |= b
        sets.append(s)
    return Paving(n, tuple(sets))


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of ``{0..n-1}`` as tuples of block bitmasks (restricted growth)."""

    def grow(i: int, blocks: list[int]) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(blocks)
            return
        for j in range(len(blocks)):
            blocks[j] |= 1 << i
            yield from grow(i + 1, blocks)
            blocks[j] &= ~(1 << i)
        blocks.append(1 << i)
        yield from grow(i + 1, blocks)
        blocks.pop()

    yield from grow(0, [])


def all_pavings(n: int) -> Iterator[Paving]:
    """Every family of subsets of an ``n``-set containing ∅ (``2^(2^n - 1)`` of them)."""
    nonempty = list(range(1, 1 << n))
    for choice in range(1 << len(nonempty)):
        sets = [0] + [s for j, s in enumerate(nonempty) if choice >> j & 1]
        yield Paving(n, tuple(sets))


# -- ℕ model ----------------------------------------------------------------------------


@dataclass(frozen=True)
class NatSet:
    """A finite subset of ℕ (``cofinite=False``) or the complement of one."""

    cofinite: bool
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(int(e) for e in self.elements)))
        if elems and elems[0] < 0:
            raise ValueError("natural numbers only")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def finite(cls, elements: Iterable[int] = ()) -> NatSet:
        return cls(False, tuple(elements))

    @classmethod
    def cofinite_excluding(cls, excluded: Iterable[int] = ()) -> NatSet:
        return cls(True, tuple(excluded))

    def __contains__(self, k: object) -> bool:
        return (k in self.elements) != self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.elements

    def complement(self) -> NatSet:
        return NatSet(not self.cofinite, self.elements)

    def __and__(self, other: NatSet) -> NatSet:
        a, b = set(self.elements), set(other.elements)
        if not self.cofinite and not other.cofinite:
            return NatSet.finite(a & b)
        if self.cofinite and other.cofinite:
            return NatSet.cofinite_excluding(a | b)
        fin, cof = (a, b) if not self.cofinite else (b, a)
        return NatSet.finite(fin - cof)

    def __or__(self, other: NatSet) -> NatSet:
        return (self.complement() & other.complement()).complement()

    def issubset(self, other: NatSet) -> bool:
        return (self & other.complement()).is_empty()

    def __str__(self) -> str:
        inner = ", ".join(map(str, self.elements))
        return f"ℕ∖{{{inner}}}" if self.cofinite else f"{{{inner}}}"


class NatPavingKind(enum.Enum):
    FINITE_SETS = "finite_sets"
    COFINITE_PLUS_EMPTY = "cofinite_plus_empty"
    FINITE_OR_COFINITE = "finite_or_cofinite"


def nat_member(S: NatSet, kind: NatPavingKind) -> bool:
    if S.is_empty():
        return True
    if kind is NatPavingKind.FINITE_SETS:
        return not S.cofinite
    if kind is NatPavingKind.COFINITE_PLUS_EMPTY:
        return S.cofinite
    return True


def tail_chain(k: int) -> NatSet:
    """``H_k = ℕ ∖ {0..k}``: decreasing, each nonempty, with empty total intersection."""
    return NatSet.cofinite_excluding(range(k + 1))


def nat_semicompact(kind: NatPavingKind) -> tuple[bool, Callable[[int], NatSet] | None]:
    """Semi-compactness of the ℕ pavings, decided analytically.

    * finite sets: a decreasing sequence of finite sets is eventually constant,
      so an empty countable intersection is already an empty finite one;
      for arbitrary sequences, replace ``H_n`` by ``H_1 ∩ ... ∩ H_n``.
    * the other two kinds contain the chain ``ℕ∖{0..k}``, whose finite
      subintersections are all nonempty while the total intersection is empty.
    """
    if kind is NatPavingKind.FINITE_SETS:
        return True, None
    return False, tail_chain
