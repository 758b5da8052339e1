"""Ground sets, subsets as bitmasks, point functions and staircases.

Subsets of a finite ground set ``{0, ..., n-1}`` are plain ``int`` bitmasks:
bit ``i`` is set iff element ``i`` belongs to the subset.  The containers
(:class:`PointFn`, :class:`~paveset.paving.Paving`,
:class:`~paveset.capacity.Capacity`, ...) carry the ground size ``n``.

Functions on the natural numbers are encoded by :class:`NatFn`: an explicit
prefix followed by one of five closed-form tails, enough to decide limits,
level sets and suprema exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import GroundMismatch, GroundTooLarge, InvalidStaircase, NegativeValue
from .extrat import INF, ExtRat, ext, is_finite

MAX_GROUND = 16
ORACLE_MAX = 5

ZERO = Fraction(0)
ONE = Fraction(1)


# -- subsets -------------------------------------------------------------------------


def full(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if e < 0:
            raise ValueError(f"negative element index {e}")
        mask |= 1 << e
    return mask


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key for families: by cardinality, then by bitmask value."""
    return (popcount(mask), mask)


def all_subsets(n: int) -> range:
    return range(1 << n)


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, in decreasing bitmask order (ending with 0)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_subset(mask: int, labels: Sequence[str] | None = None) -> str:
    elems = members(mask)
    if labels:
        return "{" + ", ".join(labels[i] for i in elems) + "}"
    return "{" + ", ".join(str(i) for i in elems) + "}"


@dataclass(frozen=True)
class Ground:
    """A finite ground set ``{0, ..., n-1}`` with optional element names."""

    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        check_ground(self.n)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.n:
                raise ValueError("labels must name every element exactly once")

    @property
    def full(self) -> int:
        return full(self.n)

    def subset(self, elements: Iterable[int]) -> int:
        mask = mask_of(elements)
        if mask & ~self.full:
            raise ValueError(f"element outside ground set of size {self.n}")
        return mask


def check_ground(n: int, cap: int = MAX_GROUND) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"ground size must be a positive integer, got {n!r}")
    if n > cap:
        raise GroundTooLarge(f"ground size {n} exceeds cap {cap}", n=n, cap=cap)


# -- point functions on a finite ground set ---------------------------------------------


@dataclass(frozen=True)
class PointFn:
    """A function on ``{0, ..., n-1}`` with exact extended values.

    Values must be nonnegative unless ``signed`` is set.
    """

    values: tuple[ExtRat, ...]
    signed: bool = False

    def __post_init__(self) -> None:
        vals = tuple(ext(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        check_ground(len(vals))
        if not self.signed:
            for i, v in enumerate(vals):
                if v < 0:
                    raise NegativeValue(f"f({i}) = {v} < 0 on an unsigned function", index=i)

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, x: int) -> ExtRat:
        return self.values[x]

    def __iter__(self) -> Iterator[ExtRat]:
        return iter(self.values)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"

    def positive_values(self) -> list[ExtRat]:
        """Distinct values > 0, increasing (``inf`` last when present)."""
        return sorted({v for v in self.values if v > 0})

    def at_least(self, level: ExtRat) -> int:
        """The level set ``{f >= level}`` as a bitmask."""
        mask = 0
        for i, v in enumerate(self.values):
            if v >= level:
                mask |= 1 << i
        return mask

    def above(self, level: ExtRat) -> int:
        """The level set ``{f > level}`` as a bitmask."""
        mask = 0
        for i, v in enumerate(self.values):
            if v > level:
                mask |= 1 << i
        return mask

    def positive_part(self) -> PointFn:
        return PointFn(tuple(v if v > 0 else ZERO for v in self.values))

    def negative_part(self) -> PointFn:
        return PointFn(tuple(-v if v < 0 else ZERO for v in self.values))

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)

    def __le__(self, other: PointFn) -> bool:
        _same_ground(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))


def _same_ground(f: PointFn, g: PointFn) -> None:
    if f.n != g.n:
        raise GroundMismatch(f"functions on grounds of size {f.n} and {g.n}")


def _unsigned(f: PointFn) -> None:
    if f.signed and not f.is_nonnegative():
        raise NegativeValue("operation needs a nonnegative function")


def zero(n: int) -> PointFn:
    return PointFn((ZERO,) * n)


def constant(n: int, c: object) -> PointFn:
    return PointFn((ext(c),) * n)


def indicator(mask: int, n: int) -> PointFn:
    """Characteristic function of the subset ``mask`` of an ``n``-element set."""
    check_ground(n)
    if mask & ~full(n):
        raise ValueError("subset not contained in the ground set")
    return PointFn(tuple(ONE if mask >> i & 1 else ZERO for i in range(n)))


def truncate(f: PointFn, a: object) -> PointFn:
    """``f ∧ a``."""
    _unsigned(f)
    a = ext(a)
    return PointFn(tuple(min(v, a) for v in f.values))


def upper_shift(f: PointFn, a: object) -> PointFn:
    """``f ∨ a − a``, i.e. ``max(f − a, 0)`` pointwise; ``a`` must be finite."""
    _unsigned(f)
    a = ext(a)
    if not is_finite(a) or a < 0:
        raise ValueError("upper_shift needs a finite a >= 0")
    return PointFn(tuple(max(v, a) - a for v in f.values))


def scale(f: PointFn, c: object) -> PointFn:
    c = ext(c)
    if c < 0:
        raise ValueError("scale factor must be nonnegative")
    return PointFn(tuple(c * v for v in f.values), signed=f.signed)


_POINTWISE: dict[str, Callable[[ExtRat, ExtRat], ExtRat]] = {
    "min": min,
    "max": max,
    "add": lambda a, b: a + b,
}


def pointwise(f: PointFn, g: PointFn, op: str) -> PointFn:
    """Exact pointwise ``min``, ``max`` or ``add`` of two nonnegative functions."""
    _same_ground(f, g)
    _unsigned(f)
    _unsigned(g)
    try:
        fn = _POINTWISE[op]
    except KeyError:
        raise ValueError(f"unknown pointwise op {op!r}") from None
    return PointFn(tuple(fn(a, b) for a, b in zip(f.values, g.values)))


def compose(f: PointFn, psi: Callable[[ExtRat], ExtRat]) -> PointFn:
    return PointFn(tuple(psi(v) for v in f.values), signed=f.signed)


def sup_norm_diff(f: PointFn, g: PointFn) -> ExtRat:
    """``max |f(x) − g(x)|`` over points where both are finite."""
    _same_ground(f, g)
    diffs = [abs(a - b) for a, b in zip(f.values, g.values) if is_finite(a) and is_finite(b)]
    return max(diffs, default=ZERO)


# -- functions on the natural numbers ---------------------------------------------------


@dataclass(frozen=True)
class Constant:
    c: ExtRat

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", ext(self.c))

    def value(self, n: int) -> ExtRat:
        return self.c

    @property
    def liminf(self) -> ExtRat:
        return self.c

    @property
    def limsup(self) -> ExtRat:
        return self.c


@dataclass(frozen=True)
class HarmonicAbove:
    """``f(n) = L + c/(n+1)``: decreases strictly to ``L``."""

    L: ExtRat
    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "L", ext(self.L))
        object.__setattr__(self, "c", _positive_rational(self.c))

    def value(self, n: int) -> ExtRat:
        return self.L + self.c / (n + 1)

    @property
    def liminf(self) -> ExtRat:
        return self.L

    limsup = liminf


@dataclass(frozen=True)
class HarmonicBelow:
    """``f(n) = max(L − c/(n+1), 0)``: increases to ``L`` without reaching it."""

    L: ExtRat
    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "L", ext(self.L))
        object.__setattr__(self, "c", _positive_rational(self.c))
        if self.L < 0:
            raise ValueError("HarmonicBelow needs L >= 0")

    def value(self, n: int) -> ExtRat:
        return max(self.L - self.c / (n + 1), ZERO)

    @property
    def liminf(self) -> ExtRat:
        return self.L

    limsup = liminf


@dataclass(frozen=True)
class LinearGrowth:
    """``f(n) = c·n``."""

    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", _positive_rational(self.c))

    def value(self, n: int) -> ExtRat:
        return self.c * n

    @property
    def liminf(self) -> ExtRat:
        return INF

    limsup = liminf


@dataclass(frozen=True)
class TwoPoint:
    """``lo`` at even ``n``, ``hi`` at odd ``n``."""

    lo: ExtRat
    hi: ExtRat

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", ext(self.lo))
        object.__setattr__(self, "hi", ext(self.hi))
        if not self.lo < self.hi:
            raise ValueError("TwoPoint needs lo < hi")

    def value(self, n: int) -> ExtRat:
        return self.hi if n % 2 else self.lo

    @property
    def liminf(self) -> ExtRat:
        return self.lo

    @property
    def limsup(self) -> ExtRat:
        return self.hi


Tail = Union[Constant, HarmonicAbove, HarmonicBelow, LinearGrowth, TwoPoint]


def _positive_rational(c: object) -> Fraction:
    c = ext(c)
    if not is_finite(c) or c <= 0:
        raise ValueError(f"expected a positive rational, got {c}")
    return c


@dataclass(frozen=True)
class NatFn:
    """A function on ℕ = {0, 1, 2, ...}: explicit ``prefix`` on ``{0..N-1}``, then ``tail``."""

    prefix: tuple[ExtRat, ...]
    tail: Tail
    signed: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(ext(v) for v in self.prefix))
        if not self.signed:
            bad = [v for v in self.prefix if v < 0]
            if bad or self.tail.liminf < 0 or self._tail_min() < 0:
                raise NegativeValue("unsigned NatFn with a negative value")

    def _tail_min(self) -> ExtRat:
        t = self.tail
        if isinstance(t, TwoPoint):
            return t.lo
        if isinstance(t, HarmonicBelow):
            return ZERO
        if isinstance(t, HarmonicAbove):
            return t.L
        if isinstance(t, LinearGrowth):
            return t.value(self.start)
        return t.c

    @property
    def start(self) -> int:
        """First index governed by the tail (the prefix length ``N``)."""
        return len(self.prefix)

    def __call__(self, n: int) -> ExtRat:
        return nat_eval(self, n)


def nat_eval(f: NatFn, n: int) -> ExtRat:
    if n < 0:
        raise ValueError("natural numbers only")
    if n < f.start:
        return f.prefix[n]
    return f.tail.value(n)


def nat_liminf(f: NatFn) -> ExtRat:
    return f.tail.liminf


def nat_limsup(f: NatFn) -> ExtRat:
    return f.tail.limsup


def nat_limit(f: NatFn) -> ExtRat | None:
    """The limit along the cofinite filter, or ``None`` when it does not exist."""
    lo, hi = nat_liminf(f), nat_limsup(f)
    return lo if lo == hi else None


def nat_sup(f: NatFn) -> tuple[ExtRat, bool]:
    """``(sup f, attained)`` computed from the prefix and the tail's closed form."""
    t, N = f.tail, f.start
    if isinstance(t, Constant):
        tail_sup, attained = t.c, True
    elif isinstance(t, HarmonicAbove):
        tail_sup, attained = t.value(N), True
    elif isinstance(t, HarmonicBelow):
        # increasing towards L; the supremum is reached only when L is 0 or inf
        tail_sup, attained = t.L, (t.L == 0 or not is_finite(t.L))
    elif isinstance(t, LinearGrowth):
        tail_sup, attained = INF, False
    else:
        tail_sup, attained = t.hi, True
    head = max(f.prefix, default=None)
    if head is not None and head >= tail_sup:
        return head, True
    return tail_sup, attained


# -- staircases -------------------------------------------------------------------------


@dataclass(frozen=True)
class Staircase:
    """``Σ a_i φ_{H_i}`` with weakly decreasing sets ``H_1 ⊇ H_2 ⊇ ...``.

    ``paving`` is optional; when given, every ``H_i`` must belong to it.
    """

    n: int
    terms: tuple[tuple[ExtRat, int], ...]
    paving: object = field(default=None, compare=False)

    def __post_init__(self) -> None:
        terms = tuple((ext(a), int(h)) for a, h in self.terms)
        object.__setattr__(self, "terms", terms)
        check_ground(self.n)
        for i, (a, h) in enumerate(terms):
            if a < 0:
                raise InvalidStaircase(f"negative coefficient {a} at term {i}")
            if h & ~full(self.n):
                raise InvalidStaircase(f"set at term {i} leaves the ground set")
            if i and not is_subset(h, terms[i - 1][1]):
                raise InvalidStaircase(f"sets not decreasing at term {i}")
            if self.paving is not None and h not in self.paving:
                raise InvalidStaircase(f"set {format_subset(h)} at term {i} not in the paving")

    @classmethod
    def collapsed(cls, n: int, terms: Iterable[tuple[object, int]], paving: object = None) -> Staircase:
        """Build a staircase, merging repeated sets and dropping null terms."""
        merged: list[tuple[ExtRat, int]] = []
        for a, h in terms:
            a = ext(a)
            if a == 0 or h == 0:
                continue
            if merged and merged[-1][1] == h:
                merged[-1] = (merged[-1][0] + a, h)
            else:
                merged.append((a, h))
        return cls(n, tuple(merged), paving)

    def __call__(self, x: int) -> ExtRat:
        return staircase_eval(self, x)

    def to_pointfn(self) -> PointFn:
        return PointFn(tuple(staircase_eval(self, x) for x in range(self.n)))


def staircase_eval(s: Staircase, x: int) -> ExtRat:
    total: ExtRat = ZERO
    for a, h in s.terms:
        if h >> x & 1:
            total = total + a
    return total
