"""Seeded random fixtures: pavings, lattices, capacities and measurable functions."""

from __future__ import annotations

import logging
import os
import random
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .capacity import PartialCapacity, SetFunction
from .core import ZERO, PointFn, full, is_subset, popcount
from .extrat import INF, ExtRat
from .paving import Paving, close_under

log = logging.getLogger(__name__)

DEFAULT_SEED = 1981
SMALL_VALUES: tuple[ExtRat, ...] = (ZERO, Fraction(1, 2), Fraction(1), Fraction(2), INF)


def default_seed() -> int:
    """Suite seed: ``PAVESET_SEED`` from the environment, else a fixed default."""
    raw = os.environ.get("PAVESET_SEED")
    seed = int(raw) if raw else DEFAULT_SEED
    log.info("suite seed %d", seed)
    return seed


def rng_for(seed: int | None) -> random.Random:
    return random.Random(default_seed() if seed is None else seed)


def all_functions(n: int, values: Sequence[object]) -> Iterator[PointFn]:
    for combo in product(values, repeat=n):
        yield PointFn(tuple(combo))


def random_paving(rng: random.Random, n: int, density: float = 0.4) -> Paving:
    sets = [0] + [s for s in range(1, 1 << n) if rng.random() < density]
    return Paving(n, tuple(sets))


def random_lattice(rng: random.Random, n: int, generators: int | None = None) -> Paving:
    """Closure of a few random sets (plus ∅) under finite ∩ and ∪."""
    k = rng.randint(1, n + 1) if generators is None else generators
    seeds = [rng.randrange(1, 1 << n) for _ in range(k)]
    return close_under(Paving(n, (0, *seeds)), ("cap", "cup"))


def random_chain(rng: random.Random, E: Paving, length: int) -> list[int]:
    """A weakly decreasing chain of nonempty members of ``E`` (possibly shorter)."""
    chain: list[int] = []
    current = None
    for _ in range(length):
        options = [h for h in E if h and (current is None or is_subset(h, current))]
        if not options:
            break
        current = rng.choice(options)
        chain.append(current)
    return chain


def random_measurable(
    rng: random.Random, E: Paving, max_levels: int = 3, allow_inf: bool = True
) -> PointFn:
    """``Σ c_j φ_{L_j}`` over a decreasing chain in ``E``; measurable by construction."""
    chain = random_chain(rng, E, rng.randint(0, max_levels))
    values = [ZERO] * E.n
    for j, level in enumerate(chain):
        last = j == len(chain) - 1
        step: ExtRat = INF if (allow_inf and last and rng.random() < 0.15) else Fraction(rng.randint(1, 4), rng.choice((1, 2)))
        for x in range(E.n):
            if level >> x & 1:
                values[x] = values[x] + step
    return PointFn(tuple(values))


def random_function(rng: random.Random, n: int, values: Sequence[ExtRat] = SMALL_VALUES) -> PointFn:
    return PointFn(tuple(rng.choice(values) for _ in range(n)))


def random_partial_capacity(
    rng: random.Random, E: Paving, allow_inf: bool = False, max_value: int = 4
) -> PartialCapacity:
    """Random monotone values on ``E``, built bottom-up by cardinality."""
    values: dict[int, ExtRat] = {0: ZERO}
    for h in E.sets[1:]:
        floor_value = max((values[s] for s in values if is_subset(s, h)), default=ZERO)
        if allow_inf and rng.random() < 0.1:
            values[h] = INF
        elif floor_value == INF:
            values[h] = INF
        else:
            values[h] = floor_value + Fraction(rng.randint(0, max_value), rng.choice((1, 2)))
    return PartialCapacity(E, values)


def cardinality_capacity(E: Paving, shape: str, rng: random.Random) -> PartialCapacity:
    """``δ(H) = φ(|H|)`` weighted: additive (modular), concave (sub-) or convex (super-)."""
    weights = [Fraction(rng.randint(1, 3)) for _ in range(E.n)]

    def mass(h: int) -> Fraction:
        return sum((weights[i] for i in range(E.n) if h >> i & 1), ZERO)

    if shape == "additive":
        fn = mass
    elif shape == "concave":
        cap = Fraction(rng.randint(1, 3))
        fn = lambda h: min(mass(h), cap)  # noqa: E731
    elif shape == "convex":
        fn = lambda h: mass(h) * mass(h)  # noqa: E731
    else:
        raise ValueError(shape)
    return PartialCapacity(E, {h: fn(h) for h in E})


def random_set_function(
    rng: random.Random, n: int, allow_inf: bool = True, structured: float = 0.5
) -> SetFunction:
    """Random ``μ`` with ``μ(∅) = 0``.

    With probability ``structured`` the values are additive across a random
    partition of the ground set (plus noise inside blocks), which makes the
    Carathéodory algebra nontrivial; otherwise values are independent draws.
    """
    choices: list[ExtRat] = [ZERO, Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]
    if allow_inf:
        choices.append(INF)
    if rng.random() < structured:
        labels = [rng.randrange(n) for _ in range(n)]
        blocks = [sum(1 << i for i in range(n) if labels[i] == b) for b in set(labels)]
        inner: dict[int, ExtRat] = {}
        table = []
        for a in range(1 << n):
            total: ExtRat = ZERO
            for b in blocks:
                part = a & b
                if part:
                    if part not in inner:
                        inner[part] = rng.choice(choices[1:])
                    total = total + inner[part]
            table.append(total)
        return SetFunction(n, tuple(table))
    return SetFunction(n, (ZERO,) + tuple(rng.choice(choices) for _ in range((1 << n) - 1)))


def is_upper_chain(sets: Sequence[int]) -> bool:
    return all(is_subset(b, a) for a, b in zip(sets, sets[1:]))


def size_of(mask: int) -> int:
    return popcount(mask)


def everything(n: int) -> int:
    return full(n)
