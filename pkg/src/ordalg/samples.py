"""Seeded random generators of exact objects, for fuzzing and self-checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .descriptors import Descriptor
from .exact import GaussianRational
from .finalg import FinStepAlgebra, saturate
from .orderspace import (
    MINUS,
    PLUS,
    ClosedInterval,
    ClosedSet,
    DoubleArrowFull,
    DoubleArrowMinus,
    FiniteChain,
    SinglePoint,
    SolidSegment,
    SpacePresentation,
)
from .stepcalc import StepFunction


def rational(rng: random.Random, bound: int = 3, den: int = 8) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), den)


def gaussian(rng: random.Random, bound: int = 3, den: int = 4) -> GaussianRational:
    return GaussianRational(rational(rng, bound, den), rational(rng, bound, den))


def coordinates(rng: random.Random, k: int, den: int = 64) -> list[Fraction]:
    """``k`` distinct sorted coordinates in (0, 1)."""
    return sorted(Fraction(c, den) for c in rng.sample(range(1, den), k))


def step_function(rng: random.Random, max_breaks: int = 4, den: int = 16, values: list | None = None) -> StepFunction:
    n = rng.randint(0, min(max_breaks, den - 1))
    breaks = coordinates(rng, n, den)
    pool = values or [gaussian(rng, 2, 2) for _ in range(4)]
    return StepFunction(breaks, [rng.choice(pool) for _ in range(n + 1)])


def small_step(rng: random.Random, radius: Fraction, max_breaks: int = 4, den: int = 64) -> StepFunction:
    """A step function with every ``|value|^2 < radius^2``."""
    n = rng.randint(0, max_breaks)
    breaks = coordinates(rng, n, den)
    grid = 64
    top = int(radius * grid / 2)

    def pick() -> GaussianRational:
        # each coordinate strictly below radius/sqrt(2) in modulus
        return GaussianRational(Fraction(rng.randint(-top, top), grid), Fraction(rng.randint(-top, top), grid))

    vals = []
    for _ in range(n + 1):
        v = pick()
        while v.abs2() >= radius * radius:
            v = pick()
        vals.append(v)
    return StepFunction(breaks, vals)


def space(rng: random.Random) -> SpacePresentation:
    kind = rng.randrange(3)
    if kind == 0:
        return DoubleArrowFull()
    if kind == 1:
        return DoubleArrowMinus(frozenset(coordinates(rng, rng.randint(1, 4), 16)))
    return FiniteChain(rng.randint(1, 9))


def closed_set(rng: random.Random, sp: SpacePresentation, max_parts: int = 5, solids: bool = True) -> ClosedSet:
    if isinstance(sp, FiniteChain):
        chosen = [i for i in range(sp.n) if rng.random() < 0.5]
        return ClosedSet([SinglePoint(sp.element(i)) for i in chosen])
    k = rng.randint(0, max_parts)
    coords = coordinates(rng, 2 * k, 32) if k else []
    parts = []
    for a, b in zip(coords[::2], coords[1::2]):
        kind = rng.randrange(4 if solids else 3)
        pa = sp.point(a, rng.choice((MINUS, PLUS)))
        pb = sp.point(b, rng.choice((MINUS, PLUS)))
        if kind == 0:
            parts.append(SinglePoint(pa))
        elif kind == 1:
            parts.append(SinglePoint(pa))
            parts.append(SinglePoint(pb))
        elif kind == 2:
            parts.append(ClosedInterval(pa, pb))
        else:
            parts.append(SolidSegment(a, b))
    return ClosedSet(parts)


def generators(rng: random.Random, count: int | None = None, den: int = 16) -> list[StepFunction]:
    count = rng.randint(0, 3) if count is None else count
    return [step_function(rng, 3, den, values=[GaussianRational(v) for v in (0, 1, 2)]) for _ in range(count)]


def domain(rng: random.Random) -> ClosedSet:
    """A closed subset of the double arrow mixing intervals and isolated points."""
    sp = DoubleArrowFull()
    S = ClosedSet()
    while not S:
        S = closed_set(rng, sp, 4, solids=False)
    return S


def algebra(rng: random.Random, with_domain: bool = False) -> FinStepAlgebra:
    return saturate(generators(rng), domain(rng) if with_domain else None)


def descriptor(rng: random.Random, max_jumps: int = 3) -> Descriptor:
    n = rng.randint(0, max_jumps)
    z = [gaussian(rng, 2, 4)]
    for _ in range(n):
        v = gaussian(rng, 2, 4)
        while v == z[-1]:
            v = gaussian(rng, 2, 4)
        z.append(v)
    pairs = coordinates(rng, n + 1, 64) if n else []
    return Descriptor(tuple(z), tuple(pairs))


def step_in(rng: random.Random, delta: Descriptor, den: int = 1024) -> StepFunction:
    """A member of STEP(delta) with jumps on a grid of step ``1/den``."""
    breaks = []
    for i in range(1, delta.n + 1):
        lo, hi = delta.window(i)
        a, b = int(lo * den) + 1, -int(-hi * den) - 1
        breaks.append(Fraction(rng.randint(a, b), den))
    return StepFunction(breaks, delta.z)
