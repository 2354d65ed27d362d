"""Hypothesis strategies for exact objects."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from ordalg.exact import GaussianRational
from ordalg.orderspace import (
    MINUS,
    PLUS,
    ClosedInterval,
    ClosedSet,
    DoubleArrowFull,
    DoubleArrowMinus,
    Point,
    SinglePoint,
    SolidSegment,
)
from ordalg.stepcalc import StepFunction

DEN = 32


def rationals(lo: int = -3, hi: int = 3, den: int = 8):
    return st.integers(lo * den, hi * den).map(lambda k: Fraction(k, den))


def gaussians(bound: int = 3, den: int = 4):
    return st.builds(GaussianRational, rationals(-bound, bound, den), rationals(-bound, bound, den))


def coords(max_size: int, den: int = DEN):
    return st.lists(st.integers(1, den - 1), max_size=max_size, unique=True).map(
        lambda ks: sorted(Fraction(k, den) for k in ks))


@st.composite
def step_functions(draw, max_breaks: int = 4, den: int = 16, values=None):
    breaks = draw(coords(max_breaks, den))
    vals = values if values is not None else gaussians(2, 2)
    return StepFunction(breaks, draw(st.lists(vals, min_size=len(breaks) + 1, max_size=len(breaks) + 1)))


sides = st.sampled_from((MINUS, PLUS))


@st.composite
def closed_sets(draw, space=DoubleArrowFull(), solids: bool = False, max_parts: int = 4):
    cs = draw(coords(2 * max_parts))
    if len(cs) % 2:
        cs = cs[:-1]
    parts = []
    undoubled = getattr(space, "undoubled", frozenset())

    def point(x):
        return Point(x, PLUS if x in undoubled else draw(sides))

    for a, b in zip(cs[::2], cs[1::2]):
        kind = draw(st.integers(0, 3 if solids else 2))
        if kind == 0:
            parts.append(SinglePoint(point(a)))
        elif kind == 1:
            parts.append(ClosedInterval(point(a), point(b)))
        elif kind == 2:
            parts += [SinglePoint(point(a)), SinglePoint(point(b))]
        else:
            parts.append(SolidSegment(a, b))
    return ClosedSet(parts)


minus_spaces = coords(3).map(lambda xs: DoubleArrowMinus(frozenset(xs)))
