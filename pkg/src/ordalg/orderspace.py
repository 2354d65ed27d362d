"""Presentations of compact ordered spaces and their closed subsets.

A point of a double arrow space is a rational coordinate ``x`` in [0, 1]
with a side tag.  A doubled coordinate ``x`` yields the neighbouring pair
``(x, -) < (x, +)``; the end points are ``(0, +)`` and ``(1, -)``.  Closed
sets are finite unions of order intervals, single points and solid real
segments (the latter model subspaces that are not totally disconnected).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Union

from .exact import as_fraction

MINUS = "-"
PLUS = "+"
_SIDE_ALIASES = {"-": MINUS, "minus": MINUS, "+": PLUS, "plus": PLUS}


class Cmp(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@total_ordering
@dataclass(frozen=True)
class Point:
    x: Fraction
    side: str = PLUS

    def __post_init__(self):
        x = as_fraction(self.x)
        side = _SIDE_ALIASES.get(self.side)
        if side is None:
            raise ValueError(f"bad side tag {self.side!r}")
        if not 0 <= x <= 1:
            raise ValueError(f"coordinate {x} outside [0, 1]")
        if x == 0 and side != PLUS:
            raise ValueError("0 is never doubled; use (0, +)")
        if x == 1 and side != MINUS:
            raise ValueError("1 is never doubled; use (1, -)")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "side", side)

    @property
    def key(self) -> tuple[Fraction, int]:
        return (self.x, 0 if self.side == MINUS else 1)

    def __lt__(self, other: "Point") -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.key < other.key

    def __repr__(self) -> str:
        return f"({self.x},{self.side})"


ZERO_X = Point(Fraction(0), PLUS)
ONE_X = Point(Fraction(1), MINUS)


def left_end(a) -> Point:
    """First point of the clopen interval that starts right after break ``a``."""
    a = as_fraction(a)
    return ZERO_X if a == 0 else Point(a, PLUS)


def right_end(a) -> Point:
    """Last point of the clopen interval that stops right before break ``a``."""
    a = as_fraction(a)
    return ONE_X if a == 1 else Point(a, MINUS)


def compare_points(p: Point, q: Point) -> Cmp:
    if p.key < q.key:
        return Cmp.LESS
    if p.key > q.key:
        return Cmp.GREATER
    return Cmp.EQUAL


# --------------------------------------------------------------------------
# spaces


class SpacePresentation:
    """Base class; subclasses decide which coordinates are doubled."""

    def is_doubled(self, x: Fraction) -> bool:
        raise NotImplementedError

    def validate(self, p: Point) -> Point:
        return p

    def point(self, x, side: str = PLUS) -> Point:
        """Build a point, folding the side tag of an undoubled coordinate."""
        x = as_fraction(x)
        if x == 0:
            return ZERO_X
        if x == 1:
            return ONE_X
        if not self.is_doubled(x):
            side = PLUS
        return self.validate(Point(x, side))

    def whole(self) -> "ClosedSet":
        return ClosedSet([ClosedInterval(ZERO_X, ONE_X)])

    def is_finite(self) -> bool:
        return False


@dataclass(frozen=True)
class DoubleArrowFull(SpacePresentation):
    """D((0,1)): every interior coordinate is doubled."""

    def is_doubled(self, x: Fraction) -> bool:
        return 0 < x < 1


@dataclass(frozen=True)
class DoubleArrowMinus(SpacePresentation):
    """D((0,1) minus F) for a finite set F of undoubled coordinates."""

    undoubled: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        coords = frozenset(as_fraction(x) for x in self.undoubled)
        for x in coords:
            if not 0 < x < 1:
                raise ValueError(f"undoubled coordinate {x} outside (0, 1)")
        object.__setattr__(self, "undoubled", coords)

    def is_doubled(self, x: Fraction) -> bool:
        return 0 < x < 1 and x not in self.undoubled

    def validate(self, p: Point) -> Point:
        if p.x in self.undoubled and p.side != PLUS:
            raise ValueError(f"coordinate {p.x} is not doubled in this space")
        return p


@dataclass(frozen=True)
class FiniteChain(SpacePresentation):
    """The chain 0 < 1 < ... < n-1, embedded at coordinates i/(n-1)."""

    n: int = 1

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("a finite chain needs n >= 1")

    def is_doubled(self, x: Fraction) -> bool:
        return False

    def is_finite(self) -> bool:
        return True

    def element(self, i: int) -> Point:
        if not 0 <= i < self.n:
            raise IndexError(i)
        if self.n == 1:
            return ZERO_X
        x = Fraction(i, self.n - 1)
        return Point(x, MINUS if x == 1 else PLUS)

    def index(self, p: Point) -> int:
        if self.n == 1:
            if p != ZERO_X:
                raise ValueError(f"{p} is not a point of the chain")
            return 0
        i = p.x * (self.n - 1)
        if i.denominator != 1 or self.element(int(i)) != p:
            raise ValueError(f"{p} is not a point of the chain")
        return int(i)

    def validate(self, p: Point) -> Point:
        self.index(p)
        return p

    def whole(self) -> "ClosedSet":
        return ClosedSet([SinglePoint(self.element(i)) for i in range(self.n)])


DOUBLE_ARROW = DoubleArrowFull()


# --------------------------------------------------------------------------
# closed sets


@dataclass(frozen=True)
class ClosedInterval:
    a: Point
    b: Point

    def __post_init__(self):
        if self.b < self.a:
            raise ValueError(f"empty interval [{self.a}, {self.b}]")


@dataclass(frozen=True)
class SinglePoint:
    p: Point


@dataclass(frozen=True)
class SolidSegment:
    l: Fraction
    r: Fraction

    def __post_init__(self):
        l, r = as_fraction(self.l), as_fraction(self.r)
        if not l < r:
            raise ValueError("a solid segment needs l < r")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", r)


Component = Union[ClosedInterval, SinglePoint, SolidSegment]


def _span(c: Component) -> tuple[Point, Point]:
    if isinstance(c, SinglePoint):
        return c.p, c.p
    if isinstance(c, ClosedInterval):
        return c.a, c.b
    raise TypeError("solid segments have no order span")


def _touching(hi: Point, lo: Point) -> bool:
    """True when nothing lies strictly between ``hi`` and the later ``lo``."""
    return lo <= hi or (hi.x == lo.x and hi.side == MINUS and lo.side == PLUS)


class ClosedSet:
    """Canonical finite presentation of a closed subset.

    Construction canonicalises: overlapping or touching intervals merge,
    degenerate intervals become :class:`SinglePoint`, solid segments merge
    among themselves.  Equal sets therefore compare equal structurally.
    """

    __slots__ = ("components", "_intervals", "_solids")

    def __init__(self, components: Iterable[Component] = ()):
        spans: list[tuple[Point, Point]] = []
        solids: list[tuple[Fraction, Fraction]] = []
        for c in components:
            if isinstance(c, SolidSegment):
                solids.append((c.l, c.r))
            elif isinstance(c, (ClosedInterval, SinglePoint)):
                spans.append(_span(c))
            else:
                raise TypeError(f"not a closed-set component: {c!r}")

        spans.sort(key=lambda s: (s[0].key, s[1].key))
        merged: list[list[Point]] = []
        for lo, hi in spans:
            if merged and _touching(merged[-1][1], lo):
                if hi > merged[-1][1]:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])

        solids.sort()
        msolids: list[list[Fraction]] = []
        for l, r in solids:
            if msolids and l <= msolids[-1][1]:
                msolids[-1][1] = max(msolids[-1][1], r)
            else:
                msolids.append([l, r])

        for lo, hi in merged:
            for l, r in msolids:
                if lo.x <= r and l <= hi.x:
                    raise ValueError("an order interval overlaps a solid segment")

        self._intervals = tuple((lo, hi) for lo, hi in merged)
        self._solids = tuple((l, r) for l, r in msolids)
        out: list[tuple[Fraction, Component]] = []
        for lo, hi in self._intervals:
            comp = SinglePoint(lo) if lo == hi else ClosedInterval(lo, hi)
            out.append((lo.x, comp))
        for l, r in self._solids:
            out.append((l, SolidSegment(l, r)))
        out.sort(key=lambda t: t[0])
        self.components: tuple[Component, ...] = tuple(c for _, c in out)

    @property
    def intervals(self) -> tuple[tuple[Point, Point], ...]:
        return self._intervals

    @property
    def solids(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._solids

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosedSet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"ClosedSet({list(self.components)!r})"

    def __bool__(self) -> bool:
        return bool(self.components)

    def __iter__(self) -> Iterator[Component]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __contains__(self, p: Point) -> bool:
        return contains_point(self, p)

    def __or__(self, other: "ClosedSet") -> "ClosedSet":
        return union(self, other)

    def __and__(self, other: "ClosedSet") -> "ClosedSet":
        return intersection(self, other)

    def __le__(self, other: "ClosedSet") -> bool:
        return is_subset(self, other)

    def first_point(self) -> Point:
        if self._solids:
            raise ValueError("first_point is undefined for sets with solid segments")
        return self._intervals[0][0]


EMPTY = ClosedSet()


def contains_point(S: ClosedSet, p: Point) -> bool:
    for lo, hi in S.intervals:
        if lo <= p <= hi:
            return True
    return any(l <= p.x <= r for l, r in S.solids)


def is_subset(A: ClosedSet, B: ClosedSet) -> bool:
    for lo, hi in A.intervals:
        if not any(blo <= lo and hi <= bhi for blo, bhi in B.intervals):
            return False
    for l, r in A.solids:
        if not any(bl <= l and r <= br for bl, br in B.solids):
            return False
    return True


def union(A: ClosedSet, B: ClosedSet) -> ClosedSet:
    return ClosedSet(A.components + B.components)


def intersection(A: ClosedSet, B: ClosedSet) -> ClosedSet:
    parts: list[Component] = []
    for alo, ahi in A.intervals:
        for blo, bhi in B.intervals:
            lo, hi = max(alo, blo), min(ahi, bhi)
            if lo <= hi:
                parts.append(ClosedInterval(lo, hi))
        for l, r in B.solids:
            if alo.x <= r and l <= ahi.x:
                raise ValueError("cannot intersect an order interval with a solid segment")
    for l, r in A.solids:
        for bl, br in B.solids:
            lo, hi = max(l, bl), min(r, br)
            if lo < hi:
                parts.append(SolidSegment(lo, hi))
            elif lo == hi:
                raise ValueError("solid segments meeting in one coordinate")
        for blo, bhi in B.intervals:
            if blo.x <= r and l <= bhi.x:
                raise ValueError("cannot intersect an order interval with a solid segment")
    return ClosedSet(parts)


# --------------------------------------------------------------------------
# order predicates and Cantor-Bendixson calculus


def is_neighbor_pair(p: Point, q: Point, space: SpacePresentation = DOUBLE_ARROW) -> bool:
    """Whether ``p < q`` with no point of ``space`` strictly between them."""
    space.validate(p)
    space.validate(q)
    if not p < q:
        raise ValueError(f"is_neighbor_pair needs p < q, got {p} and {q}")
    if isinstance(space, FiniteChain):
        return space.index(q) == space.index(p) + 1
    return p.x == q.x and p.side == MINUS and q.side == PLUS and space.is_doubled(p.x)


def cb_derivative(S: ClosedSet, space: SpacePresentation = DOUBLE_ARROW) -> ClosedSet:
    """Remove the isolated points of ``S``.

    Components are closed and pairwise separated, so isolation is decided
    inside each component: single points are isolated; a left end
    ``(x, -)`` or right end ``(x, +)`` at a doubled coordinate is isolated
    because it is a limit point from one side only, and that side lies
    outside the interval.  Solid segments are perfect.
    """
    if space.is_finite():
        return EMPTY
    parts: list[Component] = [SolidSegment(l, r) for l, r in S.solids]
    for lo, hi in S.intervals:
        if lo == hi:
            continue
        if lo.side == MINUS and space.is_doubled(lo.x):
            lo = Point(lo.x, PLUS)
        if hi.side == PLUS and space.is_doubled(hi.x):
            hi = Point(hi.x, MINUS)
        if lo <= hi:
            parts.append(ClosedInterval(lo, hi))
    return ClosedSet(parts)


def kernel(S: ClosedSet, space: SpacePresentation = DOUBLE_ARROW) -> ClosedSet:
    """Largest perfect subset of ``S`` (empty iff ``S`` is scattered)."""
    current = S
    for _ in range(len(S) + 2):
        nxt = cb_derivative(current, space)
        if nxt == current:
            return current
        current = nxt
    raise AssertionError("derivative sequence failed to stabilise")


def derivative_rank(S: ClosedSet, space: SpacePresentation = DOUBLE_ARROW) -> int:
    """Number of derivative steps until the sequence stabilises."""
    steps, current = 0, S
    while True:
        nxt = cb_derivative(current, space)
        if nxt == current:
            return steps
        current, steps = nxt, steps + 1


def contains_cantor(S: ClosedSet, space: SpacePresentation = DOUBLE_ARROW) -> bool:
    """Whether ``S`` contains a copy of the Cantor set.

    Only solid segments can carry one: with finitely many undoubled
    coordinates the complement of the doubled set is finite.
    """
    return bool(S.solids)
