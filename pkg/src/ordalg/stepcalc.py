"""Exact step functions on the double arrow space.

A :class:`StepFunction` with breaks ``a_1 < ... < a_n`` and values
``z_0, ..., z_n`` takes the value ``z_i`` on the clopen interval
``[(a_i, +), (a_{i+1}, -)]`` (with ``a_0 = 0`` and ``a_{n+1} = 1``).
Sup-norms are reported squared so that everything stays rational.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import DomainError
from .exact import ONE, ZERO, GaussianRational, Scalar, as_fraction, sqrt_lower, sqrt_upper
from .orderspace import (
    EMPTY,
    MINUS,
    PLUS,
    ClosedInterval,
    ClosedSet,
    Point,
    SinglePoint,
    left_end,
    right_end,
)


def _g(v) -> GaussianRational:
    return GaussianRational.coerce(v if not isinstance(v, str) else as_fraction(v))


class StepFunction:
    """Canonical step function: strictly increasing breaks, adjacent values distinct."""

    __slots__ = ("breaks", "values")

    def __init__(self, breaks: Sequence = (), values: Sequence = (0,)):
        bs = [as_fraction(b) for b in breaks]
        vs = [_g(v) for v in values]
        if len(vs) != len(bs) + 1:
            raise ValueError("need exactly one more value than breaks")
        for b in bs:
            if not 0 < b < 1:
                raise ValueError(f"break {b} outside (0, 1)")
        for x, y in zip(bs, bs[1:]):
            if not x < y:
                raise ValueError("breaks must be strictly increasing")
        out_b: list[Fraction] = []
        out_v: list[GaussianRational] = [vs[0]]
        for b, v in zip(bs, vs[1:]):
            if v == out_v[-1]:
                continue
            out_b.append(b)
            out_v.append(v)
        self.breaks: tuple[Fraction, ...] = tuple(out_b)
        self.values: tuple[GaussianRational, ...] = tuple(out_v)

    @classmethod
    def constant(cls, c: Scalar) -> "StepFunction":
        return cls((), (c,))

    @classmethod
    def jump(cls, at, before: Scalar, after: Scalar) -> "StepFunction":
        return cls((at,), (before, after))

    @classmethod
    def indicator(cls, lo, hi) -> "StepFunction":
        """Indicator of ``[(lo,+), (hi,-)]`` for coordinates ``0 <= lo < hi <= 1``."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        breaks, values = [], [ZERO]
        if lo > 0:
            breaks.append(lo)
            values.append(ONE)
        else:
            values = [ONE]
        if hi < 1:
            breaks.append(hi)
            values.append(ZERO)
        return cls(breaks, values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.breaks == other.breaks and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.breaks, self.values))

    def __repr__(self) -> str:
        parts = [str(self.values[0])]
        for b, v in zip(self.breaks, self.values[1:]):
            parts.append(f"@{b}")
            parts.append(str(v))
        return "StepFunction(" + " ".join(parts) + ")"

    # -- pieces and evaluation

    def index_at(self, p: Point) -> int:
        i = bisect_left(self.breaks, p.x)
        if i < len(self.breaks) and self.breaks[i] == p.x and p.side == PLUS:
            i += 1
        return i

    def __call__(self, p: Point) -> GaussianRational:
        return self.values[self.index_at(p)]

    def value_at_coordinate(self, x: Fraction) -> GaussianRational:
        """Value on the piece whose open projection contains ``x`` (``x`` not a break)."""
        return self.values[bisect_left(self.breaks, as_fraction(x))]

    def piece_bounds(self, i: int) -> tuple[Fraction, Fraction]:
        lo = self.breaks[i - 1] if i > 0 else Fraction(0)
        hi = self.breaks[i] if i < len(self.breaks) else Fraction(1)
        return lo, hi

    def pieces(self) -> Iterator[tuple[Fraction, Fraction, GaussianRational]]:
        """Yield ``(lo, hi, value)`` coordinate bounds of each clopen piece."""
        for i, v in enumerate(self.values):
            lo, hi = self.piece_bounds(i)
            yield lo, hi, v

    def piece_set(self, i: int) -> ClosedSet:
        lo, hi = self.piece_bounds(i)
        return ClosedSet([ClosedInterval(left_end(lo), right_end(hi))])

    def jumps(self) -> Iterator[tuple[Fraction, GaussianRational]]:
        """Yield ``(coordinate, right value - left value)`` for every break."""
        for i, b in enumerate(self.breaks):
            yield b, self.values[i + 1] - self.values[i]

    # -- ring structure

    def __add__(self, other):
        return combine("add", self, other)

    def __radd__(self, other):
        return combine("add", self, other)

    def __sub__(self, other):
        return combine("add", self, -_lift(other))

    def __rsub__(self, other):
        return combine("add", -self, other)

    def __neg__(self):
        return combine("scale", self, c=-1)

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return combine("mul", self, other)
        return combine("scale", self, c=other)

    __rmul__ = __mul__

    def conjugate(self) -> "StepFunction":
        return combine("conj", self)

    def map_values(self, fn: Callable[[GaussianRational], Scalar]) -> "StepFunction":
        return StepFunction(self.breaks, [fn(v) for v in self.values])

    def is_constant(self) -> bool:
        return not self.breaks


def _lift(x) -> StepFunction:
    return x if isinstance(x, StepFunction) else StepFunction.constant(x)


def common_refinement(*fs: StepFunction) -> tuple[Fraction, ...]:
    return tuple(sorted(set().union(*(f.breaks for f in fs))))


def on_partition(f: StepFunction, partition: Sequence[Fraction]) -> list[GaussianRational]:
    """Values of ``f`` on the pieces cut out by ``partition`` (a refinement of f's breaks)."""
    bounds = [Fraction(0), *partition, Fraction(1)]
    return [f.value_at_coordinate((lo + hi) / 2) for lo, hi in zip(bounds, bounds[1:])]


def combine(op: str, f: StepFunction, g=None, c: Scalar | None = None) -> StepFunction:
    """Pointwise ``add``, ``mul``, ``scale`` (by ``c``) or ``conj`` on the common refinement."""
    if op == "scale":
        k = GaussianRational.coerce(c)
        return f.map_values(lambda v: v * k)
    if op == "conj":
        return f.map_values(lambda v: v.conjugate())
    if op not in ("add", "mul"):
        raise ValueError(f"unknown operation {op!r}")
    g = _lift(g)
    part = common_refinement(f, g)
    fv, gv = on_partition(f, part), on_partition(g, part)
    if op == "add":
        vals = [x + y for x, y in zip(fv, gv)]
    else:
        vals = [x * y for x, y in zip(fv, gv)]
    return StepFunction(part, vals)


# --------------------------------------------------------------------------
# norms and restriction


def _pieces_meeting(f: StepFunction, H: ClosedSet) -> list[int]:
    if H.solids:
        raise DomainError("solid segment", "step functions live on order intervals only")
    if not H:
        raise DomainError("empty set", "H must be nonempty")
    hits = []
    for i in range(len(f.values)):
        lo, hi = f.piece_bounds(i)
        plo, phi = left_end(lo), right_end(hi)
        if any(plo <= chi and clo <= phi for clo, chi in H.intervals):
            hits.append(i)
    return hits


def sup_norm(f: StepFunction, H: ClosedSet | None = None) -> tuple[Fraction, int]:
    """``(max |f|^2 on H, index of a piece attaining it)``; H defaults to the whole space."""
    idx = range(len(f.values)) if H is None else _pieces_meeting(f, H)
    best = max(idx, key=lambda i: (f.values[i].abs2(), -i))
    return f.values[best].abs2(), best


def norm_sq(f: StepFunction, H: ClosedSet | None = None) -> Fraction:
    return sup_norm(f, H)[0]


@dataclass(frozen=True)
class RestrictedStep:
    """A step function considered only on the closed set ``domain``.

    Equality is semantic: two restrictions are equal when they agree at
    every point of the domain.
    """

    domain: ClosedSet
    func: StepFunction

    def __eq__(self, other) -> bool:
        if not isinstance(other, RestrictedStep):
            return NotImplemented
        if self.domain != other.domain:
            return False
        return norm_sq(self.func - other.func, self.domain) == 0

    def __hash__(self) -> int:
        return hash(self.domain)

    def __call__(self, p: Point) -> GaussianRational:
        if p not in self.domain:
            raise ValueError(f"{p} is outside the domain")
        return self.func(p)

    def __mul__(self, other: "RestrictedStep") -> "RestrictedStep":
        if self.domain != other.domain:
            raise ValueError("domains differ")
        return restrict(self.func * other.func, self.domain)

    def __add__(self, other: "RestrictedStep") -> "RestrictedStep":
        if self.domain != other.domain:
            raise ValueError("domains differ")
        return restrict(self.func + other.func, self.domain)

    def values(self) -> tuple[GaussianRational, ...]:
        return self.func.values

    def norm_sq(self) -> Fraction:
        return norm_sq(self.func, self.domain)


def restrict(f: StepFunction, H: ClosedSet) -> RestrictedStep:
    """Restrict ``f`` to ``H``, dropping breaks that do not separate points of H.

    Pieces that miss H are discarded; where the value changes between two
    kept pieces the break is placed right after the earlier one.
    """
    kept = _pieces_meeting(f, H)
    breaks: list[Fraction] = []
    values = [f.values[kept[0]]]
    for i in kept[1:]:
        if f.values[i] != values[-1]:
            prev = kept[kept.index(i) - 1]
            breaks.append(f.breaks[prev])
            values.append(f.values[i])
    return RestrictedStep(H, StepFunction(breaks, values))


# --------------------------------------------------------------------------
# jump sets


@dataclass(frozen=True)
class NiceSet:
    """``{0_X, 1_X}`` together with the pairs ``x-, x+`` for each listed coordinate."""

    coords: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = sorted({as_fraction(c) for c in self.coords})
        for c in cs:
            if not 0 < c < 1:
                raise ValueError(f"nice-set coordinate {c} outside (0, 1)")
        object.__setattr__(self, "coords", tuple(cs))
        object.__setattr__(self, "_lookup", frozenset(cs))

    @classmethod
    def dyadics(cls, max_denominator: int, extra: Iterable = ()) -> "NiceSet":
        if max_denominator < 1 or max_denominator & (max_denominator - 1):
            raise ValueError("max_denominator must be a power of two")
        coords = [Fraction(k, max_denominator) for k in range(1, max_denominator)]
        return cls(tuple(coords) + tuple(extra))

    def __len__(self) -> int:
        """Number of points, counting both members of every pair plus 0 and 1."""
        return 2 * len(self.coords) + 2

    def pair_count(self) -> int:
        return len(self.coords)

    def has_pair(self, x) -> bool:
        return as_fraction(x) in self._lookup

    def __contains__(self, p) -> bool:
        if isinstance(p, Point):
            return p.x in (0, 1) or p.x in self._lookup
        return as_fraction(p) in self._lookup

    def __iter__(self) -> Iterator[Point]:
        yield Point(0, PLUS)
        for c in self.coords:
            yield Point(c, MINUS)
            yield Point(c, PLUS)
        yield Point(1, MINUS)

    def __le__(self, other: "NiceSet") -> bool:
        return self._lookup <= other._lookup

    def union(self, coords: Iterable) -> "NiceSet":
        return NiceSet(self.coords + tuple(as_fraction(c) for c in coords))

    def inside(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        """Pair coordinates strictly between ``lo`` and ``hi``."""
        i = bisect_left(self.coords, lo)
        out = []
        for c in self.coords[i:]:
            if c >= hi:
                break
            if c > lo:
                out.append(c)
        return out


def jmp(f: StepFunction, eps) -> NiceSet:
    """Pairs where ``f`` jumps by at least ``eps`` (compared as ``|jump|^2 >= eps^2``)."""
    eps = as_fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    e2 = eps * eps
    return NiceSet(tuple(x for x, d in f.jumps() if d.abs2() >= e2))


# --------------------------------------------------------------------------
# measures


@dataclass(frozen=True)
class DensityPiece:
    l: Fraction
    r: Fraction
    d: Fraction

    def __post_init__(self):
        l, r, d = as_fraction(self.l), as_fraction(self.r), as_fraction(self.d)
        if not 0 <= l < r <= 1:
            raise ValueError("density piece needs 0 <= l < r <= 1")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "d", d)


@dataclass(frozen=True)
class Measure:
    """Finite atomic part plus a piecewise constant rational density.

    The density lives on [0, 1] and is pulled back along the projection
    ``(x, side) -> x``.  Atoms at the same point are summed.
    """

    atoms: tuple[tuple[Point, GaussianRational], ...] = ()
    density: tuple[DensityPiece, ...] = ()

    def __post_init__(self):
        acc: dict[Point, GaussianRational] = {}
        for p, w in self.atoms:
            acc[p] = acc.get(p, ZERO) + _g(w)
        atoms = tuple(sorted(((p, w) for p, w in acc.items() if w), key=lambda t: t[0].key))
        dens = tuple(sorted((d for d in self.density if d.d != 0), key=lambda d: d.l))
        for a, b in zip(dens, dens[1:]):
            if b.l < a.r:
                raise ValueError("density pieces overlap")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "density", dens)

    @classmethod
    def atom(cls, p: Point, w: Scalar = 1) -> "Measure":
        return cls(((p, _g(w)),))

    def __add__(self, other: "Measure") -> "Measure":
        dens = _add_densities(self.density, other.density)
        return Measure(self.atoms + other.atoms, dens)

    def __neg__(self) -> "Measure":
        return Measure(tuple((p, -w) for p, w in self.atoms),
                       tuple(DensityPiece(d.l, d.r, -d.d) for d in self.density))

    def __sub__(self, other: "Measure") -> "Measure":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.atoms and not self.density

    def total_variation_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational ``(lower, upper)`` bounds on ``|mu|(X)``; exact when all
        atom moduli are rational."""
        dens = sum((abs(d.d) * (d.r - d.l) for d in self.density), Fraction(0))
        lo = dens + sum((sqrt_lower(w.abs2(), bits) for _, w in self.atoms), Fraction(0))
        hi = dens + sum((sqrt_upper(w.abs2(), bits) for _, w in self.atoms), Fraction(0))
        return lo, hi


def _add_densities(a, b) -> tuple[DensityPiece, ...]:
    cuts = sorted({x for d in (*a, *b) for x in (d.l, d.r)})
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        mid = (lo + hi) / 2
        val = sum((d.d for d in (*a, *b) if d.l < mid < d.r), Fraction(0))
        if val:
            out.append(DensityPiece(lo, hi, val))
    return tuple(out)


def integrate(f: StepFunction, mu: Measure) -> GaussianRational:
    """Exact ``integral of f d mu``."""
    total = ZERO
    for p, w in mu.atoms:
        total = total + w * f(p)
    for piece in mu.density:
        for lo, hi, v in f.pieces():
            a, b = max(lo, piece.l), min(hi, piece.r)
            if a < b:
                total = total + v * (piece.d * (b - a))
    return total


def support(mu: Measure) -> ClosedSet:
    """Closed support: the atoms plus ``[(l,+), (r,-)]`` for each density piece."""
    parts = [SinglePoint(p) for p, _ in mu.atoms]
    for piece in mu.density:
        parts.append(ClosedInterval(left_end(piece.l), right_end(piece.r)))
    return ClosedSet(parts) if parts else EMPTY
