"""Closed subalgebras of C(D) presented through membership and approximation queries.

Every oracle answers, for a step-function target and ``eps > 0``, either
an algebra element ``g`` with ``||g - target||^2 < eps^2`` or "no" together
with the exact squared distance from the target to the algebra.

* :class:`FinAlgOracle`: a finitely generated algebra (functions constant on
  the classes of a :class:`~ordalg.finalg.FinStepAlgebra`).
* :class:`BreakpointsOracle`: step functions whose breaks lie in a finite
  coordinate set ``T``.
* :class:`PullbackOracle`: functions constant on each of finitely many
  collapsed segments ``[(l,+), (r,-)]``, free elsewhere.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .exact import ONE, GaussianRational, as_fraction, sqrt_upper
from .finalg import FinStepAlgebra, _refined_values, contains as finalg_contains
from .orderspace import MINUS, PLUS, Point
from .stepcalc import NiceSet, StepFunction, norm_sq


def _circumcenter(a: GaussianRational, b: GaussianRational, c: GaussianRational) -> GaussianRational:
    d = 2 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im))
    a2, b2, c2 = a.abs2(), b.abs2(), c.abs2()
    x = (a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d
    y = (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d
    return GaussianRational(x, y)


def enclosing_circle(points: Iterable[GaussianRational]) -> tuple[GaussianRational, Fraction]:
    """Exact smallest enclosing circle ``(center, radius^2)`` of finitely many points.

    Incremental construction; with rational input every center is a
    midpoint or a circumcenter and therefore rational.
    """
    pts = list(dict.fromkeys(GaussianRational.coerce(p) for p in points))
    if not pts:
        raise ValueError("no points")
    c, r2 = pts[0], Fraction(0)
    for i, p in enumerate(pts):
        if (p - c).abs2() <= r2:
            continue
        c, r2 = p, Fraction(0)
        for j in range(i):
            q = pts[j]
            if (q - c).abs2() <= r2:
                continue
            c = (p + q) / 2
            r2 = (p - c).abs2()
            for k in range(j):
                s = pts[k]
                if (s - c).abs2() <= r2:
                    continue
                c = _circumcenter(p, q, s)
                r2 = (p - c).abs2()
    return c, r2


@dataclass(frozen=True)
class Approximation:
    g: StepFunction | None
    dist_sq: Fraction

    def __bool__(self) -> bool:
        return self.g is not None


def _collapse(target: StepFunction, blocks: Sequence[tuple[Fraction, Fraction]]) -> tuple[StepFunction, Fraction]:
    """Best approximant of ``target`` among functions constant on every block."""
    cuts = sorted({*target.breaks, *(x for blk in blocks for x in blk if 0 < x < 1)})
    bounds = [Fraction(0), *cuts, Fraction(1)]
    cells = list(zip(bounds, bounds[1:]))
    centers = []
    worst = Fraction(0)
    for l, r in blocks:
        vals = [v for lo, hi, v in target.pieces() if lo < r and hi > l]
        c, r2 = enclosing_circle(vals)
        centers.append((l, r, c))
        worst = max(worst, r2)
    values = []
    for lo, hi in cells:
        hit = next((c for l, r, c in centers if l <= lo and hi <= r), None)
        values.append(hit if hit is not None else target.value_at_coordinate((lo + hi) / 2))
    return StepFunction(cuts, values), worst


class AlgebraOracle(ABC):
    kind: str

    @abstractmethod
    def contains(self, f: StepFunction) -> bool:
        """Exact membership of a step function."""

    @abstractmethod
    def can_jump_at(self, x: Fraction) -> bool:
        """Whether some element separates the pair ``x-, x+``."""

    @abstractmethod
    def best(self, target: StepFunction) -> tuple[StepFunction, Fraction]:
        """A nearest element and the squared distance."""

    def jump_points(self) -> tuple[Fraction, ...] | None:
        """All coordinates where elements may jump, or ``None`` if unbounded."""
        return None

    def approx(self, target: StepFunction, eps) -> Approximation:
        eps = as_fraction(eps)
        g, d2 = self.best(target)
        return Approximation(g if d2 < eps * eps else None, d2)

    @abstractmethod
    def separate_pair(self, q: Fraction) -> StepFunction:
        """An element ``f`` with ``f(q-) = -1`` and ``f(q+) = 1``."""


@dataclass(frozen=True)
class BreakpointsOracle(AlgebraOracle):
    T: NiceSet
    kind = "breakpoints"

    def blocks(self) -> list[tuple[Fraction, Fraction]]:
        bounds = [Fraction(0), *self.T.coords, Fraction(1)]
        return list(zip(bounds, bounds[1:]))

    def contains(self, f: StepFunction) -> bool:
        return all(self.T.has_pair(b) for b in f.breaks)

    def can_jump_at(self, x) -> bool:
        return self.T.has_pair(x)

    def jump_points(self) -> tuple[Fraction, ...]:
        return self.T.coords

    def best(self, target):
        return _collapse(target, self.blocks())

    def separate_pair(self, q) -> StepFunction:
        q = as_fraction(q)
        if not self.can_jump_at(q):
            raise DomainError("oracle cannot jump at q", f"{q} is not a breakpoint")
        return StepFunction.jump(q, -1, 1)


@dataclass(frozen=True)
class PullbackOracle(AlgebraOracle):
    blocks: tuple[tuple[Fraction, Fraction], ...]
    kind = "pullback"

    def __post_init__(self):
        blocks = tuple(sorted((as_fraction(l), as_fraction(r)) for l, r in self.blocks))
        for l, r in blocks:
            if not 0 <= l < r <= 1:
                raise ValueError("blocks need 0 <= l < r <= 1")
        for (_, r0), (l1, _) in zip(blocks, blocks[1:]):
            if l1 < r0:
                raise ValueError("blocks overlap")
        object.__setattr__(self, "blocks", blocks)

    def contains(self, f: StepFunction) -> bool:
        return not any(l < b < r for b in f.breaks for l, r in self.blocks)

    def can_jump_at(self, x) -> bool:
        x = as_fraction(x)
        return 0 < x < 1 and not any(l < x < r for l, r in self.blocks)

    def best(self, target):
        return _collapse(target, self.blocks)

    def separate_pair(self, q) -> StepFunction:
        q = as_fraction(q)
        if not self.can_jump_at(q):
            raise DomainError("oracle cannot jump at q", f"{q} lies inside a collapsed block")
        return StepFunction.jump(q, -1, 1)


@dataclass(frozen=True)
class FinAlgOracle(AlgebraOracle):
    algebra: FinStepAlgebra
    kind = "finalg"

    def __post_init__(self):
        if self.algebra.domain is not None:
            raise ValueError("the oracle needs an algebra on the whole space")

    def _sides(self, x: Fraction) -> tuple[int, int] | None:
        part = self.algebra.partition
        if x not in part:
            return None
        i = part.index(x)
        owner = self.algebra.class_of()
        return owner[i], owner[i + 1]

    def contains(self, f: StepFunction) -> bool:
        return finalg_contains(self.algebra, f)

    def can_jump_at(self, x) -> bool:
        sides = self._sides(as_fraction(x))
        return sides is not None and sides[0] != sides[1]

    def jump_points(self) -> tuple[Fraction, ...]:
        return tuple(x for x in self.algebra.partition if self.can_jump_at(x))

    def best(self, target):
        A = self.algebra
        per_class: dict[int, list[GaussianRational]] = {}
        for k, _, _, _, v in _refined_values(A, target):
            per_class.setdefault(k, []).append(v)
        centers, worst = [], Fraction(0)
        for k in range(A.dimension):
            c, r2 = enclosing_circle(per_class[k])
            centers.append(c)
            worst = max(worst, r2)
        return A.element(centers), worst

    def separate_pair(self, q) -> StepFunction:
        q = as_fraction(q)
        if not self.can_jump_at(q):
            raise DomainError("oracle cannot jump at q", f"no class boundary at {q}")
        left, right = self._sides(q)
        cut = self.algebra.partition.index(q)
        # any class-wise constant lies in the algebra; classes starting left of q go to -1
        coeffs = [-ONE if c[0] <= cut else ONE for c in self.algebra.classes]
        coeffs[left], coeffs[right] = -ONE, ONE
        return self.algebra.element(coeffs)


@dataclass
class PerturbingOracle(AlgebraOracle):
    """Wraps an oracle and adds small algebra-valued noise to its answers.

    Separating functions keep their values at ``q-`` and ``q+``; approximants
    stay strictly inside the requested ``eps``.
    """

    inner: AlgebraOracle
    noise: Fraction = Fraction(1, 64)
    seed: int = 0
    rng: random.Random = field(init=False, repr=False)
    kind = "perturbing"

    def __post_init__(self):
        self.noise = as_fraction(self.noise)
        self.rng = random.Random(self.seed)

    def _small(self, bound: Fraction) -> GaussianRational:
        den = 1 << 10
        top = int(bound * den)
        return GaussianRational(Fraction(self.rng.randint(-top, top), den * 2),
                                Fraction(self.rng.randint(-top, top), den * 2))

    def contains(self, f):
        return self.inner.contains(f)

    def can_jump_at(self, x):
        return self.inner.can_jump_at(x)

    def jump_points(self):
        return self.inner.jump_points()

    def best(self, target):
        return self.inner.best(target)

    def approx(self, target, eps) -> Approximation:
        eps = as_fraction(eps)
        found = self.inner.approx(target, eps)
        if not found:
            return found
        margin = max(eps - sqrt_upper(found.dist_sq), Fraction(0)) / 2
        g = found.g + StepFunction.constant(self._small(margin))
        return Approximation(g, norm_sq(g - target))

    def separate_pair(self, q) -> StepFunction:
        f = self.inner.separate_pair(q)
        q = as_fraction(q)
        raw = StepFunction([Fraction(k, 16) for k in range(1, 16)],
                           [self._small(self.noise) for _ in range(16)])
        n, _ = self.inner.best(f + raw)
        n = n - f
        lo, hi = n(Point(q, MINUS)), n(Point(q, PLUS))
        return f + n - (1 - f) * (lo / 2) - (1 + f) * (hi / 2)
