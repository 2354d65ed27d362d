"""Step-function descriptors, the difference ball cover and the real-part gap test.

A descriptor ``(z_0..z_n ; b_0 < ... < b_n)`` describes the step functions
with value sequence ``z`` whose ``i``-th jump lies strictly between the
pair coordinates ``b_{i-1}`` and ``b_i``.  Two such functions differ
pointwise by ``0`` or by ``+-(z_i - z_{i+1})``, which is what makes the
difference cover work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError
from .exact import GaussianRational, as_fraction, sqrt_lower, sqrt_upper
from .stepcalc import NiceSet, StepFunction

# Radius of the difference cover in units of eps; a sound cover needs 2.
COVER_RADIUS_FACTOR = 2

# Bisection levels kept in reserve below the descriptor bracket.
BRACKET_SLACK = 2


@dataclass(frozen=True)
class Descriptor:
    z: tuple[GaussianRational, ...]
    pairs: tuple[Fraction, ...]

    def __post_init__(self):
        z = tuple(GaussianRational.coerce(v) for v in self.z)
        pairs = tuple(as_fraction(b) for b in self.pairs)
        if not z:
            raise ValueError("a descriptor needs at least one value")
        n = len(z) - 1
        if n == 0 and pairs:
            raise ValueError("a descriptor without jumps carries no pairs")
        if n > 0 and len(pairs) != n + 1:
            raise ValueError(f"{n} jumps need {n + 1} pairs, got {len(pairs)}")
        if any(not 0 < b < 1 for b in pairs):
            raise ValueError("pair coordinates must lie in (0, 1)")
        if any(not a < b for a, b in zip(pairs, pairs[1:])):
            raise ValueError("pair coordinates must increase strictly")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.z) - 1

    def window(self, i: int) -> tuple[Fraction, Fraction]:
        """Open interval that must contain jump ``i`` (1-based)."""
        return self.pairs[i - 1], self.pairs[i]


def matches(delta: Descriptor, tau: StepFunction) -> bool:
    if tau.values != delta.z:
        return False
    for i, a in enumerate(tau.breaks, start=1):
        lo, hi = delta.window(i)
        if not lo < a < hi:
            return False
    return True


def _bisection_bracket(a: Fraction, S: NiceSet) -> tuple[Fraction, Fraction] | None:
    """Dyadic bracket of ``a`` with both ends in S, ``BRACKET_SLACK`` levels
    above the deepest bracket reachable through S."""
    lo, hi = Fraction(0), Fraction(1)
    levels = [(lo, hi)]
    while True:
        mid = (lo + hi) / 2
        if mid == a or not S.has_pair(mid):
            break
        if a < mid:
            hi = mid
        else:
            lo = mid
        levels.append((lo, hi))
    for lo, hi in levels[max(len(levels) - 1 - BRACKET_SLACK, 0):]:
        if lo > 0 and hi < 1:
            return lo, hi
    return None


def _nearest_to_middle(S: NiceSet, x: Fraction, y: Fraction) -> Fraction | None:
    inside = S.inside(x, y)
    if not inside:
        return None
    mid = (x + y) / 2
    return min(inside, key=lambda c: (abs(c - mid), c))


def build_descriptor(sigma: StepFunction, S: NiceSet) -> Descriptor:
    """Descriptor from S that ``sigma`` meets.

    Each jump is located by dyadic bisection through S; the bracket ends
    become the pairs on either side.  A gap whose bracket ends do not fit
    falls back to the S coordinate nearest the middle of the gap.
    """
    jumps = sigma.breaks
    n = len(jumps)
    if n == 0:
        return Descriptor(sigma.values, ())
    brackets = [_bisection_bracket(a, S) for a in jumps]
    bounds = [Fraction(0), *jumps, Fraction(1)]
    pairs = []
    for i in range(n + 1):
        x, y = bounds[i], bounds[i + 1]
        candidates = []
        if i > 0 and brackets[i - 1] is not None:
            candidates.append(brackets[i - 1][1])
        if i < n and brackets[i] is not None:
            candidates.append(brackets[i][0])
        choice = next((c for c in candidates if x < c < y), None)
        if choice is None:
            choice = _nearest_to_middle(S, x, y)
        if choice is None:
            raise DomainError("S too sparse", f"no pair of S strictly inside ({x}, {y})")
        pairs.append(choice)
    return Descriptor(sigma.values, tuple(pairs))


# --------------------------------------------------------------------------
# ball covers


@dataclass(frozen=True)
class BallCover:
    """Union of open discs ``|w - center|^2 < radius_sq``."""

    balls: tuple[tuple[GaussianRational, Fraction], ...]

    def __post_init__(self):
        balls = tuple((GaussianRational.coerce(c), as_fraction(r)) for c, r in self.balls)
        if not balls:
            raise ValueError("a ball cover needs at least one ball")
        if any(r <= 0 for _, r in balls):
            raise ValueError("radii must be positive")
        object.__setattr__(self, "balls", balls)

    def __contains__(self, w) -> bool:
        w = GaussianRational.coerce(w)
        return any((w - c).abs2() < r for c, r in self.balls)

    @property
    def centers(self) -> list[GaussianRational]:
        return [c for c, _ in self.balls]


def difference_cover(delta: Descriptor, eps) -> BallCover:
    """Discs of radius ``2 eps`` around 0 and around both signs of every step
    ``z_i - z_{i+1}``."""
    eps = as_fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    rsq = (COVER_RADIUS_FACTOR * eps) ** 2
    balls = [(GaussianRational(0), rsq)]
    for a, b in zip(delta.z, delta.z[1:]):
        balls.append((a - b, rsq))
        balls.append((b - a, rsq))
    return BallCover(tuple(balls))


# --------------------------------------------------------------------------
# real-part gaps


@dataclass(frozen=True)
class GapHypothesis:
    """``F`` lies in ``B(0;1)`` plus at most ``r`` discs ``B(w_k; 1/(3r))``
    with ``w_0 = +-2``; ``others`` lists ``w_1, ...`` when known."""

    r: int
    w0: GaussianRational
    others: tuple[GaussianRational, ...] = ()

    @property
    def centers(self) -> tuple[GaussianRational, ...]:
        return (GaussianRational.coerce(self.w0),) + tuple(GaussianRational.coerce(w) for w in self.others)

    @property
    def small_radius_sq(self) -> Fraction:
        return Fraction(1, 9 * self.r * self.r)


def _check_values(F: Sequence[GaussianRational], hyp: GapHypothesis) -> None:
    rs = hyp.small_radius_sq
    w0 = hyp.centers[0]
    if not any(v.abs2() < 1 for v in F):
        raise DomainError("hypothesis violated", "F misses B(0;1)")
    if not any((v - w0).abs2() < rs for v in F):
        raise DomainError("hypothesis violated", "F misses B(w0;1/(3r))")
    for v in F:
        if v.abs2() < 1 or any((v - w).abs2() < rs for w in hyp.centers):
            continue
        raise DomainError("hypothesis violated", f"value {v} outside the allowed discs")


def _check_cover(cover: BallCover, hyp: GapHypothesis) -> None:
    R = Fraction(1, 3 * hyp.r)
    w0 = hyp.centers[0]

    def inside(c, rho_sq, w, big) -> bool:
        rho = sqrt_upper(rho_sq)
        return rho <= big and (c - w).abs2() <= (big - rho) ** 2

    def meets(c, rho_sq, w, big) -> bool:
        return (c - w).abs2() < (big + sqrt_lower(rho_sq)) ** 2

    if not any(meets(c, r, GaussianRational(0), 1) for c, r in cover.balls):
        raise DomainError("hypothesis violated", "cover misses B(0;1)")
    if not any(meets(c, r, w0, R) for c, r in cover.balls):
        raise DomainError("hypothesis violated", "cover misses B(w0;1/(3r))")
    for c, r in cover.balls:
        if inside(c, r, GaussianRational(0), 1) or any(inside(c, r, w, R) for w in hyp.centers):
            continue
        raise DomainError("hypothesis violated", f"ball around {c} leaves the allowed discs")


def _validate(hyp: GapHypothesis) -> None:
    if not isinstance(hyp.r, int) or hyp.r < 1:
        raise DomainError("hypothesis violated", "r must be a positive integer")
    if hyp.centers[0] not in (GaussianRational(2), GaussianRational(-2)):
        raise DomainError("hypothesis violated", "w0 must be +2 or -2")
    if len(hyp.centers) > hyp.r:
        raise DomainError("hypothesis violated", "more than r small discs")


def _widest_gap(gaps: list[tuple[Fraction, Fraction]]) -> Fraction | None:
    if not gaps:
        return None
    lo, hi = max(gaps, key=lambda g: (g[1] - g[0], -g[0]))
    return (lo + hi) / 2


def re_gap(F: Union[Sequence[GaussianRational], BallCover], hyp: GapHypothesis | None = None) -> Fraction | None:
    """Midpoint of the widest gap in the real parts of ``F``, or ``None``.

    ``F`` is either a finite list of values or a :class:`BallCover`
    standing for the union of its discs.  The returned ``b`` is never a
    real part of an element of F and has elements of F on both sides.
    """
    if hyp is not None:
        _validate(hyp)
    if isinstance(F, BallCover):
        if hyp is not None:
            _check_cover(F, hyp)
        spans = sorted((c.re - sqrt_upper(r), c.re + sqrt_upper(r)) for c, r in F.balls)
        merged = [list(spans[0])]
        for lo, hi in spans[1:]:
            if lo < merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        gaps = [(a[1], b[0]) for a, b in zip(merged, merged[1:])]
        return _widest_gap(gaps)
    values = [GaussianRational.coerce(v) for v in F]
    if hyp is not None:
        _check_values(values, hyp)
    reals = sorted({v.re for v in values})
    return _widest_gap(list(zip(reals, reals[1:])))
