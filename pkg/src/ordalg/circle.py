"""Piecewise constant functions on the circle and their transfer to the double arrow.

Angles are rational fractions of a full turn.  A :class:`PiecewiseFn`
takes the value ``arcs[i]`` on the open arc between consecutive cuts
(with an implicit cut at angle 0) and, at every cut, the average of its
two one-sided limits.  :func:`psi` and :func:`psi_inv` identify these
functions with step functions on the double arrow, preserving products
and sup-norms.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exact import GaussianRational, as_fraction
from .ntip import NtipTrace, ntip_run
from .oracles import BreakpointsOracle
from .stepcalc import NiceSet, StepFunction


@dataclass(frozen=True)
class PiecewiseFn:
    cuts: tuple[Fraction, ...]
    arcs: tuple[GaussianRational, ...]
    point_values: tuple[GaussianRational, ...] = field(init=False)

    def __post_init__(self):
        canon = StepFunction(self.cuts, self.arcs)
        vals = canon.values
        points = [(vals[0] + vals[-1]) / 2] + [(a + b) / 2 for a, b in zip(vals, vals[1:])]
        object.__setattr__(self, "cuts", canon.breaks)
        object.__setattr__(self, "arcs", vals)
        object.__setattr__(self, "point_values", tuple(points))

    @classmethod
    def constant(cls, c) -> "PiecewiseFn":
        return cls((), (c,))

    def _arc_index(self, t: Fraction) -> int:
        return bisect_left(self.cuts, t)

    def at(self, t) -> GaussianRational:
        """Value at angle ``t`` (a fraction of a turn)."""
        t = as_fraction(t) % 1
        if t == 0:
            return self.point_values[0]
        i = self._arc_index(t)
        if i < len(self.cuts) and self.cuts[i] == t:
            return self.point_values[i + 1]
        return self.arcs[i]

    def _combine(self, other: "PiecewiseFn", op) -> "PiecewiseFn":
        cuts = sorted(set(self.cuts) | set(other.cuts))
        bounds = [Fraction(0), *cuts, Fraction(1)]
        arcs = [op(self.arcs[self._arc_index(m)], other.arcs[other._arc_index(m)])
                for m in ((lo + hi) / 2 for lo, hi in zip(bounds, bounds[1:]))]
        return PiecewiseFn(tuple(cuts), tuple(arcs))

    def __mul__(self, other: "PiecewiseFn") -> "PiecewiseFn":
        return self._combine(other, lambda a, b: a * b)

    def __add__(self, other: "PiecewiseFn") -> "PiecewiseFn":
        return self._combine(other, lambda a, b: a + b)

    def ess_sup_sq(self) -> Fraction:
        return max(v.abs2() for v in self.arcs)

    def sup_sq(self) -> Fraction:
        return max(v.abs2() for v in self.arcs + self.point_values)


def normalize_j(cuts: Sequence, arcs: Sequence, point_values: Sequence | None = None) -> PiecewiseFn:
    """Discard ``point_values`` in favour of the forced averages and merge
    arcs across cuts where the function is continuous."""
    return PiecewiseFn(tuple(as_fraction(c) for c in cuts), tuple(GaussianRational.coerce(a) for a in arcs))


def psi(f: StepFunction) -> PiecewiseFn:
    return PiecewiseFn(f.breaks, f.values)


def psi_inv(g: PiecewiseFn) -> StepFunction:
    return StepFunction(g.cuts, g.arcs)


UNMET = "no discontinuities; hypothesis of the corollary unmet"


@dataclass(frozen=True)
class DemoRun:
    q: Fraction
    trace: NtipTrace | None
    error: str = ""


@dataclass(frozen=True)
class DensityReport:
    cuts: tuple[Fraction, ...]
    runs: tuple[DemoRun, ...]
    message: str = ""

    @property
    def extracted(self) -> list[Fraction]:
        return [run.q for run in self.runs if run.trace is not None]


def density_demo(gens: Sequence[PiecewiseFn], targets: Sequence | None = None,
                 S: NiceSet | None = None) -> DensityReport:
    """Try to extract a nontrivial idempotent at each target cut.

    The algebra is modelled by the step functions that may jump only at
    the cuts of ``gens``.  ``targets`` defaults to the cuts outside ``S``,
    and ``S`` defaults to the dyadic pairs with denominator at most 64.
    """
    cuts = tuple(sorted({c for g in gens for c in psi_inv(g).breaks}))
    if not cuts:
        return DensityReport((), (), UNMET)
    S = S if S is not None else NiceSet.dyadics(64)
    oracle = BreakpointsOracle(NiceSet(cuts))
    qs = [as_fraction(q) for q in targets] if targets is not None else [c for c in cuts if not S.has_pair(c)]
    runs = []
    for q in qs:
        try:
            runs.append(DemoRun(q, ntip_run(oracle, S, q)))
        except DomainError as exc:
            runs.append(DemoRun(q, None, exc.clause))
    done = sum(run.trace is not None for run in runs)
    return DensityReport(cuts, tuple(runs), f"{done} of {len(runs)} targets yield an idempotent")
