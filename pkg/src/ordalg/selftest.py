"""Self-test: quick example fixtures, or the full acceptance suite."""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Callable

from . import acceptance
from .circle import PiecewiseFn, density_demo, normalize_j, psi
from .descriptors import Descriptor, GapHypothesis, build_descriptor, difference_cover, matches, re_gap
from .errors import DomainError
from .exact import GaussianRational as G
from .finalg import annihilator_measure, classes, contains, restrict_algebra, saturate
from .idempotents import extract_idempotent
from .ntip import ChainBounds, build_nice_chain, ntip_run
from .oracles import BreakpointsOracle, FinAlgOracle
from .orderspace import (
    MINUS,
    PLUS,
    ClosedInterval,
    ClosedSet,
    Cmp,
    DoubleArrowFull,
    DoubleArrowMinus,
    FiniteChain,
    Point,
    SinglePoint,
    SolidSegment,
    cb_derivative,
    compare_points,
    contains_cantor,
    is_neighbor_pair,
    kernel,
)
from .runge import Disc, indicator_poly
from .stepcalc import Measure, NiceSet, StepFunction, integrate, jmp, norm_sq, restrict, support

P = Point
FLIP = StepFunction.jump(Q(1, 3), -1, 1)
HALF = ClosedSet([ClosedInterval(P(0, PLUS), P(Q(1, 2), MINUS))])
WHOLE = DoubleArrowFull().whole()


def _raises(fn: Callable[[], object], clause: str | None = None) -> bool:
    try:
        fn()
    except DomainError as exc:
        return clause is None or exc.clause == clause
    except ValueError:
        return clause is None
    return False


def _fixtures() -> list[tuple[str, Callable[[], bool]]]:
    A_flip = saturate([FLIP])
    delta = Descriptor((G(-1), G(1)), (Q(5, 16), Q(3, 8)))
    h = StepFunction((Q(21, 64), Q(1, 3)), (0, -2, 0))
    chain5 = FiniteChain(5)
    return [
        ("pair order", lambda: compare_points(P(Q(1, 3), MINUS), P(Q(1, 3), PLUS)) == Cmp.LESS),
        ("endpoint order", lambda: compare_points(P(0, PLUS), P(1, MINUS)) == Cmp.LESS),
        ("coordinate order", lambda: compare_points(P(Q(1, 2), PLUS), P(Q(2, 3), MINUS)) == Cmp.LESS),
        ("neighbor pair", lambda: is_neighbor_pair(P(Q(1, 3), MINUS), P(Q(1, 3), PLUS))),
        ("non-neighbors", lambda: not is_neighbor_pair(P(Q(1, 3), PLUS), P(Q(1, 2), MINUS))),
        ("undoubled pair rejected", lambda: _raises(
            lambda: is_neighbor_pair(P(Q(1, 3), MINUS), P(Q(1, 3), PLUS), DoubleArrowMinus(frozenset({Q(1, 3)}))))),
        ("derivative drops isolated point", lambda: cb_derivative(
            HALF | ClosedSet([SinglePoint(P(Q(3, 4), MINUS))])) == HALF),
        ("finite chain derivative", lambda: not cb_derivative(chain5.whole(), chain5)),
        ("interval is perfect", lambda: cb_derivative(WHOLE) == WHOLE),
        ("finite chain kernel", lambda: not kernel(chain5.whole(), chain5)),
        ("kernel after one step", lambda: kernel(HALF | ClosedSet([SinglePoint(P(Q(3, 4), MINUS))])) == HALF),
        ("no Cantor in the double arrow", lambda: not contains_cantor(WHOLE)),
        ("solid carries a Cantor set", lambda: contains_cantor(ClosedSet([SolidSegment(Q(1, 4), Q(1, 2))]))),
        ("no Cantor in a chain", lambda: not contains_cantor(FiniteChain(7).whole(), FiniteChain(7))),
        ("complementary indicators", lambda: StepFunction.indicator(0, Q(1, 2)) + StepFunction.indicator(Q(1, 2), 1)
         == StepFunction.constant(1)),
        ("square of a sign", lambda: FLIP * FLIP == StepFunction.constant(1)),
        ("norm of 3+4i", lambda: norm_sq(StepFunction.constant(G(3, 4))) == 25),
        ("norm of h", lambda: norm_sq(h) == 4),
        ("norm on a subset", lambda: norm_sq(FLIP, ClosedSet([ClosedInterval(P(0, PLUS), P(Q(11, 32), MINUS))]))
         == 1),
        ("restrict to whole space", lambda: restrict(FLIP, WHOLE).func == FLIP),
        ("restrict past the jump", lambda: restrict(
            FLIP, ClosedSet([ClosedInterval(P(Q(1, 2), PLUS), P(1, MINUS))])).func == StepFunction.constant(1)),
        ("jump set of a sign", lambda: len(jmp(FLIP, Q(1, 3))) == 4),
        ("jump set of a constant", lambda: len(jmp(StepFunction.constant(5), Q(1, 3))) == 2),
        ("small jumps ignored", lambda: jmp(StepFunction((Q(1, 3), Q(2, 3)), (0, 2, Q(11, 5))), Q(1, 3)).coords
         == (Q(1, 3),)),
        ("point evaluation measure", lambda: integrate(FLIP, Measure.atom(P(Q(1, 3), PLUS))) == 1),
        ("balanced atoms kill constants", lambda: integrate(
            StepFunction.constant(7), Measure.atom(P(Q(1, 4), PLUS)) - Measure.atom(P(Q(1, 2), PLUS))) == 0),
        ("zero measure support", lambda: not support(Measure())),
        ("two atoms, two points", lambda: len(support(
            Measure.atom(P(Q(1, 4), PLUS)) + Measure.atom(P(Q(1, 2), PLUS)))) == 2),
        ("saturate a sign", lambda: A_flip.dimension == 2),
        ("saturate nothing", lambda: saturate([]).dimension == 1),
        ("contains a combination", lambda: contains(A_flip, 3 - 2 * FLIP)),
        ("constants belong", lambda: contains(A_flip, StepFunction.constant(G(1, 1)))),
        ("constants-only classes", lambda: classes(saturate([])) == [WHOLE]),
        ("restrict to one class", lambda: restrict_algebra(A_flip, classes(A_flip)[0]).dimension == 1),
        ("restrict to everything", lambda: restrict_algebra(A_flip, WHOLE).classes == A_flip.classes),
        ("member has no annihilator", lambda: annihilator_measure(A_flip, FLIP) is None),
        ("descriptor of a constant", lambda: build_descriptor(StepFunction.constant(1), NiceSet.dyadics(64)).pairs
         == ()),
        ("value mismatch", lambda: not matches(delta, StepFunction.jump(Q(11, 32), 1, -1))),
        ("cover for eps 1/6", lambda: [r for _, r in difference_cover(delta, Q(1, 6)).balls] == [Q(1, 9)] * 3),
        ("cover without jumps", lambda: len(difference_cover(Descriptor((G(1),), ()), Q(1, 6)).balls) == 1),
        ("single point has no gap", lambda: re_gap([G(0)]) is None),
        ("gap for 0 and -2", lambda: re_gap([G(0), G(-2)], GapHypothesis(1, G(-2))) == -1),
        ("constant has trivial sublevel", lambda: not extract_idempotent(StepFunction.constant(5), 0).nontrivial),
        ("b on the range", lambda: _raises(lambda: extract_idempotent(h, -2), "b hits the range")),
        ("point pair witness", lambda: indicator_poly([Disc(0, 0)], [Disc(3, 0)], Q(1, 100), 4).coefficients
         == (G(1), G(Q(-1, 3)))),
        ("empty K1 witness", lambda: indicator_poly([Disc(0, 1)], [], Q(1, 100), 4).coefficients == (G(1),)),
        ("q in S rejected", lambda: _raises(lambda: ntip_run(
            BreakpointsOracle(NiceSet.dyadics(64)), NiceSet.dyadics(64), Q(1, 2)))),
        ("chain for constants", lambda: build_nice_chain(FinAlgOracle(saturate([]))) == NiceSet.dyadics(8)),
        ("zero stages", lambda: build_nice_chain(BreakpointsOracle(NiceSet.dyadics(64)), ChainBounds(stages=0))
         == NiceSet.dyadics(8)),
        ("constant on the circle", lambda: psi(StepFunction.constant(3)) == PiecewiseFn.constant(3)),
        ("forced cut value", lambda: normalize_j([Q(1, 3)], [0, 4], [7, 7]).point_values == (G(2), G(2))),
        ("normalization is idempotent", lambda: normalize_j(
            normalize_j([Q(1, 3)], [0, 4]).cuts, normalize_j([Q(1, 3)], [0, 4]).arcs)
         == normalize_j([Q(1, 3)], [0, 4])),
        ("constants have no discontinuities", lambda: density_demo([PiecewiseFn.constant(1)]).runs == ()),
    ]


def quick() -> list[tuple[str, bool]]:
    out = []
    for name, check in _fixtures():
        try:
            ok = bool(check())
        except Exception:  # a crashing fixture is a failing fixture
            ok = False
        out.append((name, ok))
    return out


def run(level: str = "quick") -> tuple[int, list[str]]:
    """Return ``(exit status, report lines)``."""
    if level == "quick":
        results = quick()
        lines = [f"[{'PASS' if ok else 'FAIL'}] {name}" for name, ok in results]
        failed = [name for name, ok in results if not ok]
        lines.append(f"{len(results) - len(failed)} of {len(results)} fixtures passed")
    elif level == "full":
        checks = acceptance.run_all()
        lines = [c.line() for c in checks]
        failed = [c.name for c in checks if not c.ok]
        lines.append(f"{len(checks) - len(failed)} of {len(checks)} checks passed")
    else:
        raise ValueError(f"unknown level {level!r}")
    if failed:
        lines.append("failed: " + ", ".join(failed))
    return (1 if failed else 0), lines
