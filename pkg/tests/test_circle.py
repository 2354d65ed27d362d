from fractions import Fraction as Q

from hypothesis import given
from hypothesis import strategies as st

from ordalg.circle import UNMET, PiecewiseFn, density_demo, normalize_j, psi, psi_inv
from ordalg.exact import GaussianRational as G
from ordalg.orderspace import MINUS, PLUS, Point
from ordalg.stepcalc import NiceSet, StepFunction, norm_sq
from strategies import step_functions


def test_transfer_of_a_single_jump():
    g = psi(StepFunction.jump(Q(1, 3), 0, 4))
    assert g.cuts == (Q(1, 3),) and g.arcs == (G(0), G(4))
    assert g.at(Q(1, 3)) == 2 and g.at(0) == 2
    assert g.at(Q(1, 6)) == 0 and g.at(Q(1, 2)) == 4


def test_constants():
    assert psi(StepFunction.constant(3)) == PiecewiseFn.constant(3)
    assert PiecewiseFn.constant(3).at(Q(2, 7)) == 3


def test_normalization():
    assert normalize_j([Q(1, 3)], [0, 4], [7, 7]).point_values[1] == 2
    g = normalize_j([Q(1, 3)], [0, 4])
    assert normalize_j(g.cuts, g.arcs, g.point_values) == g
    assert normalize_j([Q(1, 3)], [5, 5]) == PiecewiseFn.constant(5)


def test_density_demo_extracts_at_one_third():
    cuts = [*NiceSet.dyadics(64).coords, Q(1, 3)]
    gen = psi(StepFunction(sorted(cuts), range(len(cuts) + 1)))
    report = density_demo([gen])
    assert report.extracted == [Q(1, 3)]
    assert report.message == "1 of 1 targets yield an idempotent"


def test_density_demo_without_cuts():
    report = density_demo([PiecewiseFn.constant(1)])
    assert report.runs == () and report.message == UNMET


def test_density_demo_batch():
    qs = [Q(k, 7) for k in range(1, 7)]
    cuts = sorted({*NiceSet.dyadics(64).coords, *qs})
    gen = psi(StepFunction(cuts, [k % 3 for k in range(len(cuts) + 1)]))
    report = density_demo([gen])
    assert report.extracted == qs


@given(step_functions(5, 32), step_functions(5, 32))
def test_transfer_is_an_isometric_ring_map(f, g):
    pf, pg = psi(f), psi(g)
    assert psi_inv(pf) == f
    assert psi(f * g) == pf * pg and psi(f + g) == pf + pg
    assert norm_sq(f) == pf.ess_sup_sq() == pf.sup_sq()


@given(step_functions(5, 32))
def test_cut_values_are_averages_of_the_two_sides(f):
    g = psi(f)
    for b in f.breaks:
        assert g.at(b) == (f(Point(b, MINUS)) + f(Point(b, PLUS))) / 2
    assert g.at(0) == (f.values[0] + f.values[-1]) / 2
