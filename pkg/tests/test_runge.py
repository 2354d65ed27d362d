from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordalg.errors import DomainError
from ordalg.exact import GaussianRational as G
from ordalg.runge import Disc, PolyWitness, indicator_poly, interpolating_witness, witness_for_values
from strategies import gaussians

K0 = [Disc(0, Q(1, 2))]
K1 = [Disc(3, Q(1, 2))]


def _rational_circle_points(disc, count):
    """Exact points of the boundary circle: (1-t^2, 2t)/(1+t^2) scaled by r."""
    out = []
    for k in range(count):
        t = Q(2 * k - count, count)
        u = G((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))
        out += [disc.c + u * disc.r, disc.c - u * disc.r]
    return out


def _exact_max_err(w, count):
    worst = Q(0)
    for discs, target in ((K0, 1), (K1, 0)):
        for d in discs:
            for z in _rational_circle_points(d, count) + [d.c]:
                worst = max(worst, (w(z) - target).abs2())
    return worst


def test_point_pair_is_exact():
    w = indicator_poly([Disc(0, 0)], [Disc(3, 0)], Q(1, 10**8), 200)
    assert w.coefficients == (G(1), G(Q(-1, 3))) and w.cert_err_sq == 0


def test_empty_sides():
    assert indicator_poly([Disc(0, 1)], [], Q(1, 100), 4).coefficients == (G(1),)
    assert indicator_poly([], [Disc(0, 1)], Q(1, 100), 4).coefficients == (G(0),)


def test_moderate_tolerance_boundary_samples():
    w = indicator_poly(K0, K1, Q(1, 10**4), 40)
    assert w.degree <= 40 and w.cert_err_sq <= Q(1, 10**4)
    assert _exact_max_err(w, 250) <= w.cert_err_sq


def test_tight_tolerance():
    w = indicator_poly(K0, K1, Q(1, 10**8), 200)
    assert w.degree <= 200 and w.cert_err_sq <= Q(1, 10**8)
    assert _exact_max_err(w, 60) <= w.cert_err_sq


def test_seed_override_keeps_certificate(monkeypatch):
    monkeypatch.setenv("ORDALG_SEED", "7")
    w = indicator_poly(K0, K1, Q(1, 10**4), 40)
    assert w.cert_err_sq <= Q(1, 10**4)
    assert _exact_max_err(w, 100) <= w.cert_err_sq


def test_input_errors():
    with pytest.raises(DomainError) as exc:
        indicator_poly([Disc(0, 1)], [Disc(1, 1)], Q(1, 100), 10)
    assert exc.value.clause == "discs not disjoint"
    with pytest.raises(DomainError) as exc:
        indicator_poly([Disc(0, Q(1, 2))], [Disc(G(0, 3), Q(1, 2))], Q(1, 100), 10)
    assert exc.value.clause == "not Re-separated"
    with pytest.raises(DomainError) as exc:
        indicator_poly(K0, K1, Q(1, 10**8), 4)
    assert exc.value.clause == "degree exhausted"


@settings(max_examples=50)
@given(st.lists(gaussians(3, 4), min_size=1, max_size=6, unique=True), st.data())
def test_lagrange_interpolates(points, data):
    targets = data.draw(st.lists(gaussians(), min_size=len(points), max_size=len(points)))
    w = interpolating_witness(points, targets)
    assert w.degree <= len(points) - 1
    assert [w(p) for p in points] == targets


def test_values_witness():
    w = witness_for_values([G(0), G(-2), G(0, 1)], Q(-1))
    assert [w(v) for v in (G(0), G(-2), G(0, 1))] == [0, 1, 0]


def test_scaled_evaluation():
    w = PolyWitness((G(1), G(2)), center=G(1), scale=Q(2))
    assert w(G(3)) == 3
