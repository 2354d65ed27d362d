from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordalg.errors import DomainError
from ordalg.exact import GaussianRational as G
from ordalg.idempotents import extract_idempotent
from ordalg.orderspace import MINUS, PLUS, ClosedInterval, ClosedSet, Point
from ordalg.stepcalc import StepFunction
from strategies import rationals, step_functions

P = Point
H_PIPE = StepFunction((Q(21, 64), Q(1, 3)), (0, -2, 0))


def test_pipeline_sublevel_set():
    cert = extract_idempotent(H_PIPE, -1)
    assert cert.H == ClosedSet([ClosedInterval(P(Q(21, 64), PLUS), P(Q(1, 3), MINUS))])
    assert cert.nontrivial and cert.source_norm_sq == 4
    assert cert.indicator == StepFunction((Q(21, 64), Q(1, 3)), (0, 1, 0))


def test_constant_gives_trivial_idempotent():
    cert = extract_idempotent(StepFunction.constant(5), 0)
    assert not cert.H and not cert.nontrivial


def test_b_on_the_range():
    with pytest.raises(DomainError) as exc:
        extract_idempotent(H_PIPE, -2)
    assert exc.value.clause == "b hits the range"


def test_witness_of_the_pipeline():
    cert = extract_idempotent(H_PIPE, -1, with_witness=True)
    assert cert.poly_witness.coefficients == (G(0), G(Q(-1, 2)))


@given(step_functions(4, 16), rationals(-2, 2, 7))
def test_indicator_is_the_sublevel_set(h, b):
    if any(v.re == b for v in h.values):
        return
    cert = extract_idempotent(h, b, with_witness=True)
    ind = cert.indicator
    assert ind * ind == ind
    for lo, hi, v in h.pieces():
        p = P((lo + hi) / 2, PLUS)
        assert ind(p) == (1 if v.re < b else 0)
        assert (p in cert.H) == (v.re < b)
        # the exact witness reproduces the indicator through h
        assert cert.poly_witness(v) == ind(p)
    assert cert.nontrivial == (bool(cert.H) and cert.H != ClosedSet([ClosedInterval(P(0), P(1, MINUS))]))
