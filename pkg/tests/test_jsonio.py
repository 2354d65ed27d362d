import json
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordalg import jsonio, samples
from ordalg.circle import psi
from ordalg.descriptors import GapHypothesis, difference_cover
from ordalg.errors import MalformedInput
from ordalg.exact import GaussianRational as G
from ordalg.finalg import annihilator_measure
from ordalg.idempotents import extract_idempotent
from ordalg.ntip import ntip_run
from ordalg.oracles import BreakpointsOracle, FinAlgOracle, PullbackOracle
from ordalg.orderspace import MINUS, Point
from ordalg.runge import Disc, indicator_poly
from ordalg.stepcalc import Measure, NiceSet, StepFunction


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


def _round_trip(obj, to_json, from_json):
    data = to_json(obj)
    text = jsonio.dumps(data)
    assert _no_floats(json.loads(text))
    back = from_json(jsonio.loads(text))
    assert to_json(back) == data
    return back


@given(st.integers(0, 2**32))
def test_round_trips_of_random_objects(seed):
    rng = random.Random(seed)
    sp = samples.space(rng)
    assert _round_trip(sp, jsonio.space_to_json, jsonio.space_from_json) == sp
    S = samples.closed_set(rng, sp)
    assert _round_trip(S, jsonio.closed_set_to_json, jsonio.closed_set_from_json) == S
    f = samples.step_function(rng)
    assert _round_trip(f, jsonio.step_to_json, jsonio.step_from_json) == f
    d = samples.descriptor(rng)
    assert _round_trip(d, jsonio.descriptor_to_json, jsonio.descriptor_from_json) == d
    c = difference_cover(d, Q(1, rng.randint(2, 9)))
    assert _round_trip(c, jsonio.cover_to_json, jsonio.cover_from_json) == c
    A = samples.algebra(rng, with_domain=rng.random() < 0.5)
    assert _round_trip(A, jsonio.algebra_to_json, jsonio.algebra_from_json) == A
    g = samples.step_function(rng)
    mu = annihilator_measure(A, g)
    if mu is not None:
        assert _round_trip(mu, jsonio.measure_to_json, jsonio.measure_from_json) == mu
    pf = psi(f)
    assert _round_trip(pf, jsonio.piecewise_to_json, jsonio.piecewise_from_json) == pf


def test_round_trip_of_fixed_objects():
    oracles = [BreakpointsOracle(NiceSet.dyadics(8, [Q(1, 3)])),
               PullbackOracle(((Q(1, 4), Q(1, 2)),)),
               FinAlgOracle(samples.algebra(random.Random(3)))]
    for o in oracles:
        assert _round_trip(o, jsonio.oracle_to_json, jsonio.oracle_from_json) == o
    hyp = GapHypothesis(2, G(-2), (G(1, 1),))
    assert _round_trip(hyp, jsonio.hypothesis_to_json, jsonio.hypothesis_from_json) == hyp
    w = indicator_poly([Disc(0, Q(1, 2))], [Disc(3, Q(1, 2))], Q(1, 10**4), 40)
    assert _round_trip(w, jsonio.witness_to_json, jsonio.witness_from_json) == w
    h = StepFunction((Q(21, 64), Q(1, 3)), (0, -2, 0))
    cert = extract_idempotent(h, -1, with_witness=True)
    assert _round_trip(cert, jsonio.certificate_to_json, jsonio.certificate_from_json) == cert
    discs = [Disc(0, Q(1, 2)), Disc(G(3, 1), 0)]
    assert _round_trip(discs, jsonio.discs_to_json, jsonio.discs_from_json) == discs
    mu = Measure.atom(Point(Q(1, 3), MINUS), G(1, -1))
    assert _round_trip(mu, jsonio.measure_to_json, jsonio.measure_from_json) == mu


def test_trace_round_trip():
    t = ntip_run(BreakpointsOracle(NiceSet.dyadics(64, [Q(1, 3)])), NiceSet.dyadics(64), Q(1, 3))
    assert _round_trip(t, jsonio.trace_to_json, jsonio.trace_from_json) == t


def test_floats_are_rejected():
    with pytest.raises(MalformedInput):
        jsonio.loads('{"breaks": [0.5], "values": ["0", "1"]}')
    with pytest.raises(MalformedInput):
        jsonio.loads('{"x": NaN}')


def test_error_paths_name_the_field():
    with pytest.raises(MalformedInput) as exc:
        jsonio.step_from_json({"breaks": ["1/2", "x"], "values": ["0", "1", "2"]})
    assert exc.value.where == "$.breaks[1]"
    with pytest.raises(MalformedInput) as exc:
        jsonio.step_from_json({"breaks": ["1/2"]})
    assert exc.value.where == "$.values"
    with pytest.raises(MalformedInput) as exc:
        jsonio.loads('{"a": }', "f.json")
    assert exc.value.where.startswith("f.json:1:")


def test_invalid_objects_are_malformed():
    with pytest.raises(MalformedInput):
        jsonio.step_from_json({"breaks": ["3/2"], "values": ["0", "1"]})
    with pytest.raises(MalformedInput):
        jsonio.space_from_json({"kind": "circle"})
    with pytest.raises(MalformedInput):
        jsonio.rational_from_json("1/0")


def test_nice_set_shorthand():
    S = jsonio.nice_from_json({"dyadicMaxDenominator": 8, "coords": ["1/3"]})
    assert S == NiceSet.dyadics(8, [Q(1, 3)])
