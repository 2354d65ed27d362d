import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordalg import acceptance, descriptors, samples
from ordalg.descriptors import (
    BallCover,
    Descriptor,
    GapHypothesis,
    build_descriptor,
    difference_cover,
    matches,
    re_gap,
)
from ordalg.errors import DomainError
from ordalg.exact import GaussianRational as G
from ordalg.stepcalc import NiceSet, StepFunction
from strategies import gaussians

FLIP = StepFunction.jump(Q(1, 3), -1, 1)
DELTA = Descriptor((G(-1), G(1)), (Q(5, 16), Q(3, 8)))


def test_descriptor_of_the_pipeline_sigma():
    assert build_descriptor(FLIP, NiceSet.dyadics(64)) == DELTA


def test_descriptor_of_a_constant():
    d = build_descriptor(StepFunction.constant(1), NiceSet.dyadics(64))
    assert d.n == 0 and d.pairs == ()


def test_sparse_nice_set():
    with pytest.raises(DomainError) as exc:
        build_descriptor(StepFunction.jump(Q(1, 2), 0, 1), NiceSet())
    assert exc.value.clause == "S too sparse"


def test_matches_examples():
    assert matches(DELTA, StepFunction.jump(Q(11, 32), -1, 1))
    assert not matches(DELTA, StepFunction.jump(Q(1, 4), -1, 1))
    assert not matches(DELTA, StepFunction.jump(Q(11, 32), 1, -1))


def test_cover_examples():
    cover = difference_cover(DELTA, Q(1, 6))
    assert cover.balls == ((G(0), Q(1, 9)), (G(-2), Q(1, 9)), (G(2), Q(1, 9)))
    single = difference_cover(Descriptor((G(5),), ()), Q(1, 6))
    assert single.balls == ((G(0), Q(1, 9)),)


def test_gap_examples():
    assert re_gap([G(0), G(-2)], GapHypothesis(1, G(-2))) == -1
    assert re_gap([G(0)]) is None
    cover = BallCover(((G(0), Q(1)), (G(2), Q(1, 9))))
    assert re_gap(cover, GapHypothesis(1, G(2))) == Q(4, 3)


def test_gap_hypothesis_violations():
    with pytest.raises(DomainError) as exc:
        re_gap([G(0), G(3)], GapHypothesis(1, G(2)))
    assert exc.value.clause == "hypothesis violated"
    with pytest.raises(DomainError):
        re_gap([G(0), G(2)], GapHypothesis(1, G(1)))
    with pytest.raises(DomainError):
        re_gap([G(0), G(2)], GapHypothesis(1, G(2), (G(5),)))


def test_descriptor_validation():
    with pytest.raises(ValueError):
        Descriptor((G(0), G(1)), (Q(1, 2),))
    with pytest.raises(ValueError):
        Descriptor((G(0), G(1)), (Q(1, 2), Q(1, 4)))
    with pytest.raises(ValueError):
        Descriptor((G(0),), (Q(1, 2),))


@given(st.lists(st.integers(1, 63), min_size=1, max_size=4, unique=True), st.data())
def test_built_descriptor_is_met(jumps, data):
    breaks = sorted(Q(k, 64) + Q(1, 192) for k in jumps)
    values = data.draw(st.lists(gaussians(), min_size=len(breaks) + 1, max_size=len(breaks) + 1))
    sigma = StepFunction(breaks, values)
    S = NiceSet.dyadics(256)
    d = build_descriptor(sigma, S)
    assert matches(d, sigma)
    assert all(S.has_pair(b) for b in d.pairs)


def _brute_cover_check(delta, eps, f, g):
    # every piece of the common refinement, probed at its midpoint
    cuts = sorted(set(f.breaks) | set(g.breaks))
    bounds = [Q(0), *cuts, Q(1)]
    cover = difference_cover(delta, eps)
    for lo, hi in zip(bounds, bounds[1:]):
        m = (lo + hi) / 2
        w = f.value_at_coordinate(m) - g.value_at_coordinate(m)
        assert w in cover, (delta, eps, w)


@given(st.integers(0, 2**32))
def test_cover_soundness_brute_force(seed):
    rng = random.Random(seed)
    delta = samples.descriptor(rng)
    eps = Q(1, rng.randint(2, 24))
    f = samples.step_in(rng, delta) + samples.small_step(rng, eps)
    g = samples.step_in(rng, delta) + samples.small_step(rng, eps)
    _brute_cover_check(delta, eps, f, g)


@given(st.integers(0, 2**32))
def test_gap_is_valid_and_widest(seed):
    rng = random.Random(seed)
    F, hyp = acceptance.gap_instance(rng)
    b = re_gap(F, hyp)
    reals = sorted({v.re for v in F})
    widest = max(zip(reals, reals[1:]), key=lambda p: (p[1] - p[0], -p[0]))
    assert b == (widest[0] + widest[1]) / 2
    assert b not in reals and reals[0] < b < reals[-1]


def test_halved_cover_radius_is_unsound(monkeypatch):
    monkeypatch.setattr(descriptors, "COVER_RADIUS_FACTOR", 1)
    with pytest.raises(acceptance.CheckFailed):
        acceptance.cover_soundness()
