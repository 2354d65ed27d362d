from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordalg.orderspace import (
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
    contains_point,
    derivative_rank,
    is_neighbor_pair,
    is_subset,
    kernel,
)
from strategies import DEN, closed_sets, minus_spaces

P = Point
HALF = ClosedSet([ClosedInterval(P(0, PLUS), P(Q(1, 2), MINUS))])
HALF_AND_POINT = HALF | ClosedSet([SinglePoint(P(Q(3, 4), MINUS))])
WHOLE = DoubleArrowFull().whole()


def test_pair_order_examples():
    assert compare_points(P(Q(1, 3), MINUS), P(Q(1, 3), PLUS)) == Cmp.LESS
    assert compare_points(P(0, PLUS), P(1, MINUS)) == Cmp.LESS
    assert compare_points(P(Q(1, 2), PLUS), P(Q(2, 3), MINUS)) == Cmp.LESS
    assert compare_points(P(Q(2, 3), MINUS), P(Q(2, 3), MINUS)) == Cmp.EQUAL


def test_endpoints_are_never_doubled():
    with pytest.raises(ValueError):
        P(0, MINUS)
    with pytest.raises(ValueError):
        P(1, PLUS)


def test_neighbor_pairs():
    assert is_neighbor_pair(P(Q(1, 3), MINUS), P(Q(1, 3), PLUS))
    assert not is_neighbor_pair(P(Q(1, 3), PLUS), P(Q(1, 2), MINUS))
    with pytest.raises(ValueError):
        is_neighbor_pair(P(Q(1, 3), MINUS), P(Q(1, 3), PLUS), DoubleArrowMinus(frozenset({Q(1, 3)})))


def test_neighbor_pairs_in_a_chain():
    ch = FiniteChain(5)
    assert is_neighbor_pair(ch.element(1), ch.element(2), ch)
    assert not is_neighbor_pair(ch.element(1), ch.element(3), ch)


def test_derivative_examples():
    assert cb_derivative(HALF_AND_POINT) == HALF
    assert not cb_derivative(FiniteChain(5).whole(), FiniteChain(5))
    assert cb_derivative(WHOLE) == WHOLE


def test_kernel_examples():
    assert not kernel(FiniteChain(5).whole(), FiniteChain(5))
    assert kernel(HALF_AND_POINT) == HALF
    assert derivative_rank(HALF_AND_POINT) == 1


def test_cantor_examples():
    assert not contains_cantor(WHOLE)
    assert contains_cantor(ClosedSet([SolidSegment(Q(1, 4), Q(1, 2))]))
    assert not contains_cantor(FiniteChain(7).whole(), FiniteChain(7))


def test_canonical_merge():
    a = ClosedSet([ClosedInterval(P(Q(1, 4), PLUS), P(Q(1, 2), MINUS)),
                   ClosedInterval(P(Q(1, 2), PLUS), P(Q(3, 4), MINUS))])
    assert a == ClosedSet([ClosedInterval(P(Q(1, 4), PLUS), P(Q(3, 4), MINUS))])


# Independent isolation oracle.  Coordinates of generated sets lie on the
# 1/DEN grid, so a probe at distance 1/(4 DEN) falls strictly between grid
# points: it lies in S exactly when S fills that whole side of x.

DELTA = Q(1, 4 * DEN)


def _accumulates(S, x, side):
    probe = x - DELTA if side == MINUS else x + DELTA
    return 0 < probe < 1 and contains_point(S, P(probe, PLUS))


def _probe_derivative_member(S, p, space):
    if p not in S:
        return False
    if space.is_doubled(p.x):
        return _accumulates(S, p.x, p.side)
    return _accumulates(S, p.x, MINUS) or _accumulates(S, p.x, PLUS)


def _test_points(space):
    out = []
    for k in range(DEN + 1):
        x = Q(k, DEN)
        for side in (MINUS, PLUS):
            try:
                out.append(space.validate(P(x, side)))
            except ValueError:
                pass
        if k < DEN:
            out.append(P(x + Q(1, 2 * DEN), PLUS))
    return out


@given(st.one_of(st.just(DoubleArrowFull()), minus_spaces).flatmap(lambda sp: st.tuples(st.just(sp), closed_sets(sp))))
def test_derivative_matches_probe_oracle(case):
    sp, S = case
    D = cb_derivative(S, sp)
    for p in _test_points(sp):
        assert (p in D) == _probe_derivative_member(S, p, sp), p


@given(closed_sets(solids=True))
def test_kernel_is_perfect_idempotent_subset(S):
    K = kernel(S)
    assert kernel(K) == K
    assert cb_derivative(K) == K
    assert is_subset(K, S)


@given(closed_sets())
def test_scattered_iff_empty_kernel(S):
    # a finite presentation without solids has rank at most one
    current = S
    for _ in range(3):
        current = cb_derivative(current)
    assert (not current) == (not kernel(S))
    assert derivative_rank(S) <= 1


@given(closed_sets(solids=True))
def test_cantor_iff_solid(S):
    assert contains_cantor(S) == bool(S.solids)


@given(st.integers(1, 9))
def test_finite_chains_are_scattered(n):
    ch = FiniteChain(n)
    assert not kernel(ch.whole(), ch)
    assert not contains_cantor(ch.whole(), ch)
