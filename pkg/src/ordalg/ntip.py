"""Nontrivial idempotents from a function that separates a neighboring pair.

:func:`ntip_run` takes an algebra oracle, a nice set ``S`` and a pair
coordinate ``q`` outside ``S``.  It produces an exact indicator in the
algebra that is neither 0 nor 1, together with a trace that
:func:`verify_trace` replays step by step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .descriptors import (
    BallCover,
    Descriptor,
    GapHypothesis,
    build_descriptor,
    difference_cover,
    matches,
    re_gap,
)
from .errors import DomainError
from .exact import GaussianRational, as_fraction
from .idempotents import IdempotentCertificate, extract_idempotent
from .oracles import AlgebraOracle
from .orderspace import MINUS, PLUS, ZERO_X, Point
from .stepcalc import NiceSet, StepFunction, jmp, norm_sq

TAU_SEARCH_CAP = 4096
LARGE_CENTER_SQ = Fraction(4, 9)


@dataclass(frozen=True)
class NtipTrace:
    q: Fraction
    S: NiceSet
    f: StepFunction
    sigma: StepFunction
    delta: Descriptor
    tau: StepFunction
    g: StepFunction
    h: StepFunction
    r: int
    eps: Fraction
    cover: BallCover
    hypothesis: GapHypothesis
    b: Fraction
    result: IdempotentCertificate


@dataclass(frozen=True)
class Verdict:
    ok: bool
    clause: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _round_values(f: StepFunction, step: Fraction) -> StepFunction:
    def snap(v: GaussianRational) -> GaussianRational:
        return GaussianRational(round(v.re / step) * step, round(v.im / step) * step)
    return f.map_values(snap)


def _tau_candidates(delta: Descriptor, S: NiceSet) -> Iterator[StepFunction]:
    windows = [S.inside(*delta.window(i)) for i in range(1, delta.n + 1)]
    for breaks in itertools.product(*windows):
        yield StepFunction(breaks, delta.z)


def _hypothesis(sigma: StepFunction, tau: StepFunction, q: Fraction, r: int) -> GapHypothesis:
    diff = sigma - tau
    w0 = next(v for v in (diff(Point(q, MINUS)), diff(Point(q, PLUS))) if v)
    others = sorted({v for v in diff.values if v and v != w0 and v.abs2() > LARGE_CENTER_SQ},
                    key=lambda v: (v.re, v.im))
    return GapHypothesis(r, w0, tuple(others))


def ntip_run(oracle: AlgebraOracle, S: NiceSet, q, sigma_rule: str = "exact",
             tau_cap: int = TAU_SEARCH_CAP) -> NtipTrace:
    """Run the extraction for the pair at ``q``.

    ``sigma_rule`` is ``"exact"`` (take the step approximant equal to f) or
    ``"rounded"`` (snap the values of f to a grid finer than the allowed
    error, so that f and sigma genuinely differ).
    """
    q = as_fraction(q)
    if S.has_pair(q):
        raise DomainError("q must not lie in S", f"the pair at {q} belongs to S")
    f = oracle.separate_pair(q)
    R = jmp(f, Fraction(1, 3))
    if not R.has_pair(q):
        raise DomainError("oracle cannot jump at q", "separating function lost its jump")
    r = R.pair_count()
    eps = Fraction(1, 6 * r)
    if sigma_rule == "exact":
        sigma = f
    elif sigma_rule == "rounded":
        sigma = _round_values(f, Fraction(1, 12 * r))
    else:
        raise ValueError(f"unknown sigma rule {sigma_rule!r}")
    delta = build_descriptor(sigma, S)

    for tau in itertools.islice(_tau_candidates(delta, S), tau_cap):
        found = oracle.approx(tau, eps)
        if found:
            g = found.g
            break
    else:
        raise DomainError("no matching τ in S", "deepen the nice set")

    h = f - g
    cover = difference_cover(delta, eps)
    hyp = _hypothesis(sigma, tau, q, r)
    try:
        b = re_gap(h.values, hyp)
    except DomainError as exc:
        raise DomainError("gap not found", exc.detail or exc.clause) from exc
    if b is None:
        raise DomainError("gap not found", "real parts of h are connected")
    result = extract_idempotent(h, b)
    return NtipTrace(q, S, f, sigma, delta, tau, g, h, r, eps, cover, hyp, b, result)


def verify_trace(t: NtipTrace, oracle: AlgebraOracle | None = None) -> Verdict:
    """Replay every inequality recorded in ``t``; name the first that fails."""
    lo, hi = Point(t.q, MINUS), Point(t.q, PLUS)
    eps_sq = t.eps * t.eps
    checks = [
        ("q in S", lambda: not t.S.has_pair(t.q)),
        ("f does not separate q", lambda: t.f(lo) == -1 and t.f(hi) == 1),
        ("r mismatch", lambda: t.r >= 1 and t.r == jmp(t.f, Fraction(1, 3)).pair_count()),
        ("eps mismatch", lambda: t.eps == Fraction(1, 6 * t.r)),
        ("sigma too far", lambda: norm_sq(t.f - t.sigma) < eps_sq),
        ("descriptor pairs not in S", lambda: all(t.S.has_pair(b) for b in t.delta.pairs)),
        ("sigma does not match", lambda: matches(t.delta, t.sigma)),
        ("tau does not match", lambda: matches(t.delta, t.tau)),
        ("endpoints not in S", lambda: all(t.S.has_pair(a) for a in t.tau.breaks)),
        ("g too far", lambda: norm_sq(t.g - t.tau) < eps_sq),
        ("h mismatch", lambda: t.h == t.f - t.g),
        ("cover mismatch", lambda: t.cover == difference_cover(t.delta, t.eps)),
        ("cover radius", lambda: all(rsq == Fraction(1, 9 * t.r * t.r) for _, rsq in t.cover.balls)),
        ("h outside cover", lambda: all(v in t.cover for v in t.h.values)),
        ("too many large centers", lambda: sum(
            (a - b).abs2() > LARGE_CENTER_SQ for a, b in zip(t.delta.z, t.delta.z[1:])) <= t.r),
        ("h(0) outside B(0;1)", lambda: t.h(ZERO_X).abs2() < 1),
        ("w0 not +-2", lambda: t.hypothesis.w0 in (GaussianRational(2), GaussianRational(-2))),
        ("b hits/escapes gap", lambda: all(v.re != t.b for v in t.h.values)
         and min(v.re for v in t.h.values) < t.b < max(v.re for v in t.h.values)),
        ("gap choice", lambda: re_gap(t.h.values, t.hypothesis) == t.b),
        ("result mismatch", lambda: _same_certificate(extract_idempotent(t.h, t.b), t.result)),
        ("result trivial", lambda: t.result.nontrivial),
        ("not idempotent", lambda: t.result.indicator * t.result.indicator == t.result.indicator),
    ]
    if oracle is not None:
        checks.append(("oracle membership", lambda: oracle.contains(t.f) and oracle.contains(t.g)
                       and oracle.contains(t.result.indicator)))
    for clause, check in checks:
        try:
            ok = check()
        except DomainError:
            ok = False
        if not ok:
            return Verdict(False, clause)
    return Verdict(True)


def _same_certificate(a: IdempotentCertificate, b: IdempotentCertificate) -> bool:
    return (a.H == b.H and a.indicator == b.indicator and a.b == b.b
            and a.source_norm_sq == b.source_norm_sq and a.nontrivial == b.nontrivial)


# --------------------------------------------------------------------------
# finite stages of a nice chain


@dataclass(frozen=True)
class ChainBounds:
    max_denominator: int = 8
    max_jumps: int = 1
    max_value_height: int = 1
    max_eps_denominator: int = 3
    stages: int = 1


def _bisection_key(x: Fraction) -> tuple:
    den = x.denominator
    dyadic = den & (den - 1) == 0
    return (0, den, x) if dyadic else (1, 0, x)


def _place(lo: Fraction, hi: Fraction, S: NiceSet, oracle: AlgebraOracle) -> Fraction:
    """Jump coordinate for a witness inside the window ``(lo, hi)``."""
    in_s = sorted(S.inside(lo, hi), key=_bisection_key)
    for x in in_s:
        if oracle.can_jump_at(x):
            return x
    allowed = oracle.jump_points()
    if allowed is not None:
        inside = sorted((x for x in allowed if lo < x < hi), key=_bisection_key)
        if inside:
            return inside[0]
    if in_s:
        return in_s[0]
    return (lo + hi) / 2


def _value_grid(height: int) -> list[GaussianRational]:
    pts = [GaussianRational(a, b) for a in range(-height, height + 1) for b in range(-height, height + 1)]
    return sorted(pts, key=lambda v: (max(abs(v.re), abs(v.im)), v.re, v.im))


def build_nice_chain(oracle: AlgebraOracle, bounds: ChainBounds = ChainBounds()) -> NiceSet:
    """Finite stages ``S_0 <= S_1 <= ...`` of a nice set adapted to the oracle.

    ``S_0`` holds the dyadic pairs with denominator at most
    ``max_denominator``.  Stage ``n`` enumerates every descriptor with
    pairs from ``S_n``, at most ``max_jumps`` jumps and Gaussian-integer
    values of height at most ``max_value_height``, together with every
    ``eps = 1/k`` for ``2 <= k <= max_eps_denominator``.  For each it builds
    one candidate in STEP(descriptor) and asks the oracle for an element
    within eps; the jumps of every answered candidate join ``S_{n+1}``.
    Since candidates depend only on ``S_n``, the outcome of a stage does
    not depend on the enumeration order.
    """
    S = NiceSet.dyadics(bounds.max_denominator)
    grid = _value_grid(bounds.max_value_height)
    eps_values = [Fraction(1, k) for k in range(2, bounds.max_eps_denominator + 1)]
    for _ in range(bounds.stages):
        found: set[Fraction] = set()
        for n in range(1, bounds.max_jumps + 1):
            for pairs in itertools.combinations(S.coords, n + 1):
                breaks = [_place(a, b, S, oracle) for a, b in zip(pairs, pairs[1:])]
                if all(S.has_pair(x) for x in breaks):
                    continue
                # elements are continuous across pairs they cannot split, so a grid
                # jump (size >= 1) there stays at distance >= 1/2 >= eps
                if not all(oracle.can_jump_at(x) for x in breaks):
                    continue
                for z in itertools.product(grid, repeat=n + 1):
                    if any(a == b for a, b in zip(z, z[1:])):
                        continue
                    tau = StepFunction(breaks, z)
                    if any(oracle.approx(tau, e) for e in eps_values):
                        found.update(breaks)
                        break
        if not found - set(S.coords):
            break
        S = S.union(found)
    return S
