"""The acceptance checks, each with its own instance count and time budget.

Every check returns a :class:`CheckResult`; a check that finishes over
its budget fails even when all its assertions hold.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import samples
from .circle import PiecewiseFn, psi, psi_inv
from .descriptors import GapHypothesis, difference_cover, re_gap
from .exact import GaussianRational
from .finalg import (
    annihilator_measure,
    boolean_algebra,
    classes,
    contains,
    extension_witness,
    restrict_algebra,
    saturate,
)
from .ntip import ntip_run, verify_trace
from .oracles import BreakpointsOracle
from .orderspace import ClosedSet, DoubleArrowFull, cb_derivative, contains_cantor, intersection, is_subset, kernel
from .runge import Disc, indicator_poly
from .stepcalc import NiceSet, StepFunction, integrate, norm_sq, restrict, support

SEED = 20240601


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    seconds: float
    budget: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {self.name}: {self.seconds:.2f}s of {self.budget:g}s{extra}"


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


def end_to_end() -> str:
    oracle = BreakpointsOracle(NiceSet.dyadics(64, [Fraction(1, 3)]))
    t = ntip_run(oracle, NiceSet.dyadics(64), Fraction(1, 3))
    verdict = verify_trace(t, oracle)
    _require(bool(verdict), f"trace rejected at {verdict.clause}")
    _require(t.r == 1 and t.eps == Fraction(1, 6), "constants r = 1, eps = 1/6")
    _require(all(r2 == Fraction(1, 9) for _, r2 in t.cover.balls), "cover radius 1/3")
    _require(t.hypothesis.w0 == GaussianRational(-2), "w0 = -2")
    ind = t.result.indicator
    _require(t.result.nontrivial and ind * ind == ind, "nontrivial idempotent")
    _require(oracle.contains(ind), "indicator lies in the algebra")
    lo, hi = ind.breaks
    return f"H = [({lo})+, ({hi})-]"


def cover_soundness(instances: int = 1200) -> str:
    rng = random.Random(SEED)
    for k in range(instances):
        delta = samples.descriptor(rng)
        eps = Fraction(1, rng.randint(2, 24))
        sigma, tau = samples.step_in(rng, delta), samples.step_in(rng, delta)
        f = sigma + samples.small_step(rng, eps)
        g = tau + samples.small_step(rng, eps)
        cover = difference_cover(delta, eps)
        bad = [v for v in (f - g).values if v not in cover]
        if bad:
            raise CheckFailed(f"instance {k}: value {bad[0]} escapes the cover")
    return f"{instances} instances"


def _point_in_disc(rng: random.Random, c: GaussianRational, radius: Fraction) -> GaussianRational:
    """Exact point of the open disc ``B(c; radius)``."""
    while True:
        v = GaussianRational(Fraction(rng.randint(-999, 999), 1000) * radius,
                             Fraction(rng.randint(-999, 999), 1000) * radius)
        if v.abs2() < radius * radius:
            return c + v


def gap_instance(rng: random.Random) -> tuple[list[GaussianRational], GapHypothesis]:
    r = rng.randint(1, 5)
    w0 = GaussianRational(rng.choice((2, -2)))
    others = [samples.gaussian(rng, 4, 8) for _ in range(rng.randint(0, r - 1))]
    small = Fraction(1, 3 * r)
    F = [_point_in_disc(rng, GaussianRational(0), Fraction(1)), _point_in_disc(rng, w0, small)]
    centers = [w0, *others]
    for _ in range(rng.randint(0, 12)):
        if rng.random() < 0.4:
            F.append(_point_in_disc(rng, GaussianRational(0), Fraction(1)))
        else:
            F.append(_point_in_disc(rng, rng.choice(centers), small))
    return F, GapHypothesis(r, w0, tuple(others))


def gap_completeness(instances: int = 1200) -> str:
    rng = random.Random(SEED + 1)
    for k in range(instances):
        F, hyp = gap_instance(rng)
        b = re_gap(F, hyp)
        _require(b is not None, f"instance {k}: no gap found")
        reals = [v.re for v in F]
        _require(b not in reals and min(reals) < b < max(reals), f"instance {k}: b = {b} is not a gap")
    return f"{instances} instances"


def restriction_identities(instances: int = 220) -> str:
    rng = random.Random(SEED + 2)
    kernels = 0
    for k in range(instances):
        A = samples.algebra(rng, with_domain=rng.random() < 0.5)
        atoms = classes(A)
        B = boolean_algebra(A)
        unions = []
        for _ in range(3):
            mask = rng.randrange(1, 1 << len(atoms))
            P = ClosedSet()
            for i, atom in enumerate(atoms):
                if mask >> i & 1:
                    P = P | atom
            unions.append(P)
        targets = list(unions)
        K = kernel(A.space)
        if K:
            targets.append(K)
            kernels += 1
        for P in targets:
            AP = restrict_algebra(A, P)
            direct = boolean_algebra(AP)
            traced = {intersection(H, P) for H in B}
            _require(direct == traced, f"instance {k}: B of the restriction differs from traces")
        for P in unions:
            for f in [A.element([samples.gaussian(rng) for _ in atoms]) for _ in range(2)]:
                star = extension_witness(A, f, P)
                _require(restrict(star, P) == restrict(f, P), f"instance {k}: witness changes f on P")
                _require(norm_sq(star, A.space) <= 4 * norm_sq(f, P), f"instance {k}: extension too large")
    return f"{instances} algebras, {kernels} kernel restrictions"


def kernel_calculus(instances: int = 600) -> str:
    rng = random.Random(SEED + 3)
    for k in range(instances):
        sp = samples.space(rng)
        S = samples.closed_set(rng, sp, solids=isinstance(sp, DoubleArrowFull))
        K = kernel(S, sp)
        _require(kernel(K, sp) == K, f"instance {k}: kernel not idempotent")
        _require(cb_derivative(K, sp) == K, f"instance {k}: kernel not perfect")
        _require(is_subset(K, S), f"instance {k}: kernel not a subset")
        current = S
        for _ in range(len(S) + 3):
            current = cb_derivative(current, sp)
        _require((not current) == (not K), f"instance {k}: scattered iff empty kernel")
        _require(contains_cantor(S, sp) == bool(S.solids), f"instance {k}: Cantor detection")
    whole = DoubleArrowFull().whole()
    _require(not contains_cantor(whole, DoubleArrowFull()), "the double arrow has no Cantor subset")
    return f"{instances} presentations"


def psi_isometry(instances: int = 600) -> str:
    rng = random.Random(SEED + 4)
    _require(psi(StepFunction.constant(1)) == PiecewiseFn.constant(1), "psi(1) = 1")
    for k in range(instances):
        f, g = samples.step_function(rng, 5, 32), samples.step_function(rng, 5, 32)
        pf, pg = psi(f), psi(g)
        _require(psi_inv(pf) == f, f"instance {k}: psi_inv o psi != id")
        _require(psi(f * g) == pf * pg, f"instance {k}: products")
        _require(psi(f + g) == pf + pg, f"instance {k}: sums")
        _require(norm_sq(f) == pf.ess_sup_sq() == pf.sup_sq(), f"instance {k}: norms")
    return f"{instances} functions"


def runge_witness() -> str:
    w = indicator_poly([Disc(0, Fraction(1, 2))], [Disc(3, Fraction(1, 2))], Fraction(1, 10**8), 200)
    _require(w.cert_err_sq <= Fraction(1, 10**8) and w.degree <= 200, "certified error within 1e-8")
    lin = indicator_poly([Disc(0, 0)], [Disc(3, 0)], Fraction(1, 10**8), 200)
    _require(lin.coefficients == (GaussianRational(1), GaussianRational(Fraction(-1, 3))) and lin.cert_err_sq == 0,
             "point pair gives 1 - z/3 exactly")
    return f"degree {w.degree}, errSq {float(w.cert_err_sq):.2e}"


def annihilator_mechanics(instances: int = 120) -> str:
    rng = random.Random(SEED + 5)
    done = 0
    while done < instances:
        A = samples.algebra(rng)
        g = samples.step_function(rng, 4, 16)
        if contains(A, g):
            _require(annihilator_measure(A, g) is None, "members have no annihilator")
            continue
        mu = annihilator_measure(A, g)
        _require(mu is not None, "non-member without annihilator")
        _require(all(integrate(e, mu) == 0 for e in A.basis()), "measure does not kill A")
        _require(integrate(g, mu) != 0, "measure kills g")
        H = support(mu)
        AH = saturate(A.basis(), H)
        _require(not contains(AH, g), "restriction to the support still contains g")
        done += 1
    return f"{instances} pairs"


CHECKS: list[tuple[str, Callable[[], str], float]] = [
    ("end-to-end extraction", end_to_end, 1),
    ("difference cover soundness", cover_soundness, 30),
    ("real-part gap completeness", gap_completeness, 30),
    ("restriction identities", restriction_identities, 60),
    ("kernel calculus", kernel_calculus, 10),
    ("circle transfer isometry", psi_isometry, 10),
    ("Runge witness", runge_witness, 5),
    ("annihilating measures", annihilator_mechanics, 30),
]


def run_check(name: str, fn: Callable[[], str], budget: float) -> CheckResult:
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except Exception as exc:  # a crash is a failure of the criterion, reported not raised
        detail, ok = f"{type(exc).__name__}: {exc}", False
    elapsed = time.perf_counter() - start
    if ok and elapsed > budget:
        ok, detail = False, f"over budget; {detail}"
    return CheckResult(name, ok, elapsed, budget, detail)


def run_all() -> list[CheckResult]:
    return [run_check(name, fn, budget) for name, fn, budget in CHECKS]
