"""Certified polynomial separation of disjoint disc unions.

:func:`indicator_poly` returns a polynomial that is close to 1 on one union
of closed discs and close to 0 on another.  It is fitted numerically and
then certified: the error bound holds for the exact rational coefficients
that are returned, not for the floating-point fit.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError
from .exact import ONE, ZERO, GaussianRational, as_fraction, fraction_upper, sqrt_upper

COEFF_BITS = 64
DEGREE_SCHEDULE = (1, 2, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256)
MIN_CERT_SAMPLES = 256


@dataclass(frozen=True)
class Disc:
    """Closed disc ``|z - c| <= r``; ``r = 0`` is a single point."""

    c: GaussianRational
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", GaussianRational.coerce(self.c))
        object.__setattr__(self, "r", as_fraction(self.r))
        if self.r < 0:
            raise ValueError("disc radius must be nonnegative")

    def re_span(self) -> tuple[Fraction, Fraction]:
        return self.c.re - self.r, self.c.re + self.r

    def contains(self, z) -> bool:
        return (GaussianRational.coerce(z) - self.c).abs2() <= self.r * self.r


@dataclass(frozen=True)
class PolyWitness:
    """``p(z) = sum coefficients[k] * ((z - center) / scale)**k`` with an
    upper bound ``cert_err_sq`` on the squared approximation error."""

    coefficients: tuple[GaussianRational, ...]
    center: GaussianRational = ZERO
    scale: Fraction = Fraction(1)
    cert_err_sq: Fraction = Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z) -> GaussianRational:
        w = (GaussianRational.coerce(z) - self.center) / self.scale
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * w + c
        return acc

    def evaluate_complex(self, z: np.ndarray) -> np.ndarray:
        w = (np.asarray(z, dtype=complex) - complex(self.center)) / float(self.scale)
        coeffs = np.array([complex(c) for c in self.coefficients])
        return np.polynomial.polynomial.polyval(w, coeffs)


def _check_inputs(K0: Sequence[Disc], K1: Sequence[Disc]) -> None:
    discs = list(K0) + list(K1)
    for i, a in enumerate(discs):
        for b in discs[i + 1:]:
            if (a.c - b.c).abs2() <= (a.r + b.r) ** 2:
                raise DomainError("discs not disjoint", f"{a} meets {b}")
    if K0 and K1:
        lo0, hi0 = min(d.re_span()[0] for d in K0), max(d.re_span()[1] for d in K0)
        lo1, hi1 = min(d.re_span()[0] for d in K1), max(d.re_span()[1] for d in K1)
        if not (hi0 < lo1 or hi1 < lo0):
            raise DomainError("not Re-separated", "the real projections of K0 and K1 overlap")


def _lagrange(points: list[GaussianRational], targets: list[GaussianRational]) -> list[GaussianRational]:
    """Exact interpolating polynomial in monomial form."""
    coeffs = [ZERO] * len(points)
    for i, (xi, yi) in enumerate(zip(points, targets)):
        basis = [ONE]
        denom = ONE
        for j, xj in enumerate(points):
            if j == i:
                continue
            basis = [ZERO] + basis
            for k in range(len(basis) - 1):
                basis[k] = basis[k] - xj * basis[k + 1]
            denom = denom * (xi - xj)
        scale = yi / denom
        for k, b in enumerate(basis):
            coeffs[k] = coeffs[k] + scale * b
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def interpolating_witness(points: Sequence, targets: Sequence) -> PolyWitness:
    pts = [GaussianRational.coerce(p) for p in points]
    return PolyWitness(tuple(_lagrange(pts, [GaussianRational.coerce(t) for t in targets])))


def _frame(discs: Sequence[Disc]) -> tuple[GaussianRational, Fraction]:
    re_lo = min(d.c.re - d.r for d in discs)
    re_hi = max(d.c.re + d.r for d in discs)
    im_lo = min(d.c.im - d.r for d in discs)
    im_hi = max(d.c.im + d.r for d in discs)
    center = GaussianRational((re_lo + re_hi) / 2, (im_lo + im_hi) / 2)
    reach = max(sqrt_upper((d.c - center).abs2()) + d.r for d in discs)
    scale = Fraction(math.ceil(reach * 64), 64)
    return center, max(scale, Fraction(1, 64))


def _phase() -> float:
    seed = os.environ.get("ORDALG_SEED")
    if seed is None:
        return 0.0
    return random.Random(int(seed)).random() * 2 * math.pi


def _circle(d: Disc, n: int, phase: float) -> np.ndarray:
    theta = phase + 2 * math.pi * np.arange(n) / n
    return complex(d.c) + float(d.r) * np.exp(1j * theta)


def _round(coeffs: np.ndarray) -> tuple[GaussianRational, ...]:
    den = 1 << COEFF_BITS
    out = [GaussianRational(Fraction(round(c.real * den), den), Fraction(round(c.imag * den), den))
           for c in coeffs]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return tuple(out)


def _sharpen(q: np.ndarray) -> np.ndarray:
    q2 = np.convolve(q, q)
    q3 = np.convolve(q2, q)
    out = -2 * q3
    out[: len(q2)] += 3 * q2
    return out


def _certify(w: PolyWitness, K0: Sequence[Disc], K1: Sequence[Disc], phase: float) -> Fraction:
    """Upper bound on ``max(|p - 1| on K0, |p| on K1)``, squared.

    On a circle of a disc, ``p - target`` is a trigonometric polynomial of
    degree ``d``; Bernstein's inequality bounds it by the sampled maximum
    divided by ``1 - pi d / N``.  A rounding allowance covers the
    floating-point evaluation.  The maximum principle carries the circle
    bound to the whole disc.
    """
    d = max(w.degree, 1)
    n = max(MIN_CERT_SAMPLES, 16 * d)
    mass = sum(math.hypot(float(c.re), float(c.im)) for c in w.coefficients) + 1.0
    slack = 8.0 * (d + 2) ** 2 * 2.0 ** -52 * mass
    shrink = 1.0 - math.pi * d / n
    worst = Fraction(0)
    for discs, target in ((K0, ONE), (K1, ZERO)):
        for disc in discs:
            if disc.r == 0:
                worst = max(worst, (w(disc.c) - target).abs2())
                continue
            vals = w.evaluate_complex(_circle(disc, n, phase)) - complex(target)
            bound = (float(np.max(np.abs(vals))) + slack) / shrink
            worst = max(worst, fraction_upper(bound) ** 2)
    return worst


def indicator_poly(K0: Sequence[Disc], K1: Sequence[Disc], tol_sq, max_degree: int) -> PolyWitness:
    """Polynomial with ``|p - 1|^2 <= tol_sq`` on K0 and ``|p|^2 <= tol_sq`` on K1."""
    tol_sq = as_fraction(tol_sq)
    if tol_sq <= 0:
        raise DomainError("tolerance must be positive")
    K0, K1 = list(K0), list(K1)
    _check_inputs(K0, K1)
    if not K1:
        return PolyWitness((ONE,))
    if not K0:
        return PolyWitness((ZERO,))
    discs = K0 + K1
    if all(d.r == 0 for d in discs):
        if len(discs) - 1 > max_degree:
            raise DomainError("degree exhausted", f"{len(discs)} points need degree {len(discs) - 1}")
        return interpolating_witness([d.c for d in discs], [ONE] * len(K0) + [ZERO] * len(K1))

    center, scale = _frame(discs)
    phase = _phase()
    zc, fs = complex(center), float(scale)
    for base in (d for d in DEGREE_SCHEDULE if d <= max_degree):
        m = max(64, 4 * (base + 1))
        pts, rhs = [], []
        for disc, target in [(d, 1.0) for d in K0] + [(d, 0.0) for d in K1]:
            z = _circle(disc, m, phase) if disc.r else np.array([complex(disc.c)])
            pts.append((z - zc) / fs)
            rhs.append(np.full(len(z), target, dtype=complex))
        w = np.concatenate(pts)
        vander = np.vander(w, base + 1, increasing=True)
        q, *_ = np.linalg.lstsq(vander, np.concatenate(rhs), rcond=None)
        while True:
            witness = PolyWitness(_round(q), center, scale)
            err = _certify(witness, K0, K1, phase)
            if err <= tol_sq:
                return PolyWitness(witness.coefficients, center, scale, err)
            # sharpening only helps once every value is already near 0 or 1
            if err >= Fraction(1, 16) or 3 * (len(q) - 1) > max_degree:
                break
            q = _sharpen(q)
    raise DomainError("degree exhausted", f"no certified witness of degree <= {max_degree}")


def witness_for_values(values: Sequence[GaussianRational], b: Fraction) -> PolyWitness:
    """Exact witness sending each value with ``Re < b`` to 1 and the others to 0."""
    pts = sorted(set(GaussianRational.coerce(v) for v in values), key=lambda v: (v.re, v.im))
    return interpolating_witness(pts, [ONE if v.re < b else ZERO for v in pts])

