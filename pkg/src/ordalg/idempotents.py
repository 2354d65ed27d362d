"""Idempotents cut out of a step function by a vertical line ``Re = b``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import ONE, ZERO, as_fraction
from .orderspace import EMPTY, ClosedInterval, ClosedSet, left_end, right_end
from .runge import PolyWitness, witness_for_values
from .stepcalc import StepFunction, norm_sq


@dataclass(frozen=True)
class IdempotentCertificate:
    H: ClosedSet
    indicator: StepFunction
    b: Fraction
    source_norm_sq: Fraction
    nontrivial: bool
    poly_witness: PolyWitness | None = None


def extract_idempotent(h: StepFunction, b, with_witness: bool = False) -> IdempotentCertificate:
    """The indicator of ``H = {x : Re h(x) < b}``.

    H is a union of pieces of ``h``, hence clopen.  With ``with_witness``
    the certificate also carries the exact interpolating polynomial ``p``
    with ``p(h) = indicator``.
    """
    b = as_fraction(b)
    if any(v.re == b for v in h.values):
        raise DomainError("b hits the range", f"h takes a value with real part {b}")
    below = [v.re < b for v in h.values]
    parts = [ClosedInterval(left_end(lo), right_end(hi))
             for (lo, hi, _), inside in zip(h.pieces(), below) if inside]
    H = ClosedSet(parts) if parts else EMPTY
    indicator = StepFunction(h.breaks, [ONE if inside else ZERO for inside in below])
    witness = witness_for_values(h.values, b) if with_witness else None
    return IdempotentCertificate(
        H=H,
        indicator=indicator,
        b=b,
        source_norm_sq=norm_sq(h),
        nontrivial=any(below) and not all(below),
        poly_witness=witness,
    )
