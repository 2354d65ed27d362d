"""Exact step functions on the double arrow space and idempotent extraction."""

from .errors import DomainError, MalformedInput
from .exact import GaussianRational
from .orderspace import ClosedSet, DoubleArrowFull, DoubleArrowMinus, FiniteChain, Point, cb_derivative, kernel
from .stepcalc import Measure, NiceSet, StepFunction, jmp, norm_sq

__all__ = [
    "ClosedSet",
    "DomainError",
    "DoubleArrowFull",
    "DoubleArrowMinus",
    "FiniteChain",
    "GaussianRational",
    "MalformedInput",
    "Measure",
    "NiceSet",
    "Point",
    "StepFunction",
    "cb_derivative",
    "jmp",
    "kernel",
    "norm_sq",
]
