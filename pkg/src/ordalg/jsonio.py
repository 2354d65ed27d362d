"""JSON encoding of every exact object in the package.

Rationals are strings ``"p/q"`` (or ``"p"``) in lowest terms; binary
floats are rejected on input and never produced.  Parsers raise
:class:`~ordalg.errors.MalformedInput` naming the offending field path.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Callable

from .circle import PiecewiseFn, normalize_j
from .descriptors import BallCover, Descriptor, GapHypothesis
from .errors import MalformedInput
from .exact import GaussianRational, format_rational, parse_rational
from .finalg import FinStepAlgebra
from .idempotents import IdempotentCertificate
from .ntip import NtipTrace, Verdict
from .oracles import AlgebraOracle, BreakpointsOracle, FinAlgOracle, PullbackOracle
from .orderspace import (
    ClosedInterval,
    ClosedSet,
    DoubleArrowFull,
    DoubleArrowMinus,
    FiniteChain,
    Point,
    SinglePoint,
    SolidSegment,
    SpacePresentation,
)
from .runge import Disc, PolyWitness
from .stepcalc import DensityPiece, Measure, NiceSet, StepFunction

Json = Any


def _reject_float(text: str):
    raise ValueError(f"binary float {text} is not allowed; write rationals as \"p/q\"")


def loads(text: str, where: str = "input") -> Json:
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{where}:{exc.lineno}:{exc.colno}", exc.msg) from None
    except ValueError as exc:
        raise MalformedInput(where, str(exc)) from None


def dumps(obj: Json) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


# --------------------------------------------------------------------------
# field access helpers


def _field(obj: Json, key: str, path: str) -> Json:
    if not isinstance(obj, dict):
        raise MalformedInput(path, "expected an object")
    if key not in obj:
        raise MalformedInput(f"{path}.{key}", "missing field")
    return obj[key]


def _list(obj: Json, path: str) -> list:
    if not isinstance(obj, list):
        raise MalformedInput(path, "expected a list")
    return obj


def _int(obj: Json, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise MalformedInput(path, "expected an integer")
    return obj


def _build(path: str, fn: Callable, *args):
    try:
        return fn(*args)
    except MalformedInput:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise MalformedInput(path, str(exc)) from None


def rational_to_json(x: Fraction) -> str:
    return format_rational(x)


def rational_from_json(obj: Json, path: str = "$") -> Fraction:
    if not isinstance(obj, str):
        raise MalformedInput(path, "rationals must be strings like \"p/q\"")
    return _build(path, parse_rational, obj)


def _rationals(obj: Json, path: str) -> list[Fraction]:
    return [rational_from_json(v, f"{path}[{i}]") for i, v in enumerate(_list(obj, path))]


def gaussian_to_json(z: GaussianRational) -> Json:
    return {"re": format_rational(z.re), "im": format_rational(z.im)}


def gaussian_from_json(obj: Json, path: str = "$") -> GaussianRational:
    if isinstance(obj, str):
        return GaussianRational(rational_from_json(obj, path))
    re = rational_from_json(_field(obj, "re", path), f"{path}.re")
    im = rational_from_json(obj.get("im", "0"), f"{path}.im")
    return GaussianRational(re, im)


def _gaussians(obj: Json, path: str) -> list[GaussianRational]:
    return [gaussian_from_json(v, f"{path}[{i}]") for i, v in enumerate(_list(obj, path))]


# --------------------------------------------------------------------------
# order space


def point_to_json(p: Point) -> Json:
    return {"x": format_rational(p.x), "side": p.side}


def point_from_json(obj: Json, path: str = "$") -> Point:
    x = rational_from_json(_field(obj, "x", path), f"{path}.x")
    side = _field(obj, "side", path)
    return _build(path, Point, x, side)


def closed_set_to_json(S: ClosedSet) -> Json:
    comps = []
    for c in S:
        if isinstance(c, ClosedInterval):
            comps.append({"type": "interval", "a": point_to_json(c.a), "b": point_to_json(c.b)})
        elif isinstance(c, SinglePoint):
            comps.append({"type": "point", "p": point_to_json(c.p)})
        else:
            comps.append({"type": "solid", "l": format_rational(c.l), "r": format_rational(c.r)})
    return {"components": comps}


def closed_set_from_json(obj: Json, path: str = "$") -> ClosedSet:
    comps = []
    for i, c in enumerate(_list(_field(obj, "components", path), f"{path}.components")):
        cp = f"{path}.components[{i}]"
        kind = _field(c, "type", cp)
        if kind == "interval":
            a = point_from_json(_field(c, "a", cp), f"{cp}.a")
            b = point_from_json(_field(c, "b", cp), f"{cp}.b")
            comps.append(_build(cp, ClosedInterval, a, b))
        elif kind == "point":
            comps.append(SinglePoint(point_from_json(_field(c, "p", cp), f"{cp}.p")))
        elif kind == "solid":
            l = rational_from_json(_field(c, "l", cp), f"{cp}.l")
            r = rational_from_json(_field(c, "r", cp), f"{cp}.r")
            comps.append(_build(cp, SolidSegment, l, r))
        else:
            raise MalformedInput(f"{cp}.type", f"unknown component type {kind!r}")
    return _build(path, ClosedSet, comps)


def space_to_json(space: SpacePresentation) -> Json:
    if isinstance(space, FiniteChain):
        return {"kind": "chain", "n": space.n}
    if isinstance(space, DoubleArrowMinus):
        return {"kind": "double-arrow-minus", "F": [format_rational(x) for x in sorted(space.undoubled)]}
    return {"kind": "double-arrow"}


def space_from_json(obj: Json, path: str = "$") -> SpacePresentation:
    kind = _field(obj, "kind", path)
    if kind == "double-arrow":
        return DoubleArrowFull()
    if kind == "double-arrow-minus":
        return _build(path, DoubleArrowMinus, frozenset(_rationals(_field(obj, "F", path), f"{path}.F")))
    if kind == "chain":
        return _build(path, FiniteChain, _int(_field(obj, "n", path), f"{path}.n"))
    raise MalformedInput(f"{path}.kind", f"unknown space kind {kind!r}")


# --------------------------------------------------------------------------
# step functions, nice sets and measures


def step_to_json(f: StepFunction) -> Json:
    return {"breaks": [format_rational(b) for b in f.breaks],
            "values": [gaussian_to_json(v) for v in f.values]}


def step_from_json(obj: Json, path: str = "$") -> StepFunction:
    breaks = _rationals(_field(obj, "breaks", path), f"{path}.breaks")
    values = _gaussians(_field(obj, "values", path), f"{path}.values")
    return _build(path, StepFunction, breaks, values)


def nice_to_json(S: NiceSet) -> Json:
    return {"coords": [format_rational(c) for c in S.coords]}


def nice_from_json(obj: Json, path: str = "$") -> NiceSet:
    if not isinstance(obj, dict):
        raise MalformedInput(path, "expected an object")
    extra = _rationals(obj.get("coords", []), f"{path}.coords")
    if "dyadicMaxDenominator" in obj:
        den = _int(obj["dyadicMaxDenominator"], f"{path}.dyadicMaxDenominator")
        return _build(path, NiceSet.dyadics, den, extra)
    if "coords" not in obj:
        raise MalformedInput(f"{path}.coords", "missing field")
    return _build(path, NiceSet, tuple(extra))


def measure_to_json(mu: Measure) -> Json:
    return {"atoms": [{"p": point_to_json(p), "w": gaussian_to_json(w)} for p, w in mu.atoms],
            "density": [{"l": format_rational(d.l), "r": format_rational(d.r), "d": format_rational(d.d)}
                        for d in mu.density]}


def measure_from_json(obj: Json, path: str = "$") -> Measure:
    if not isinstance(obj, dict):
        raise MalformedInput(path, "expected an object")
    atoms = []
    for i, a in enumerate(_list(obj.get("atoms", []), f"{path}.atoms")):
        ap = f"{path}.atoms[{i}]"
        atoms.append((point_from_json(_field(a, "p", ap), f"{ap}.p"),
                      gaussian_from_json(_field(a, "w", ap), f"{ap}.w")))
    dens = []
    for i, d in enumerate(_list(obj.get("density", []), f"{path}.density")):
        dp = f"{path}.density[{i}]"
        vals = [rational_from_json(_field(d, k, dp), f"{dp}.{k}") for k in ("l", "r", "d")]
        dens.append(_build(dp, DensityPiece, *vals))
    return _build(path, Measure, tuple(atoms), tuple(dens))


# --------------------------------------------------------------------------
# algebras and oracles


def algebra_to_json(A: FinStepAlgebra) -> Json:
    out = {"partition": [format_rational(x) for x in A.partition], "classes": [list(c) for c in A.classes]}
    if A.domain is not None:
        out["domain"] = closed_set_to_json(A.domain)
    return out


def algebra_from_json(obj: Json, path: str = "$") -> FinStepAlgebra:
    part = _rationals(_field(obj, "partition", path), f"{path}.partition")
    classes = []
    for i, c in enumerate(_list(_field(obj, "classes", path), f"{path}.classes")):
        classes.append(tuple(_int(v, f"{path}.classes[{i}][{j}]") for j, v in enumerate(_list(c, f"{path}.classes[{i}]"))))
    domain = closed_set_from_json(obj["domain"], f"{path}.domain") if obj.get("domain") is not None else None
    return _build(path, FinStepAlgebra, tuple(part), tuple(classes), domain)


def oracle_to_json(o: AlgebraOracle) -> Json:
    if isinstance(o, BreakpointsOracle):
        return {"kind": "breakpoints", "coords": [format_rational(c) for c in o.T.coords]}
    if isinstance(o, FinAlgOracle):
        return {"kind": "finalg", "algebra": algebra_to_json(o.algebra)}
    if isinstance(o, PullbackOracle):
        return {"kind": "pullback", "blocks": [[format_rational(l), format_rational(r)] for l, r in o.blocks]}
    raise TypeError(f"cannot serialize oracle {type(o).__name__}")


def oracle_from_json(obj: Json, path: str = "$") -> AlgebraOracle:
    kind = _field(obj, "kind", path)
    if kind == "breakpoints":
        return BreakpointsOracle(nice_from_json(obj, path))
    if kind == "finalg":
        A = algebra_from_json(_field(obj, "algebra", path), f"{path}.algebra")
        return _build(path, FinAlgOracle, A)
    if kind == "pullback":
        blocks = []
        for i, blk in enumerate(_list(_field(obj, "blocks", path), f"{path}.blocks")):
            bp = f"{path}.blocks[{i}]"
            if isinstance(blk, dict):
                pair = (_field(blk, "l", bp), _field(blk, "r", bp))
            else:
                pair = tuple(_list(blk, bp))
                if len(pair) != 2:
                    raise MalformedInput(bp, "a block is a pair [l, r]")
            blocks.append((rational_from_json(pair[0], f"{bp}.l"), rational_from_json(pair[1], f"{bp}.r")))
        return _build(path, PullbackOracle, tuple(blocks))
    raise MalformedInput(f"{path}.kind", f"unknown oracle kind {kind!r}")


# --------------------------------------------------------------------------
# descriptors, covers, certificates, traces


def descriptor_to_json(d: Descriptor) -> Json:
    return {"z": [gaussian_to_json(v) for v in d.z], "pairs": [format_rational(b) for b in d.pairs]}


def descriptor_from_json(obj: Json, path: str = "$") -> Descriptor:
    z = _gaussians(_field(obj, "z", path), f"{path}.z")
    pairs = _rationals(_field(obj, "pairs", path), f"{path}.pairs")
    return _build(path, Descriptor, tuple(z), tuple(pairs))


def cover_to_json(c: BallCover) -> Json:
    return {"balls": [{"c": gaussian_to_json(z), "radiusSq": format_rational(r)} for z, r in c.balls]}


def cover_from_json(obj: Json, path: str = "$") -> BallCover:
    balls = []
    for i, b in enumerate(_list(_field(obj, "balls", path), f"{path}.balls")):
        bp = f"{path}.balls[{i}]"
        balls.append((gaussian_from_json(_field(b, "c", bp), f"{bp}.c"),
                      rational_from_json(_field(b, "radiusSq", bp), f"{bp}.radiusSq")))
    return _build(path, BallCover, tuple(balls))


def hypothesis_to_json(h: GapHypothesis) -> Json:
    return {"r": h.r, "w0": gaussian_to_json(h.w0), "others": [gaussian_to_json(w) for w in h.others]}


def hypothesis_from_json(obj: Json, path: str = "$") -> GapHypothesis:
    r = _int(_field(obj, "r", path), f"{path}.r")
    w0 = gaussian_from_json(_field(obj, "w0", path), f"{path}.w0")
    others = _gaussians(obj.get("others", []), f"{path}.others")
    return GapHypothesis(r, w0, tuple(others))


def discs_to_json(discs) -> Json:
    return {"discs": [{"c": gaussian_to_json(d.c), "r": format_rational(d.r)} for d in discs]}


def discs_from_json(obj: Json, path: str = "$") -> list[Disc]:
    out = []
    for i, d in enumerate(_list(_field(obj, "discs", path), f"{path}.discs")):
        dp = f"{path}.discs[{i}]"
        c = gaussian_from_json(_field(d, "c", dp), f"{dp}.c")
        r = rational_from_json(_field(d, "r", dp), f"{dp}.r")
        out.append(_build(dp, Disc, c, r))
    return out


def witness_to_json(w: PolyWitness) -> Json:
    return {"coefficients": [gaussian_to_json(c) for c in w.coefficients],
            "center": gaussian_to_json(w.center), "scale": format_rational(w.scale),
            "degree": w.degree, "certifiedErrSq": format_rational(w.cert_err_sq)}


def witness_from_json(obj: Json, path: str = "$") -> PolyWitness:
    coeffs = _gaussians(_field(obj, "coefficients", path), f"{path}.coefficients")
    center = gaussian_from_json(obj.get("center", "0"), f"{path}.center")
    scale = rational_from_json(obj.get("scale", "1"), f"{path}.scale")
    err = rational_from_json(obj.get("certifiedErrSq", "0"), f"{path}.certifiedErrSq")
    return PolyWitness(tuple(coeffs), center, scale, err)


def certificate_to_json(c: IdempotentCertificate) -> Json:
    out = {"H": closed_set_to_json(c.H), "indicator": step_to_json(c.indicator), "b": format_rational(c.b),
           "sourceNormSq": format_rational(c.source_norm_sq), "nontrivial": c.nontrivial}
    if c.poly_witness is not None:
        out["polyWitness"] = witness_to_json(c.poly_witness)
    return out


def certificate_from_json(obj: Json, path: str = "$") -> IdempotentCertificate:
    nontrivial = _field(obj, "nontrivial", path)
    if not isinstance(nontrivial, bool):
        raise MalformedInput(f"{path}.nontrivial", "expected a boolean")
    witness = obj.get("polyWitness")
    return IdempotentCertificate(
        H=closed_set_from_json(_field(obj, "H", path), f"{path}.H"),
        indicator=step_from_json(_field(obj, "indicator", path), f"{path}.indicator"),
        b=rational_from_json(_field(obj, "b", path), f"{path}.b"),
        source_norm_sq=rational_from_json(_field(obj, "sourceNormSq", path), f"{path}.sourceNormSq"),
        nontrivial=nontrivial,
        poly_witness=witness_from_json(witness, f"{path}.polyWitness") if witness is not None else None,
    )


_TRACE_STEPS = ("f", "sigma", "tau", "g", "h")


def trace_to_json(t: NtipTrace) -> Json:
    out = {"q": format_rational(t.q), "S": nice_to_json(t.S)}
    out.update({k: step_to_json(getattr(t, k)) for k in _TRACE_STEPS})
    out.update({
        "Delta": descriptor_to_json(t.delta),
        "r": t.r,
        "eps": format_rational(t.eps),
        "cover": cover_to_json(t.cover),
        "hypothesis": hypothesis_to_json(t.hypothesis),
        "b": format_rational(t.b),
        "result": certificate_to_json(t.result),
    })
    return out


def trace_from_json(obj: Json, path: str = "$") -> NtipTrace:
    steps = {k: step_from_json(_field(obj, k, path), f"{path}.{k}") for k in _TRACE_STEPS}
    return NtipTrace(
        q=rational_from_json(_field(obj, "q", path), f"{path}.q"),
        S=nice_from_json(_field(obj, "S", path), f"{path}.S"),
        delta=descriptor_from_json(_field(obj, "Delta", path), f"{path}.Delta"),
        r=_int(_field(obj, "r", path), f"{path}.r"),
        eps=rational_from_json(_field(obj, "eps", path), f"{path}.eps"),
        cover=cover_from_json(_field(obj, "cover", path), f"{path}.cover"),
        hypothesis=hypothesis_from_json(_field(obj, "hypothesis", path), f"{path}.hypothesis"),
        b=rational_from_json(_field(obj, "b", path), f"{path}.b"),
        result=certificate_from_json(_field(obj, "result", path), f"{path}.result"),
        **steps,
    )


def verdict_to_json(v: Verdict) -> Json:
    return {"ok": v.ok, "clause": v.clause}


# --------------------------------------------------------------------------
# circle


def piecewise_to_json(g: PiecewiseFn) -> Json:
    return {"cuts": [format_rational(c) for c in g.cuts], "arcs": [gaussian_to_json(v) for v in g.arcs],
            "pointValues": [gaussian_to_json(v) for v in g.point_values]}


def piecewise_from_json(obj: Json, path: str = "$") -> PiecewiseFn:
    cuts = _rationals(_field(obj, "cuts", path), f"{path}.cuts")
    arcs = _gaussians(_field(obj, "arcs", path), f"{path}.arcs")
    if "pointValues" in obj:
        _gaussians(obj["pointValues"], f"{path}.pointValues")
    return _build(path, normalize_j, cuts, arcs)
