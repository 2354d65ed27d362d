"""Command-line entry point.

Every command reads JSON files, prints JSON on standard output and exits
with 0 on success, 1 on a domain error (the clause goes to standard
error) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable

from . import jsonio, selftest
from .circle import psi, psi_inv
from .descriptors import matches
from .errors import DomainError, MalformedInput
from .exact import parse_rational
from .idempotents import extract_idempotent
from .ntip import ChainBounds, build_nice_chain, ntip_run, verify_trace
from .orderspace import DoubleArrowFull, contains_cantor, kernel
from .stepcalc import integrate, jmp


def _read(path: str, what: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(path, f"cannot read {what} file ({exc.strerror})") from None
    return jsonio.loads(text, path)


def _rational(text: str, option: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise MalformedInput(option, str(exc)) from None


def _space_and_set(obj):
    """A space alone, a ``{"space", "set"}`` pair, or a bare closed set."""
    if isinstance(obj, dict) and "kind" in obj:
        sp = jsonio.space_from_json(obj)
        return sp, sp.whole()
    if isinstance(obj, dict) and "space" in obj:
        sp = jsonio.space_from_json(obj["space"], "$.space")
        S = jsonio.closed_set_from_json(obj["set"], "$.set") if "set" in obj else sp.whole()
        return sp, S
    return DoubleArrowFull(), jsonio.closed_set_from_json(obj)


def cmd_kernel(args):
    sp, S = _space_and_set(_read(args.file, "space"))
    return jsonio.closed_set_to_json(kernel(S, sp))


def cmd_cantor(args):
    sp, S = _space_and_set(_read(args.file, "space"))
    return {"containsCantor": contains_cantor(S, sp)}


def cmd_jmp(args):
    f = jsonio.step_from_json(_read(args.f, "step function"))
    return jsonio.nice_to_json(jmp(f, _rational(args.eps, "--eps")))


def cmd_match(args):
    delta = jsonio.descriptor_from_json(_read(args.delta, "descriptor"))
    tau = jsonio.step_from_json(_read(args.tau, "step function"))
    return {"matches": matches(delta, tau)}


def cmd_extract(args):
    h = jsonio.step_from_json(_read(args.h, "step function"))
    cert = extract_idempotent(h, _rational(args.b, "--b"), with_witness=args.witness)
    return jsonio.certificate_to_json(cert)


def cmd_ntip_run(args):
    oracle = jsonio.oracle_from_json(_read(args.oracle, "oracle"))
    S = jsonio.nice_from_json(_read(args.nice, "nice set"))
    trace = ntip_run(oracle, S, _rational(args.q, "--q"), sigma_rule=args.sigma_rule)
    return jsonio.trace_to_json(trace)


def cmd_verify(args):
    trace = jsonio.trace_from_json(_read(args.trace, "trace"))
    oracle = jsonio.oracle_from_json(_read(args.oracle, "oracle")) if args.oracle else None
    verdict = verify_trace(trace, oracle)
    if not verdict:
        raise DomainError(verdict.clause, "trace rejected")
    return jsonio.verdict_to_json(verdict)


def cmd_nice_chain(args):
    oracle = jsonio.oracle_from_json(_read(args.oracle, "oracle"))
    bounds = ChainBounds(args.max_denominator, args.max_jumps, args.max_value_height,
                         args.max_eps_denominator, args.stages)
    return jsonio.nice_to_json(build_nice_chain(oracle, bounds))


def cmd_psi(args):
    if args.inverse:
        if args.g is None:
            raise MalformedInput("--g", "psi --inverse needs a circle function")
        return jsonio.step_to_json(psi_inv(jsonio.piecewise_from_json(_read(args.g, "circle function"))))
    if args.f is None:
        raise MalformedInput("--f", "psi needs a step function")
    return jsonio.piecewise_to_json(psi(jsonio.step_from_json(_read(args.f, "step function"))))


def cmd_integrate(args):
    f = jsonio.step_from_json(_read(args.f, "step function"))
    mu = jsonio.measure_from_json(_read(args.mu, "measure"))
    return jsonio.gaussian_to_json(integrate(f, mu))


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordalg", description="Exact step functions on the double arrow space.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    add("kernel", cmd_kernel, "perfect kernel of a closed set").add_argument("file")
    add("cantor", cmd_cantor, "does a closed set contain a Cantor set").add_argument("file")
    sp = add("jmp", cmd_jmp, "pairs where a step function jumps by at least eps")
    sp.add_argument("--f", required=True)
    sp.add_argument("--eps", required=True)
    sp = add("match", cmd_match, "does a step function match a descriptor")
    sp.add_argument("--delta", required=True)
    sp.add_argument("--tau", required=True)
    sp = add("extract", cmd_extract, "idempotent of a real-part sublevel set")
    sp.add_argument("--h", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--witness", action="store_true", help="attach the interpolating polynomial")
    sp = add("ntip-run", cmd_ntip_run, "run the extraction pipeline and print its trace")
    sp.add_argument("--oracle", required=True)
    sp.add_argument("--nice", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--sigma-rule", choices=("exact", "rounded"), default="exact")
    sp = add("verify", cmd_verify, "replay the checks of a recorded trace")
    sp.add_argument("--trace", required=True)
    sp.add_argument("--oracle")
    sp = add("nice-chain", cmd_nice_chain, "grow a nice set adapted to an oracle")
    sp.add_argument("--oracle", required=True)
    d = ChainBounds()
    sp.add_argument("--max-denominator", type=int, default=d.max_denominator)
    sp.add_argument("--max-jumps", type=int, default=d.max_jumps)
    sp.add_argument("--max-value-height", type=int, default=d.max_value_height)
    sp.add_argument("--max-eps-denominator", type=int, default=d.max_eps_denominator)
    sp.add_argument("--stages", type=int, default=d.stages)
    sp = add("psi", cmd_psi, "transfer between the double arrow and the circle")
    sp.add_argument("--f")
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--g")
    sp = add("integrate", cmd_integrate, "integral of a step function against a measure")
    sp.add_argument("--f", required=True)
    sp.add_argument("--mu", required=True)
    sp = sub.add_parser("selftest", help="run the example fixtures or the acceptance suite")
    sp.add_argument("level", choices=("quick", "full"), nargs="?", default="quick")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "selftest":
        code, lines = selftest.run(args.level)
        print("\n".join(lines))
        return code
    try:
        out = args.fn(args)
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(exc.clause, file=sys.stderr)
        if exc.detail:
            print(exc.detail, file=sys.stderr)
        return 1
    print(jsonio.dumps(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
