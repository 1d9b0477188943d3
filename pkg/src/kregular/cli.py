"""``kreg`` command line: verify, construct and inspect k-regular maps.

Exit status: 0 on success or PASSED, 1 on a certified counterexample or an
infeasible construction, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import warnings
from fractions import Fraction

from . import bounds, construct, gorenstein, secant
from .errors import (BudgetExhaustedError, InfeasibleWarning, KRegularError, UnknownExampleError)
from .exactmath import DEFAULT_PRIME
from .poly import KINDS, format_poly, parse_poly, polymap_from_lines
from .regularity import DomainBall, check_regularity

SCHEMA = 1


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        val = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if val <= 0:
        raise argparse.ArgumentTypeError("radius must be positive")
    return val


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("values must be >= 1")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=_positive, default=1000, help="trials per strategy")
    common.add_argument("--radius", type=_fraction, default=None,
                        help="ball radius (default 1, or 1/8 for local fixtures and constructions)")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)

    p = argparse.ArgumentParser(prog="kreg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="test k-regularity of a map")
    v.add_argument("--map", required=True, help="fixture name or file with one polynomial per line")
    v.add_argument("--k", type=_positive, required=True)
    v.add_argument("--kind", choices=KINDS, default=None, help="regularity kind for maps read from files")
    v.add_argument("--vars", default=None, help="comma-separated variable names for file input")
    v.add_argument("--workers", type=_positive, default=1)
    v.add_argument("--all-trials", action="store_true", help="keep going after the first counterexample")

    c = sub.add_parser("construct", parents=[common], help="project a Veronese map and verify it")
    c.add_argument("--m", type=_positive, required=True)
    c.add_argument("--k", type=_positive, required=True)
    c.add_argument("--N", type=_positive, default=None, help="affine target dimension (N+1 components)")
    c.add_argument("--budget", type=_positive, default=32)

    e = sub.add_parser("example", parents=[common], help="print a named fixture map")
    e.add_argument("name", nargs="?", default=None)

    s = sub.add_parser("secant-dim", parents=[common], help="secant variety dimensions of Veronese maps")
    s.add_argument("--m", type=_positive, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--oracle", action="store_true", help="also measure with the Terracini oracle")
    s.add_argument("--repetitions", type=_positive, default=secant.REPETITIONS)

    a = sub.add_parser("apolar", parents=[common], help="apolar algebra of a polynomial")
    a.add_argument("poly", help="polynomial text, or @FILE to read it from a file")
    a.add_argument("--vars", default=None, help="comma-separated variable names (default: as they appear)")
    a.add_argument("--max-degree", type=_positive, default=None)

    d = sub.add_parser("decomp-audit", parents=[common], help="negligibility audit of Gorenstein loci")
    d.add_argument("--k", type=_positive, required=True)
    d.add_argument("--m", type=_positive, required=True)

    b = sub.add_parser("bounds-table", parents=[common], help="bounds on the minimal target dimension")
    b.add_argument("--kmax", type=_positive, default=10)
    b.add_argument("--m", type=_int_list, default=[1, 2, 3])
    return p


def _load_map(args):
    source = args.map
    if os.path.isfile(source):
        with open(source) as fh:
            lines = fh.readlines()
        names = args.vars.split(",") if args.vars else None
        f = polymap_from_lines(lines, names, args.kind or "linear", os.path.basename(source))
        return f, Fraction(1)
    try:
        f = construct.paper_example(source)
    except UnknownExampleError:
        raise UsageError(f"{source!r} is neither a file nor a known example "
                         f"({', '.join(construct.FIXTURE_NAMES)})")
    if args.kind:
        f = f.with_kind(args.kind)
    return f, construct.default_radius(source)


def _variables_in(text: str) -> list[str]:
    names = dict.fromkeys(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))

    def natural(n):
        return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", n)]
    return sorted(names, key=natural) or ["x"]


def _emit(args, payload: dict, text: str) -> None:
    if args.output == "json":
        print(json.dumps({"schema": SCHEMA, "command": args.command, **payload}, indent=2, sort_keys=True))
    else:
        print(text)


def _report_text(rep) -> str:
    lines = [f"map {rep.map} ({rep.kind}), k = {rep.k}, ball radius {rep.domain.radius}, seed {rep.seed}"]
    for s in rep.strategies:
        lines.append(f"  {s.name:<8} trials {s.trials:>5}  failures {s.failures}")
    lines.append(f"verdict: {rep.verdict}" + (" (probabilistic)" if rep.passed else ""))
    cex = rep.counterexample
    if cex is not None:
        lines.append(f"counterexample: {cex.strategy} trial {cex.trial}")
        for p in cex.points:
            lines.append("  point (" + ", ".join(str(x) for x in p) + ")")
        if cex.arc is not None:
            for j, c in enumerate(cex.arc, start=1):
                lines.append(f"  arc t^{j}: (" + ", ".join(str(x) for x in c) + ")")
        lines.append("  kernel vector (" + ", ".join(str(x) for x in cex.kernel_vector) + ")")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    f, radius = _load_map(args)
    if args.radius is not None:
        radius = args.radius
    m = f.num_vars - 1 if f.source_projective else f.num_vars
    rep = check_regularity(f, args.k, DomainBall.unit(m, radius), args.trials, args.seed,
                           stop_at_first=not args.all_trials, prime=args.prime, workers=args.workers)
    _emit(args, {"report": rep.to_json(), "components": f.formatted()}, _report_text(rep))
    return 0 if rep.passed else 1


def cmd_construct(args) -> int:
    radius = args.radius if args.radius is not None else construct.LOCAL_RADIUS
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", InfeasibleWarning)
        try:
            res = construct.construct_k_regular(args.m, args.k, args.N, args.seed, args.budget,
                                                args.trials, radius, args.prime)
        except BudgetExhaustedError as exc:
            best = exc.best_report
            _emit(args, {"error": str(exc), "best_report": best.to_json() if best else None},
                  f"{exc}\n" + (_report_text(best) if best else ""))
            return 1
    notes = [str(w.message) for w in caught if issubclass(w.category, InfeasibleWarning)]
    text = "\n".join(res.map.formatted()) + "\n" + _report_text(res.report)
    text += f"\nprojection seed {res.projection_seed}, attempts {res.attempts}"
    if notes:
        text += "\nwarning: " + "; ".join(notes)
    _emit(args, {"construction": res.to_json(), "warnings": notes}, text)
    return 1 if res.infeasible else 0


def cmd_example(args) -> int:
    if args.name is None:
        _emit(args, {"examples": list(construct.FIXTURE_NAMES)}, "\n".join(construct.FIXTURE_NAMES))
        return 0
    try:
        f = construct.paper_example(args.name)
    except UnknownExampleError as exc:
        raise UsageError(str(exc).strip("'\""))
    _emit(args, {"name": f.name, "variables": list(f.variables), "kind": f.kind,
                 "radius": str(construct.default_radius(args.name)), "components": f.formatted()},
          "\n".join(f.formatted()))
    return 0


def cmd_secant(args) -> int:
    if args.oracle:
        res = secant.measured_dimension(args.m, args.d, args.k, args.prime, args.seed, args.repetitions)
    else:
        res = secant.ah_dimension(args.m, args.d, args.k)
    text = (f"sigma_{args.k}(v_{args.d}(P^{args.m})): ambient {res.ambient_dim}, expected {res.expected_dim}, "
            f"defective {res.defective}, actual {res.actual_dim if res.actual_dim is not None else '-'}"
            f" ({res.source})")
    _emit(args, {"result": res.to_json()}, text)
    return 0


def cmd_apolar(args) -> int:
    text = args.poly
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().strip()
    names = args.vars.split(",") if args.vars else _variables_in(text)
    f = parse_poly(text, names)
    prof = gorenstein.apolar_profile(f)
    gens = gorenstein.annihilator_generators(f, args.max_degree)
    ops = gorenstein.operator_names(names)
    gen_text = [format_poly(g, ops) for g in gens]
    out = [f"f = {format_poly(f, names)}",
           f"length {prof.length}, socle degree {prof.socle_degree}, embedding dimension {prof.embedding_dim}"]
    if prof.hilbert_function is not None:
        out.append("Hilbert function " + ", ".join(map(str, prof.hilbert_function)))
    out.append("annihilator generators:")
    out += [f"  {g}" for g in gen_text]
    _emit(args, {"profile": prof.to_json(), "variables": names, "generators": gen_text}, "\n".join(out))
    return 0


def cmd_audit(args) -> int:
    rep = gorenstein.negligibility_audit(args.k, args.m)
    lines = [f"k = {rep.k}, m = {rep.m}, expected dimension {rep.expected}"]
    for c in rep.cases:
        dim = "-" if c.dimension is None else str(c.dimension)
        lines.append(f"  H={tuple(c.params['H'])!s:<30} {c.case:<52} dim {dim:>5}  {c.verdict}")
    lines.append(f"verdict: {rep.verdict}")
    _emit(args, {"report": rep.to_json()}, "\n".join(lines))
    return 0


def cmd_bounds(args) -> int:
    cells = bounds.table(args.kmax, args.m)
    _emit(args, {"cells": [c.to_json() for c in cells]}, bounds.format_table(cells))
    return 0


COMMANDS = {"verify": cmd_verify, "construct": cmd_construct, "example": cmd_example,
            "secant-dim": cmd_secant, "apolar": cmd_apolar, "decomp-audit": cmd_audit,
            "bounds-table": cmd_bounds}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, KRegularError, ValueError, OSError) as exc:
        print(f"kreg {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
