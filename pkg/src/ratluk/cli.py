"""Command-line front end.

Exit codes: 0 the property holds, 1 it fails, 2 usage/parse error,
3 cell budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import format_rational, parse_rational
from .decision import Verdict, equivalent, is_satisfiable, is_tautology
from .duality import (
    Presentation,
    QMap,
    PresentationMismatch,
    QMapError,
    dual_hom,
    ideal_member_witness,
    mv_approximant,
    qmap_compose,
    quotient_equal,
    zeroset,
)
from .pwl import CellBudgetExceeded, DimensionError, cell_budget, compile_formula, to_dict
from .semantics import ValuationError, evaluate, random_rational_point
from .syntax import (
    LanguageError,
    ParseError,
    dimension,
    parse,
    parse_ql,
    parse_ratluk,
    to_text,
    translate_i1,
    translate_i2,
)

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3


def _parse(text: str, lang: str):
    if lang == "ql":
        return parse_ql(text)
    if lang == "ratluk":
        return parse_ratluk(text)
    return parse(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _verdict(args, kind: str, v: Verdict, yes: str, no: str) -> int:
    payload = {"command": kind, **v.to_dict()}
    if v.answer:
        text = yes if v.witness is None else f"{yes}; witness {v.witness_text()}"
    else:
        text = no if v.witness is None else f"{no}; witness {v.witness_text()}"
    _emit(args, payload, text)
    return EXIT_HOLDS if v.answer else EXIT_FAILS


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def cmd_eval(args) -> int:
    phi = _parse(args.formula, args.lang)
    n = dimension(phi)
    if args.at is not None:
        point = tuple(parse_rational(s) for s in args.at.split(",")) if args.at.strip() else ()
    else:
        point = random_rational_point(n, args.max_den, args.seed)
    value = evaluate(phi, point)
    _emit(args, {"value": format_rational(value),
                 "point": [format_rational(v) for v in point]}, format_rational(value))
    return EXIT_HOLDS


def cmd_taut(args) -> int:
    return _verdict(args, "taut", is_tautology(_parse(args.formula, args.lang)),
                    "tautology", "not a tautology")


def cmd_sat(args) -> int:
    return _verdict(args, "sat", is_satisfiable(_parse(args.formula, args.lang)),
                    "satisfiable", "unsatisfiable")


def cmd_equiv(args) -> int:
    a = _parse(args.left, args.lang)
    b = _parse(args.right, args.lang)
    return _verdict(args, "equiv", equivalent(a, b), "equivalent", "not equivalent")


def cmd_translate(args) -> int:
    if args.to == "ql":
        out = translate_i1(parse_ratluk(args.formula))
    else:
        out = translate_i2(parse_ql(args.formula))
    _emit(args, {"formula": to_text(out)}, to_text(out))
    return EXIT_HOLDS


def cmd_zeroset(args) -> int:
    phi = _parse(args.formula, args.lang)
    Z = zeroset(compile_formula(phi, args.dim))
    _write(args.output, Z.dumps(indent=None if args.output is None else 2))
    return EXIT_HOLDS


def cmd_ideal_member(args) -> int:
    f = _parse(args.f, args.lang)
    g = _parse(args.g, args.lang)
    n = max(dimension(f), dimension(g), 1)
    w = ideal_member_witness(compile_formula(g, n), compile_formula(f, n))
    v = Verdict(w is None, w)
    return _verdict(args, "ideal-member", v, "g is in (f]", "g is not in (f]")


def cmd_mv_approx(args) -> int:
    phi = _parse(args.formula, args.lang)
    b = mv_approximant(compile_formula(phi, args.dim))
    _write(args.output, json.dumps(to_dict(b)))
    return EXIT_HOLDS


def cmd_compose(args) -> int:
    inner = QMap.from_dict(_load_json(args.m))
    outer = QMap.from_dict(_load_json(args.n))
    out = qmap_compose(outer, inner)
    _write(args.output, out.dumps())
    return EXIT_HOLDS


def cmd_dual(args) -> int:
    lam = QMap.from_dict(_load_json(args.m))
    phi = _parse(args.formula, args.lang)
    hom = dual_hom(lam)
    elem = hom.source.element(compile_formula(phi, lam.codomain.ambient_dim))
    image = hom(elem)
    _write(args.output, json.dumps(to_dict(image.rep)))
    return EXIT_HOLDS


def _presentation(spec: str, lang: str) -> Presentation:
    if os.path.exists(spec):
        data = _load_json(spec)
        if "generator" in data:
            return Presentation.from_dict(data)
        if "formula" in data:
            phi = _parse(data["formula"], lang)
            n = int(data.get("n", max(dimension(phi), 1)))
            return Presentation(n, compile_formula(phi, n))
        raise ValueError(f"{spec}: expected a 'generator' or 'formula' entry")
    phi = _parse(spec, lang)
    n = max(dimension(phi), 1)
    return Presentation(n, compile_formula(phi, n))


def cmd_quotient_eq(args) -> int:
    pres = _presentation(args.presentation, args.lang)
    a = pres.element(compile_formula(_parse(args.a, args.lang), pres.n))
    b = pres.element(compile_formula(_parse(args.b, args.lang), pres.n))
    ok = quotient_equal(a, b)
    return _verdict(args, "quotient-eq", Verdict(ok), "equal in the quotient",
                    "different in the quotient")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ratluk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--max-cells", type=int, default=None, help="cell budget for PWL operations")
    p.add_argument("--seed", type=int, default=0, help="seed for random points")
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="command", required=True)

    def formula_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--lang", choices=["ql", "ratluk", "auto"], default="auto")
        sp.set_defaults(func=fn)
        return sp

    sp = formula_cmd("eval", cmd_eval, "evaluate a formula at a rational point")
    sp.add_argument("--at", help='comma-separated point, e.g. "1/3,1/2" (random if omitted)')
    sp.add_argument("--max-den", type=int, default=12)
    sp.add_argument("formula")

    formula_cmd("taut", cmd_taut, "decide tautologyhood").add_argument("formula")
    formula_cmd("sat", cmd_sat, "decide satisfiability").add_argument("formula")

    sp = formula_cmd("equiv", cmd_equiv, "decide semantic equivalence")
    sp.add_argument("left")
    sp.add_argument("right")

    sp = sub.add_parser("translate", help="translate between the two logics")
    sp.add_argument("--to", choices=["ql", "ratluk"], required=True)
    sp.add_argument("formula")
    sp.set_defaults(func=cmd_translate)

    sp = formula_cmd("zeroset", cmd_zeroset, "write the zeroset polyhedron")
    sp.add_argument("-o", "--output")
    sp.add_argument("--dim", type=int)
    sp.add_argument("formula")

    sp = formula_cmd("ideal-member", cmd_ideal_member, "decide g ∈ (f]")
    sp.add_argument("-f", required=True)
    sp.add_argument("-g", required=True)

    sp = formula_cmd("mv-approx", cmd_mv_approx, "integer-coefficient generator of (f]")
    sp.add_argument("-o", "--output")
    sp.add_argument("--dim", type=int)
    sp.add_argument("formula")

    sp = sub.add_parser("compose", help="compose Q-maps: -n after -m")
    sp.add_argument("-m", required=True, help="inner map file (applied first)")
    sp.add_argument("-n", required=True, help="outer map file")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_compose)

    sp = formula_cmd("dual", cmd_dual, "apply f ↦ f∘λ to a formula over the codomain")
    sp.add_argument("-m", required=True, help="Q-map file")
    sp.add_argument("-o", "--output")
    sp.add_argument("formula")

    sp = formula_cmd("quotient-eq", cmd_quotient_eq, "decide equality modulo (f]")
    sp.add_argument("-p", "--presentation", required=True,
                    help="presentation file, or the generator as a formula")
    sp.add_argument("a")
    sp.add_argument("b")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_HOLDS
    try:
        if args.max_cells is not None:
            with cell_budget(args.max_cells):
                return args.func(args)
        return args.func(args)
    except CellBudgetExceeded as exc:
        print(f"error: cell budget exceeded ({exc})", file=sys.stderr)
        return EXIT_BUDGET
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.pos}^", file=sys.stderr)
        return EXIT_ERROR
    except (LanguageError, ValuationError, DimensionError, QMapError,
            PresentationMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
