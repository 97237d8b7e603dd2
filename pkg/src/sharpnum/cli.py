"""Command-line front end.

Every subcommand evaluates expressions in the frozen grammar (docs/GRAMMAR.md)
and emits a deterministic report: JSON with ``--json``, a plain-text rendering
of the same fields otherwise.  No floating point enters any decision; the
displayed ``e**-V`` norm is a formatting of the exact valuation.

Exit codes: 0 verdict, 1 usage error, 2 computation error (structured as
``{"error", "kind", "detail"}``).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

from . import jsonio
from .errors import ParseError, SharpError
from .exprlang import format_gennum, format_value, parse_expr
from .gennum import (
    GenNumber,
    classify,
    distance,
    is_qpositive,
    sharp_norm,
    valuation,
)
from .genpoly import GenPolynomial, identity_check
from .ideals import (
    FgIdeal,
    QuatFgIdeal,
    annihilator_idempotent,
    contains,
    is_dense,
    is_whole_ring,
    norm_ideal,
    quat_annihilator,
    quat_is_dense,
)
from .multipoly import MultiPoly, ann_constant, constant, verify_annihilator
from .quaternion import GenQuaternion, qclassify, qvaluation, scalar_quat
from .gennum import from_scalar


@dataclass(frozen=True)
class Config:
    window: Fraction = Fraction(16)
    verify_n: tuple[Fraction, ...] = (Fraction(1), Fraction(2), Fraction(5),
                                      Fraction(16))


def _parse_n_list(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())


def load_config(path: str) -> Config:
    cfg = Config()
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "default_window":
                cfg = replace(cfg, window=Fraction(value))
            elif key == "verify_n_list":
                cfg = replace(cfg, verify_n=_parse_n_list(value))
            else:
                raise SharpError(f"unknown config key {key!r}")
    return cfg


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on a separator, ignoring occurrences inside brackets."""
    parts, depth, start = [], 0, 0
    for i, c in enumerate(text):
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
        elif c == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]


# ---------------------------------------------------------------------------
# subcommand handlers (each returns a report dict)
# ---------------------------------------------------------------------------


def _classification_fields(c) -> dict:
    out = {"kind": c.kind.value}
    if c.inverse is not None:
        out["inverse"] = format_value(c.inverse)
    if c.witness is not None:
        out["witness"] = format_value(c.witness)
    return out


def cmd_eval(args, cfg: Config) -> dict:
    value = parse_expr(args.expr)
    return {
        "command": "eval",
        "input": args.expr,
        "value": format_value(value),
        "doc": jsonio.value_doc(value),
    }


def cmd_classify(args, cfg: Config) -> dict:
    value = parse_expr(args.expr)
    if isinstance(value, GenQuaternion):
        c = qclassify(value, cfg.window)
    else:
        c = classify(value, cfg.window)
    return {"command": "classify", "input": args.expr,
            **_classification_fields(c)}


def cmd_norm(args, cfg: Config) -> dict:
    value = parse_expr(args.expr)
    v = qvaluation(value) if isinstance(value, GenQuaternion) else sharp_norm(value)
    return {"command": "norm", "input": args.expr, **jsonio.valuation_doc(v)}


def cmd_dist(args, cfg: Config) -> dict:
    a, b = parse_expr(args.lhs), parse_expr(args.rhs)
    if isinstance(a, GenQuaternion) or isinstance(b, GenQuaternion):
        a = a if isinstance(a, GenQuaternion) else scalar_quat(a)
        b = b if isinstance(b, GenQuaternion) else scalar_quat(b)
        v = qvaluation(a - b)
    else:
        v = distance(a, b)
    return {"command": "dist", "inputs": [args.lhs, args.rhs],
            **jsonio.valuation_doc(v)}


def cmd_order(args, cfg: Config) -> dict:
    value = parse_expr(args.expr)
    if not isinstance(value, GenNumber):
        raise SharpError("q-positivity applies to scalars")
    return {"command": "order", "input": args.expr,
            "qpositive": is_qpositive(value).value}


def cmd_quat(args, cfg: Config) -> dict:
    value = parse_expr(args.expr)
    if isinstance(value, GenNumber):
        value = scalar_quat(value)
    c = qclassify(value, cfg.window)
    v = qvaluation(value)
    return {"command": "quat", "input": args.expr,
            **_classification_fields(c), **jsonio.valuation_doc(v)}


def _parse_gens(text: str):
    gens = [parse_expr(part) for part in split_top_level(text, ";")]
    if not gens:
        raise SharpError("no generators given")
    return gens


def cmd_ideal(args, cfg: Config) -> dict:
    gens = _parse_gens(args.gens)
    report = {"command": "ideal", "op": args.op, "gens": [format_value(g) for g in gens]}
    if any(isinstance(g, GenQuaternion) for g in gens):
        if args.op == "member":
            raise SharpError("membership is defined for scalar ideals")
        ideal = QuatFgIdeal(tuple(g if isinstance(g, GenQuaternion) else scalar_quat(g)
                                  for g in gens))
        scalars = norm_ideal(ideal)
        report.update({
            "support": _indexset_str(scalars.support()),
            "annihilator": format_gennum(quat_annihilator(ideal)),
            "dense": quat_is_dense(ideal),
            "whole_ring": is_whole_ring(scalars),
        })
        return report
    ideal = FgIdeal(tuple(gens))
    report.update({
        "support": _indexset_str(ideal.support()),
        "annihilator": format_gennum(annihilator_idempotent(ideal)),
        "dense": is_dense(ideal),
        "whole_ring": is_whole_ring(ideal),
    })
    if args.op == "member":
        if args.elem is None:
            raise SharpError("member needs --elem")
        elem = parse_expr(args.elem)
        if not isinstance(elem, GenNumber):
            raise SharpError("membership is defined for scalar elements")
        report["member"] = contains(ideal, elem)
    return report


def _indexset_str(s) -> str:
    from .exprlang import format_indexset
    return format_indexset(s)


def cmd_holo(args, cfg: Config) -> dict:
    coeffs = []
    for part in split_top_level(args.poly, ";"):
        c = parse_expr(part)
        if not isinstance(c, GenNumber):
            raise SharpError("polynomial coefficients must be scalars")
        coeffs.append(c)
    f = GenPolynomial(tuple(coeffs))
    at = parse_expr(args.at)
    if not isinstance(at, GenNumber):
        raise SharpError("the expansion point must be a scalar")
    verify_n = _parse_n_list(args.verify_n) if args.verify_n else cfg.verify_n
    result = identity_check(f, at, verify_n)
    from .gennum import alpha, valuation as _val
    valuations = []
    if result.idempotent is not None:
        valuations = [_val(result.idempotent * alpha(n)).value_str()
                      for n in result.verified_n]
    return {
        "command": "holo",
        "poly": [format_gennum(c) for c in f.coeffs],
        "at": args.at,
        "dense": result.dense,
        "idempotent": None if result.idempotent is None
                      else format_gennum(result.idempotent),
        "verified_n": [str(n) for n in result.verified_n],
        "valuations": valuations,
    }


_TERM_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_multipoly(nvars: int, text: str) -> MultiPoly:
    """Term list syntax: ``(<expr>)*x1^a*x2^b, ...``; factors optional."""
    total = constant(nvars, from_scalar(0))
    from .multipoly import padd, multi_poly
    for term_text in split_top_level(text, ","):
        coeff = from_scalar(1)
        expo = [0] * nvars
        for factor in split_top_level(term_text, "*"):
            m = _TERM_VAR.match(factor)
            if m:
                i = int(m.group(1))
                if not 1 <= i <= nvars:
                    raise SharpError(f"variable x{i} out of range for {nvars} variables")
                expo[i - 1] += int(m.group(2) or "1")
                continue
            if factor.startswith("(") and factor.endswith(")"):
                factor = factor[1:-1]
            value = parse_expr(factor)
            if not isinstance(value, GenNumber):
                raise SharpError("coefficients must be scalars")
            coeff = coeff * value
        total = padd(total, multi_poly(nvars, {tuple(expo): coeff}))
    return total


def cmd_polyann(args, cfg: Config) -> dict:
    f = parse_multipoly(args.vars, args.poly)
    ann = ann_constant(f)
    verified = verify_annihilator(f, ann, args.trials)
    return {
        "command": "polyann",
        "vars": args.vars,
        "poly": args.poly,
        "annihilator": format_gennum(ann),
        "verified": verified,
    }


def cmd_selftest(args, cfg: Config) -> dict:
    from . import acceptance
    numbers = None
    if args.criteria:
        numbers = [int(n) for n in args.criteria.split(",")]
    results = acceptance.run_all(numbers)
    return {
        "command": "selftest",
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                      "checked": r.checked, "detail": r.detail}
                     for r in results],
        "all_passed": all(r.passed for r in results),
    }


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="sharpnum", description=__doc__,
                   formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--window", help="truncation window for inverses and roots")
    p.add_argument("--config", help="path to key=value config file")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("eval", help="evaluate an expression to canonical form")
    s.add_argument("--expr", required=True)
    s.set_defaults(handler=cmd_eval)

    for name, handler in (("classify", cmd_classify), ("norm", cmd_norm),
                          ("order", cmd_order), ("quat", cmd_quat)):
        s = sub.add_parser(name)
        s.add_argument("expr")
        s.set_defaults(handler=handler)

    s = sub.add_parser("dist", help="sharp distance valuation")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.set_defaults(handler=cmd_dist)

    s = sub.add_parser("ideal", help="finitely generated ideal analysis")
    s.add_argument("op", choices=("dense", "ann", "member", "whole"))
    s.add_argument("--gens", required=True)
    s.add_argument("--elem")
    s.set_defaults(handler=cmd_ideal)

    s = sub.add_parser("holo", help="identity-theorem criterion for polynomials")
    s.add_argument("op", choices=("check",))
    s.add_argument("--poly", required=True, help="coefficients a0;a1;...")
    s.add_argument("--at", required=True)
    s.add_argument("--verify-n", dest="verify_n")
    s.set_defaults(handler=cmd_holo)

    s = sub.add_parser("polyann", help="constant annihilator of a multivariate polynomial")
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(handler=cmd_polyann)

    s = sub.add_parser("selftest", help="run the acceptance suites")
    s.add_argument("--criteria", help="comma-separated criterion numbers")
    s.set_defaults(handler=cmd_selftest)
    return p


def _render_human(report: dict) -> str:
    if report.get("command") == "eval":
        return report["value"]
    if report.get("command") == "selftest":
        lines = []
        for c in report["criteria"]:
            status = "PASS" if c["passed"] else "FAIL"
            extra = f" -- {c['detail']}" if c["detail"] else ""
            lines.append(f"{status}  {c['number']:2d} {c['name']} "
                         f"({c['checked']} checks){extra}")
        lines.append("all passed" if report["all_passed"] else "FAILURES present")
        return "\n".join(lines)
    skip = {"command", "doc"}
    return "\n".join(f"{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}"
                     for k, v in report.items() if k not in skip)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1

    try:
        cfg = load_config(args.config) if args.config else Config()
        if args.window is not None:
            cfg = replace(cfg, window=Fraction(args.window))
        report = args.handler(args, cfg)
    except (SharpError, ValueError, ZeroDivisionError) as e:
        err = {"error": str(e), "kind": getattr(e, "kind", "computation"),
               "detail": type(e).__name__}
        if isinstance(e, ParseError):
            err["offset"] = e.offset
            err["expected"] = list(e.expected)
        print(json.dumps(err, indent=2))
        return 2

    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(_render_human(report))
    if report.get("command") == "selftest" and not report["all_passed"]:
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
