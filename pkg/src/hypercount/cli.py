"""Command line front end: ``hypercount {toric,adhm,quiver,verify}``.

Exit status: 0 on success, 1 for invalid input or an exhausted budget, 2 when
an exactness check inside the computation fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any

from .adhm import adhm_count, adhm_poincare_series, grand_series
from .algebra import InexactDivision, LaurentPolynomial, RationalFunction, TruncatedMultiSeries
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    InsufficientPrimes,
    OracleError,
    RepresentationInstance,
    brute_force_count,
    character_sum_count,
    interpolate_count,
)
from .quiver import InvalidQuiver, QuiverQuery, quiver_count, quiver_table
from .quiver import FormulaError as QuiverFormulaError
from .adhm import FormulaError as AdhmFormulaError
from .toric import FormulaError as ToricFormulaError
from .toric import InvalidInstance, ToricInstance, check_level, toric_summary

log = logging.getLogger("hypercount")

INTERNAL_ERRORS = (InexactDivision, OracleError, ToricFormulaError, AdhmFormulaError, QuiverFormulaError)


class UsageError(ValueError):
    pass


def _render(value: Any, fmt: str) -> Any:
    if isinstance(value, (LaurentPolynomial, RationalFunction, TruncatedMultiSeries)):
        return value.to_json() if fmt == "json" else str(value)
    if isinstance(value, dict):
        return {k: _render(v, fmt) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v, fmt) for v in value]
    return value


def _load_json(path: str | None, inline: str | None, what: str) -> dict:
    if (path is None) == (inline is None):
        raise UsageError(f"give exactly one of --instance or --inline for {what}")
    if path is not None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        source = path
    else:
        text, source = inline, "--inline"
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return data


def _parse_primes(text: str) -> list[int]:
    try:
        primes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--primes expects a comma-separated list of integers, got {text!r}") from None
    if not primes:
        raise UsageError("--primes is empty")
    return primes


def _parse_vector(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer vector, got {text!r}") from None


def cmd_toric(args) -> dict:
    data = _load_json(args.instance, args.inline, "toric")
    if isinstance(data, list):
        data = {"matrix": data}
    inst = ToricInstance.from_json(data)
    generic = check_level(inst)
    out = toric_summary(inst)
    if inst.xi is not None:
        out["xi_generic"] = generic
    return out


def cmd_adhm(args) -> dict:
    if args.k < 0 or args.nmax < 1:
        raise UsageError("need --k >= 0 and --nmax >= 1")
    out: dict[str, Any] = {"k": args.k, "nmax": args.nmax}
    if args.poincare:
        if args.k == 0:
            raise UsageError("the Poincare series needs k >= 1 (M(n, 0) is empty)")
        series = adhm_poincare_series(args.k, args.nmax)
        out["poincare"] = [series[(n,)].as_laurent() for n in range(args.nmax + 1)]
    else:
        grand_series(args.k, args.nmax)
        out["counts"] = [LaurentPolynomial.constant(1)] + [adhm_count(n, args.k) for n in range(1, args.nmax + 1)]
    return out


def cmd_quiver(args) -> dict:
    data = _load_json(args.instance, args.inline, "quiver")
    vmax = _parse_vector(args.vmax)
    if vmax is not None:
        data = dict(data, vmax=vmax)
    query = QuiverQuery.from_json(data)
    return {"quiver": query.to_json(), "records": quiver_table(query)}


def cmd_verify(args) -> dict:
    data = _load_json(args.instance, args.inline, "verify")
    inst = RepresentationInstance.from_json(data)
    primes = _parse_primes(args.primes)
    per_prime = []
    for p in primes:
        lhs = brute_force_count(inst, p, args.budget, args.workers)
        rhs = character_sum_count(inst, p, budget=args.budget, workers=args.workers)
        g = inst.group_order(p)
        per_prime.append(
            {
                "p": p,
                "bad": inst.is_bad_prime(p),
                "brute_force": lhs,
                "character_sum": rhs,
                "group_order": g,
                "variety_count": lhs // g if lhs % g == 0 else None,
                "equal": lhs == rhs,
            }
        )
    closed = _closed_form(inst)
    interp = None
    reason = None
    try:
        res = interpolate_count(inst, primes, args.degree_bound, args.budget, args.workers)
        interp = res.polynomial
    except InsufficientPrimes as exc:
        reason = str(exc)
    ok = all(r["equal"] for r in per_prime)
    if closed is not None:
        if interp is not None:
            ok = ok and interp == closed
        for r in per_prime:
            if not r["bad"]:
                ok = ok and r["variety_count"] == closed(r["p"])
    out = {
        "instance": data,
        "primes": per_prime,
        "interpolant": interp,
        "closed_form": closed,
        "verdict": "match" if ok else "mismatch",
    }
    if reason:
        out["interpolation_skipped"] = reason
    return out


def _closed_form(inst: RepresentationInstance) -> LaurentPolynomial | None:
    if inst.kind == "toric":
        return toric_summary(inst.toric)["count"]
    return quiver_count(QuiverQuery(inst.quiver, inst.w, inst.v), inst.v)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercount", description="Exact point counts and Poincare polynomials of hyperkahler quotients.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cap on enumerated linear solves")

    p = sub.add_parser("toric", help="toric hyperkahler variety of a weight matrix")
    p.add_argument("--instance")
    p.add_argument("--inline", help='JSON matrix, e.g. "[[1,1]]", or a full instance object')
    common(p)
    p.set_defaults(func=cmd_toric)

    p = sub.add_parser("adhm", help="twisted ADHM spaces / Hilbert schemes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--counts", action="store_true")
    mode.add_argument("--poincare", action="store_true")
    common(p)
    p.set_defaults(func=cmd_adhm)

    p = sub.add_parser("quiver", help="framed Nakajima quiver varieties")
    p.add_argument("--instance")
    p.add_argument("--inline")
    p.add_argument("--vmax", help="override the truncation box, e.g. 2,1")
    common(p)
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("verify", help="compare formulas with finite-field counts")
    p.add_argument("--instance")
    p.add_argument("--inline")
    p.add_argument("--primes", default="2,3,5")
    p.add_argument("--degree-bound", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _text(result: dict) -> str:
    lines = []
    for key, value in result.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for row in value:
                lines.append("  " + ", ".join(f"{k}={v}" for k, v in row.items()))
        elif isinstance(value, list) and key in ("counts", "poincare"):
            lines.append(f"{key}:")
            for n, v in enumerate(value):
                lines.append(f"  T^{n}: {v}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        result = args.func(args)
    except (UsageError, InvalidInstance, InvalidQuiver, BudgetExceeded, InsufficientPrimes) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 1
    except INTERNAL_ERRORS as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 2
    rendered = _render(result, args.format)
    if args.format == "json":
        stdout.write(json.dumps(rendered, sort_keys=True) + "\n")
    else:
        stdout.write(_text(rendered) + "\n")
    if isinstance(result, dict) and result.get("verdict") == "mismatch":
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
