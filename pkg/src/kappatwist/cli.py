"""Command-line interface.

Subcommands:

    coproduct  -- print the closed-form coproduct of a generator after
                  verifying it against the computed one (twist or
                  homomorphism route)
    rexpand    -- solve the perturbative R-matrix expansion at one order
    verify     -- run a named verification suite
    eval       -- parse, elaborate and print an expression, optionally
                  canonicalized against a relation set

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or parse error.  JSON output has sorted keys and is byte-stable
for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import AlgebraElement, element_str
from .hopf import TwistContext
from .parser import ParseError, elaborate, parse
from .scalars import UsageError
from .tensor import TensorElement, canonicalize, equal_mod, tensor_str
from .verify import run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _parse_lambda(text: str):
    if text == "sym":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid twist parameter {text!r}") from exc


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(", ", ": ")))


# -- closed-form coproduct table -----------------------------------------


def _closed_form_string(node, case: str | None) -> str:
    """Reference rendering of the coproduct of a single generator."""
    kind = node[0]
    if kind == "Z" and node[1] is None:
        kind, node = "gen", ("gen", "Z")
    if kind == "gen":
        name = node[1]
        if name in ("x1", "x2", "x3"):
            return f"Z^[lam-1] ox {name}"
        if name == "x0":
            return "x0 ox 1 + a0*(1-lam) ox S"
        if name in ("p1", "p2", "p3"):
            return f"{name} ox Z^[-lam] + Z^[1-lam] ox {name}"
        if name in ("p0", "A", "S"):
            return f"{name} ox 1 + 1 ox {name}"
        if name == "Z":
            return "Z ox Z"
        raise UsageError(f"no closed-form coproduct table entry for {name!r}")
    if kind == "M":
        i, j = node[1], node[2]
        g = f"M[{i},{j}]"
        return f"{g} ox 1 + 1 ox {g}"
    if kind == "Mhat":
        i = node[1]
        others = [j for j in (1, 2, 3) if j != i]
        g = f"Mhat[{i},0]"
        if case is None:
            raise UsageError("boost coproducts need --case i|ii|iii")
        if case == "i":
            parts = [f"{g} ox 1 + Z ox {g}"]
            for j in others:
                parts.append(f"- a0*Z^[lam]*p{j} ox M[{i},{j}]")
            return " ".join(parts)
        if case == "ii":
            parts = [f"{g} ox Z^[-1/2] + Z^[1/2] ox {g}"]
            for j in others:
                parts.append(f"+ 1/2*a0*M[{i},{j}]*Z^[1/2] ox p{j}")
            for j in others:
                parts.append(f"- 1/2*a0*p{j} ox M[{i},{j}]*Z^[-1/2]")
            return " ".join(parts)
        if case == "iii":
            return (
                f"x{i}*p0 ox Z^[lam] + Z^[lam-1] ox x{i}*p0"
                f" - x0*p{i} ox Z^[-lam] - Z^[1-lam] ox x0*p{i}"
                f" - a0*(1-lam)*p{i} ox S*Z^[-lam]"
                f" + a0*lam*S*Z^[1-lam] ox p{i}"
            )
        raise UsageError(f"unknown case {case!r}")
    raise UsageError("--gen must name a single generator")


def _computed_coproduct(node, ctx: TwistContext, case: str | None, method: str):
    from .poincare import lorentz_coproduct, realization, rotation_coproduct

    kind = node[0]
    if kind == "Z" and node[1] is None:
        kind, node = "gen", ("gen", "Z")
    if kind == "gen":
        h = ctx.generator(node[1])
        return ctx.coproduct(h) if method == "twist" else ctx.coproduct_hom(h)
    if kind == "M":
        return rotation_coproduct(node[1], node[2], ctx, method=method)
    if kind == "Mhat":
        if case is None:
            raise UsageError("boost coproducts need --case i|ii|iii")
        real = realization(case, ctx)
        return lorentz_coproduct(node[1], real, ctx, method=method)
    raise UsageError("--gen must name a single generator")


def _cmd_coproduct(args) -> int:
    lam = _parse_lambda(args.lam)
    case = args.case
    node = parse(args.gen)
    if node[0] == "Mhat" and case == "ii" and lam is None:
        lam = Fraction(1, 2)
    ctx = TwistContext(order=args.order, lam=lam)
    closed_text = _closed_form_string(node, case)
    closed = canonicalize(
        _as_tensor(elaborate(parse(closed_text), ctx, case), ctx), ctx.R
    )
    computed = _computed_coproduct(node, ctx, case, args.method)
    verified = computed == closed
    payload = {
        "subcommand": "coproduct",
        "generator": args.gen,
        "case": case,
        "lambda": args.lam if lam is None else str(lam),
        "order": args.order,
        "method": args.method,
        "closed_form": closed_text,
        "canonical": tensor_str(computed),
        "verified": verified,
    }
    if args.format == "json":
        _emit_json(payload)
    else:
        print(closed_text)
        if not verified:
            print("verification FAILED; canonical residual:", file=sys.stderr)
            print(tensor_str(computed - closed), file=sys.stderr)
    return EXIT_OK if verified else EXIT_FAIL


def _as_tensor(value, ctx: TwistContext) -> TensorElement:
    if isinstance(value, TensorElement):
        return value
    from .tensor import tensor

    return tensor(value, AlgebraElement.one(ctx.order))


# -- rexpand --------------------------------------------------------------

_K1_LABELS = {
    "Mh_i0 ox p_i": "c1",
    "Mh_i0*p_i ox 1": "c2",
    "1 ox Mh_i0*p_i": "d1",
    "p_i ox Mh_i0": "d2",
}


def _coefficient_strings(result) -> dict[str, str]:
    """Coefficient name -> value, or a linear expression in the free
    parameters t1, t2, ... for parametric orders."""
    from .rexpand import PARAM_NAMES, _PARAM_POSITIONS

    sol = result.solution
    out = {}
    index = {t.name: i for i, t in enumerate(result.terms)}
    # for the named k=3 family, express free coordinates through
    # alpha1/beta1/alpha2 when that renaming is invertible
    labels = [f"t{m + 1}" for m in range(len(sol.nullspace))]
    for i, t in enumerate(result.terms):
        pieces = []
        base = sol.particular[i]
        if base:
            pieces.append(str(base))
        for m, vec in enumerate(sol.nullspace):
            v = vec[i]
            if not v:
                continue
            coeff = str(v)
            if coeff == "1":
                pieces.append(labels[m])
            elif coeff == "-1":
                pieces.append(f"-{labels[m]}")
            else:
                pieces.append(f"{coeff}*{labels[m]}")
        out[t.name] = " + ".join(pieces).replace("+ -", "- ") if pieces else "0"
    return out


def _linear_combination_string(result) -> str:
    """LaTeX-like rendering of r_k as -i a0^k ( sum of coeff * term )."""
    coeffs = _coefficient_strings(result)
    pieces = []
    for t in result.terms:
        c = coeffs[t.name]
        if c == "0":
            continue
        body = t.name.replace(" ox ", r" \otimes ")
        pieces.append(f"({c}) {body}")
    inner = " + ".join(pieces) if pieces else "0"
    return f"-i a0^{result.order} [ {inner} ]"


def _cmd_rexpand(args) -> int:
    from .poincare import realization
    from .rexpand import expand, named_parameters

    lam = _parse_lambda(args.lam)
    if lam is None:
        lam = Fraction(1, 2)
    order = args.truncation if args.truncation else max(args.order, 2)
    ctx = TwistContext(order=order, lam=lam)
    real = realization(args.case, ctx)
    results = expand(args.order, real, ctx)
    result = results[-1]
    at_order = result.order == args.order
    reached = at_order and result.status != "infeasible"
    payload = {
        "subcommand": "rexpand",
        "case": args.case,
        "lambda": str(lam),
        "order": args.order,
        "truncation": order,
        "status": result.status if at_order else "blocked",
        "ansatz_size": len(result.terms),
        "equations": result.equations,
        "dimension": result.dimension,
        "coefficients": _coefficient_strings(result) if reached else {},
        "linear_combination": _linear_combination_string(result) if reached else "",
        "verified_order": args.order <= 3,
    }
    if reached and args.order == 1:
        payload.update(
            {
                _K1_LABELS[name]: value
                for name, value in payload["coefficients"].items()
            }
        )
    if reached and result.order == 3 and result.status == "parametric":
        payload["parameters"] = {
            k: str(v) for k, v in named_parameters(result).items()
        }
    if args.format == "json":
        _emit_json(payload)
    else:
        print(
            f"order {result.order}: {result.status}"
            f" (ansatz {len(result.terms)}, equations {result.equations},"
            f" dimension {result.dimension})"
        )
        if reached and result.status != "infeasible":
            print("r_%d = %s" % (result.order, _linear_combination_string(result)))
        if not payload["verified_order"]:
            print("note: no reference data at this order; result unverified")
    return EXIT_OK


# -- verify ---------------------------------------------------------------


def _cmd_verify(args) -> int:
    lam = _parse_lambda(args.lam)
    report = run_suite(
        args.suite, order=args.order, lam=lam, seed=args.seed, quick=args.quick
    )
    if args.format == "json":
        _emit_json(report.to_dict())
    else:
        print(report.render_text())
    return EXIT_OK if report.passed else EXIT_FAIL


# -- eval -----------------------------------------------------------------


def _cmd_eval(args) -> int:
    lam = _parse_lambda(args.lam)
    ctx = TwistContext(order=args.order, lam=lam)
    value = elaborate(parse(args.expr), ctx, args.case)
    if args.canonicalize:
        rel = {"R0": ctx.R0, "R": ctx.R, "Rtilde": ctx.Rtilde}[args.canonicalize]
        value = canonicalize(_as_tensor(value, ctx), rel)
    text = (
        tensor_str(value)
        if isinstance(value, TensorElement)
        else element_str(value)
    )
    if args.format == "json":
        _emit_json(
            {
                "subcommand": "eval",
                "expr": args.expr,
                "canonicalize": args.canonicalize,
                "lambda": args.lam,
                "order": args.order,
                "result": text,
                "tensor": isinstance(value, TensorElement),
            }
        )
    else:
        print(text)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    top = _ArgumentParser(
        prog="kappatwist",
        description="Exact symbolic engine for the twist-deformed "
        "Heisenberg and Poincare algebras.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    cp = sub.add_parser("coproduct", help="closed-form generator coproducts")
    cp.add_argument("--gen", required=True, help="generator name, e.g. p1 or Mhat[1,0]")
    cp.add_argument("--case", choices=("i", "ii", "iii"), default=None)
    cp.add_argument("--lambda", dest="lam", default="sym", help="'sym' or a rational")
    cp.add_argument("--order", type=int, default=4)
    cp.add_argument("--method", choices=("twist", "hom"), default="twist")
    cp.add_argument("--format", choices=("text", "json"), default="text")
    cp.set_defaults(func=_cmd_coproduct)

    rx = sub.add_parser("rexpand", help="perturbative R-matrix expansion")
    rx.add_argument("--order", type=int, required=True, help="expansion order k")
    rx.add_argument("--case", choices=("i", "ii", "iii"), default="ii")
    rx.add_argument("--lambda", dest="lam", default="sym")
    rx.add_argument(
        "--truncation", type=int, default=0, help="a0-truncation order (default max(k,2))"
    )
    rx.add_argument("--format", choices=("text", "json"), default="json")
    rx.set_defaults(func=_cmd_rexpand)

    vf = sub.add_parser("verify", help="run a verification suite")
    vf.add_argument(
        "--suite",
        choices=("algebra", "coalgebra", "twist", "rmatrix", "poincare", "all"),
        default="all",
    )
    vf.add_argument("--lambda", dest="lam", default="sym")
    vf.add_argument("--order", type=int, default=3)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--quick", action="store_true")
    vf.add_argument("--format", choices=("text", "json"), default="text")
    vf.set_defaults(func=_cmd_verify)

    ev = sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("expr")
    ev.add_argument("--canonicalize", choices=("R0", "R", "Rtilde"), default=None)
    ev.add_argument("--lambda", dest="lam", default="sym")
    ev.add_argument("--order", type=int, default=4)
    ev.add_argument("--case", choices=("i", "ii", "iii"), default=None)
    ev.add_argument("--format", choices=("text", "json"), default="text")
    ev.set_defaults(func=_cmd_eval)

    return top


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
