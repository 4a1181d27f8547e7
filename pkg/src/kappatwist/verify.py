"""Named verification suites with timing and machine-readable reports.

Each suite runs a list of exact checks and records pass/fail plus a
residual rendering on failure.  Suites: algebra, coalgebra, twist,
rmatrix, poincare, and the union `all`.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    DIM,
    ETA,
    Monomial,
    Polynomial,
    act,
    commutator,
    element_str,
    p,
    x,
)
from .hopf import TwistContext
from .scalars import Scalar, UsageError
from .tensor import (
    equal_mod,
    t_mul,
    tau0,
    tensor_str,
)

SUITE_NAMES = ("algebra", "coalgebra", "twist", "rmatrix", "poincare")


@dataclass
class CheckRecord:
    name: str
    passed: bool
    residual: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    order: int
    lam: str
    seed: int
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "order": self.order,
            "lambda": self.lam,
            "seed": self.seed,
            "passed": self.passed,
            # timings are deliberately omitted so that identical inputs
            # give byte-identical JSON
            "checks": [
                {"name": c.name, "passed": c.passed, "residual": c.residual}
                for c in self.checks
            ],
        }

    def render_text(self) -> str:
        lines = [
            f"suite={self.suite} order={self.order} lambda={self.lam} seed={self.seed}"
        ]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"  [{status}] {c.name} ({c.seconds:.2f}s)"
            if not c.passed and c.residual:
                line += f"\n         residual: {c.residual}"
            lines.append(line)
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


class _Recorder:
    def __init__(self, report: VerificationReport):
        self.report = report

    def run(self, name: str, fn):
        t0 = time.monotonic()
        try:
            residual = fn()
            passed = residual is None or residual == ""
            residual_text = "" if passed else str(residual)
        except UsageError as exc:
            passed = False
            residual_text = f"error: {exc}"
        self.report.checks.append(
            CheckRecord(name, passed, residual_text, time.monotonic() - t0)
        )


def _random_element(rng: random.Random, order: int, max_deg: int = 2) -> AlgebraElement:
    out = AlgebraElement.zero(order)
    for _ in range(rng.randint(1, 3)):
        alpha = [0] * DIM
        beta = [0] * DIM
        for _ in range(rng.randint(0, max_deg)):
            alpha[rng.randrange(DIM)] += 1
        for _ in range(rng.randint(0, max_deg)):
            beta[rng.randrange(DIM)] += 1
        coeff = Scalar.from_value(
            Fraction(rng.randint(-4, 4), rng.randint(1, 4)), order
        )
        out = out + AlgebraElement.monomial(
            Monomial(tuple(alpha), tuple(beta)), order
        ).scale(coeff)
    return out


def _random_poly(rng: random.Random, order: int, max_deg: int = 2) -> Polynomial:
    exps = [0] * DIM
    for _ in range(rng.randint(0, max_deg)):
        exps[rng.randrange(DIM)] += 1
    return Polynomial.x_monomial(
        tuple(exps), order, Scalar.from_value(Fraction(rng.randint(1, 3)), order)
    )


# -- suites ---------------------------------------------------------------


def _suite_algebra(rec: _Recorder, ctx: TwistContext, rng: random.Random, quick: bool):
    n = ctx.order

    def heisenberg():
        bad = []
        for mu in range(DIM):
            for nu in range(DIM):
                got = commutator(p(mu, n), x(nu, n))
                want = AlgebraElement.one(n).scale(
                    Scalar.i(n).scale(-ETA[mu] if mu == nu else 0)
                )
                if got != want:
                    bad.append(f"[p{mu},x{nu}]={element_str(got)}")
        return "; ".join(bad)

    rec.run("heisenberg-commutators", heisenberg)

    def associativity():
        trials = 20 if quick else 100
        for _ in range(trials):
            a = _random_element(rng, n)
            b = _random_element(rng, n)
            c = _random_element(rng, n)
            if (a * b) * c != a * (b * c):
                return (
                    f"(a*b)*c != a*(b*c) for a={element_str(a)}, "
                    f"b={element_str(b)}, c={element_str(c)}"
                )
        return ""

    rec.run("product-associativity", associativity)

    def action_composition():
        trials = 10 if quick else 40
        for _ in range(trials):
            a = _random_element(rng, n)
            b = _random_element(rng, n)
            f = _random_poly(rng, n)
            lhs = act(a * b, f)
            rhs = act(a, act(b, f))
            if lhs != rhs:
                return f"(ab)|>f != a|>(b|>f) for a={element_str(a)}, b={element_str(b)}"
        return ""

    rec.run("module-action-composition", action_composition)


def _suite_coalgebra(rec: _Recorder, ctx: TwistContext, rng: random.Random, quick: bool):
    def generator_limits():
        bad = []
        for name in ("x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"):
            d = ctx.generator_coproduct(name)
            limit = d.a0_limit()
            d0 = ctx.coproduct0(ctx.generator(name))
            if limit != d0:
                bad.append(name)
        return "nonprimitive a0-limit: " + ", ".join(bad) if bad else ""

    rec.run("coproduct-a0-limit", generator_limits)

    def homomorphism():
        trials = 5 if quick else 20
        for _ in range(trials):
            a = _random_element(rng, ctx.order, max_deg=1)
            b = _random_element(rng, ctx.order, max_deg=1)
            lhs = ctx.coproduct(a * b)
            rhs = t_mul(ctx.coproduct(a), ctx.coproduct(b))
            if not equal_mod(lhs, rhs, ctx.R):
                return f"Delta(ab) != Delta(a)Delta(b) for a={element_str(a)}, b={element_str(b)}"
        return ""

    rec.run("coproduct-homomorphism", homomorphism)

    def two_routes():
        for name in ("x1", "p1", "x0", "p0"):
            a = ctx.generator(name)
            if not equal_mod(ctx.coproduct(a * a), ctx.coproduct_hom(a * a), ctx.R):
                return f"twist route != generator route on {name}^2"
        return ""

    rec.run("coproduct-two-routes", two_routes)


def _suite_twist(rec: _Recorder, ctx: TwistContext, rng: random.Random, quick: bool):
    rec.run(
        "cocycle-condition",
        lambda: "" if ctx.verify_cocycle() else "two-sided cocycle products differ",
    )
    rec.run(
        "counit-normalization",
        lambda: "" if ctx.verify_counit() else "(eps ox id)F != 1",
    )

    def star_flip():
        trials = 6 if quick else 16
        for _ in range(trials):
            f = _random_poly(rng, ctx.order)
            g = _random_poly(rng, ctx.order)
            if ctx.star_product(f, g, "F") != ctx.star_product(g, f, "Ftilde"):
                return "star-product flip identity failed"
        return ""

    rec.run("star-product-flip", star_flip)


def _suite_rmatrix(rec: _Recorder, ctx: TwistContext, rng: random.Random, quick: bool):
    def r_inverse():
        if tau0(ctx.rmatrix()) == ctx.rmatrix_inverse():
            return ""
        return "tau0(R) != R^-1"

    rec.run("rmatrix-flip-inverse", r_inverse)

    def opposite_coproduct():
        names = ("x1", "p1") if quick else ("x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3")
        for name in names:
            h = ctx.generator(name)
            lhs = ctx.coproduct_opposite(h)
            rhs = ctx.rmatrix_conjugate(h)
            if lhs != rhs:
                return f"opposite coproduct != R-conjugated coproduct on {name}"
        return ""

    rec.run("rmatrix-intertwines-coproducts", opposite_coproduct)

    def factorization():
        # F_op F^-1 agrees with exp(rho) modulo nothing: both are literal
        # tensor elements.
        lhs = t_mul(ctx.twist_opposite(), ctx.twist_inverse())
        if lhs == ctx.rmatrix():
            return ""
        return "Ftilde F^-1 != exp(rho)"

    rec.run("rmatrix-twist-factorization", factorization)


def _suite_poincare(rec: _Recorder, ctx: TwistContext, rng: random.Random, quick: bool):
    from .poincare import (
        boost_coproduct_closed_form,
        kappa_commutator_check,
        lorentz_algebra_check,
        lorentz_coproduct,
        momentum_sector_closed_forms,
        realization,
    )

    rec.run(
        "kappa-coordinate-commutators",
        lambda: "" if kappa_commutator_check(ctx) else "[xhat,xhat] structure failed",
    )

    cases = ("i",) if quick else ("i", "ii", "iii")
    for case in cases:
        if case == "ii" and ctx.lam not in (None, Fraction(1, 2)):
            continue
        case_ctx = ctx if case != "ii" else TwistContext(ctx.order, Fraction(1, 2))
        real = realization(case, case_ctx)

        def algebra_closure(real=real, case_ctx=case_ctx):
            failures = [c.name for c in lorentz_algebra_check(real, case_ctx) if not c.passed]
            return "closure failed: " + ", ".join(failures) if failures else ""

        rec.run(f"lorentz-closure-case-{case}", algebra_closure)

        def momentum_sector(real=real, case_ctx=case_ctx):
            failures = [
                c.name for c in momentum_sector_closed_forms(real, case_ctx) if not c.passed
            ]
            return "momentum sector failed: " + ", ".join(failures) if failures else ""

        rec.run(f"momentum-sector-case-{case}", momentum_sector)

        def closed_coproduct(real=real, case_ctx=case_ctx):
            d = lorentz_coproduct(1, real, case_ctx)
            c = boost_coproduct_closed_form(1, real, case_ctx)
            if d != c:
                return "boost coproduct != closed form:\n" + tensor_str(d - c)
            return ""

        rec.run(f"boost-coproduct-case-{case}", closed_coproduct)


_SUITES = {
    "algebra": _suite_algebra,
    "coalgebra": _suite_coalgebra,
    "twist": _suite_twist,
    "rmatrix": _suite_rmatrix,
    "poincare": _suite_poincare,
}


def run_suite(
    suite: str,
    order: int = 3,
    lam=None,
    seed: int = 0,
    quick: bool = False,
) -> VerificationReport:
    """Run one suite (or 'all') and return the report."""
    if suite != "all" and suite not in _SUITES:
        raise UsageError(
            f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)} or 'all'"
        )
    ctx = TwistContext(order=order, lam=lam)
    lam_text = "sym" if lam is None else str(Fraction(lam))
    report = VerificationReport(suite, order, lam_text, seed)
    rec = _Recorder(report)
    rng = random.Random(seed)
    names = SUITE_NAMES if suite == "all" else (suite,)
    for name in names:
        _SUITES[name](rec, ctx, rng, quick)
    return report
