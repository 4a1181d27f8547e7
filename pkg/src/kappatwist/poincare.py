"""Generalized Lorentz/Poincare realizations and their coproducts.

The boost generators are built from four profile functions of A,

    Bhat_i = x_i p0 F1(A) - x0 p_i F2(A) + a0 (x_k p_k) p_i F3(A)
             + a0 x_i p^2 F4(A),

with three preset cases: (i) the twist-adapted undeformed Lorentz sector,
(ii) the standard basis (lam = 1/2, deformed [B,B] = -i M cosh A), and
(iii) the naive boosts, whose coalgebra leaves the Poincare span.
Rotations M_ij = x_i p_j - x_j p_i are case independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraElement,
    apply_series,
    commutator,
    p,
    x,
)
from .hopf import TwistContext
from .linsolve import SolutionSpace, solve
from .scalars import (
    GR_I,
    GaussianRational,
    LP_LAM,
    LP_ONE,
    LP_ZERO,
    LambdaPoly,
    OneVarSeries,
    Scalar,
    UsageError,
    series_exp_linear,
)
from .tensor import TensorElement, canonicalize, equal_mod, t_commutator, tensor

SPATIAL = (1, 2, 3)


@dataclass(frozen=True)
class LorentzRealization:
    """Profile functions for the boost ansatz plus a case label."""

    label: str
    f1: OneVarSeries
    f2: OneVarSeries
    f3: OneVarSeries
    f4: OneVarSeries


def _exp_diff_over_u(c1, c2, order: int) -> OneVarSeries:
    """(exp(c1*u) - exp(c2*u)) / u with the top coefficient exact."""
    diff = series_exp_linear(c1, order + 1) - series_exp_linear(c2, order + 1)
    return OneVarSeries(diff.coeffs[1 : order + 2], order)


def realization(case: str, ctx: TwistContext) -> LorentzRealization:
    n = ctx.order
    lam = ctx.lam_poly
    one = LP_ONE
    half = Fraction(1, 2)
    if case in ("i", "case_i"):
        # F1 = (Z^(2-lam) - Z^(-lam)) / (2A), F2 = Z^lam,
        # F3 = (1-lam) Z^lam, F4 = -Z^lam / 2
        f1 = _exp_diff_over_u(LambdaPoly.const(2) - lam, -lam, n) * half
        zlam = series_exp_linear(lam, n)
        return LorentzRealization("case_i", f1, zlam, zlam * (one - lam), zlam * (-half))
    if case in ("ii", "case_ii"):
        if ctx.lam != Fraction(1, 2):
            raise UsageError("case (ii) requires the lam = 1/2 context")
        f1 = _exp_diff_over_u(1, -1, n) * half
        return LorentzRealization(
            "case_ii", f1, OneVarSeries.one(n), OneVarSeries.zero(n), OneVarSeries.zero(n)
        )
    if case in ("iii", "case_iii"):
        return LorentzRealization(
            "case_iii",
            OneVarSeries.one(n),
            OneVarSeries.one(n),
            OneVarSeries.zero(n),
            OneVarSeries.zero(n),
        )
    raise UsageError(f"unknown realization case {case!r}")


def momentum_square(ctx: TwistContext) -> AlgebraElement:
    n = ctx.order
    acc = AlgebraElement.zero(n)
    for k in SPATIAL:
        acc = acc + p(k, n) * p(k, n)
    return acc


def mhat(i: int, real: LorentzRealization, ctx: TwistContext) -> AlgebraElement:
    """Boost generator for the given realization."""
    if i not in SPATIAL:
        raise UsageError("boost index must be spatial (1..3)")
    n = ctx.order
    a0 = Scalar.a0(n)
    A = ctx.A
    out = x(i, n) * p(0, n) * apply_series(real.f1, A)
    out = out - x(0, n) * p(i, n) * apply_series(real.f2, A)
    if not real.f3.is_zero():
        out = out + (ctx.S * p(i, n) * apply_series(real.f3, A)).scale(a0)
    if not real.f4.is_zero():
        out = out + (x(i, n) * momentum_square(ctx) * apply_series(real.f4, A)).scale(a0)
    return out


def mij(i: int, j: int, ctx: TwistContext) -> AlgebraElement:
    """Rotation generator x_i p_j - x_j p_i."""
    if i not in SPATIAL or j not in SPATIAL or i == j:
        raise UsageError("rotation indices must be distinct spatial indices")
    n = ctx.order
    return x(i, n) * p(j, n) - x(j, n) * p(i, n)


def kappa_commutator_check(ctx: TwistContext) -> bool:
    """[xhat_mu, xhat_nu] = i(a_mu xhat_nu - a_nu xhat_mu), a = (a0,0,0,0)."""
    n = ctx.order
    i_a0 = Scalar.i(n) * Scalar.a0(n)
    for mu in range(4):
        for nu in range(4):
            lhs = commutator(ctx.xhat(mu), ctx.xhat(nu))
            rhs = AlgebraElement.zero(n)
            if mu == 0:
                rhs = rhs + ctx.xhat(nu).scale(i_a0)
            if nu == 0:
                rhs = rhs - ctx.xhat(mu).scale(i_a0)
            if lhs != rhs:
                return False
    return True


def lorentz_coproduct(
    i: int, real: LorentzRealization, ctx: TwistContext, method: str = "twist"
) -> TensorElement:
    """Coproduct of the boost, by twist conjugation or by homomorphism."""
    b = mhat(i, real, ctx)
    if method == "twist":
        return ctx.coproduct(b)
    if method in ("hom", "homomorphism"):
        return ctx.coproduct_hom(b)
    raise UsageError("method must be 'twist' or 'homomorphism'")


def rotation_coproduct(
    i: int, j: int, ctx: TwistContext, method: str = "twist"
) -> TensorElement:
    m = mij(i, j, ctx)
    return ctx.coproduct(m) if method == "twist" else ctx.coproduct_hom(m)


def _closed_form_terms(
    i: int, real: LorentzRealization, ctx: TwistContext
) -> list[tuple[str, str, TensorElement]]:
    """Closed-form boost coproduct as labelled tensor terms.

    Each entry is (left_kind, right_kind, term) where a kind classifies the
    non-scalar content of the leg: 'unit', 'momentum' (momenta and Z-powers
    only), 'lorentz' (a boost or rotation times momenta), 'coordinate'
    (a bare x_mu p_nu product that is not a Lorentz combination) or
    'dilatation' (the x_k p_k leg).
    """
    n = ctx.order
    one = ctx.one
    a0 = Scalar.a0(n)
    lam = ctx.lam_poly
    lam_s = Scalar.from_value(lam, n)
    one_s = Scalar.one(n)
    if real.label == "case_i":
        b = mhat(i, real, ctx)
        terms = [
            ("lorentz", "unit", tensor(b, one)),
            ("momentum", "lorentz", tensor(ctx.z(1), b)),
        ]
        for j in SPATIAL:
            if j == i:
                continue
            terms.append(
                (
                    "momentum",
                    "lorentz",
                    -tensor(ctx.z(lam) * p(j, n), mij(i, j, ctx)).scale(a0),
                )
            )
        return terms
    if real.label == "case_ii":
        b = mhat(i, real, ctx)
        half = Fraction(1, 2)
        zp = ctx.z(half)
        zm = ctx.z(-half)
        terms = [
            ("lorentz", "momentum", tensor(b, zm)),
            ("momentum", "lorentz", tensor(zp, b)),
        ]
        for j in SPATIAL:
            if j == i:
                continue
            m = mij(i, j, ctx)
            terms.append(
                ("lorentz", "momentum", tensor(m * zp, p(j, n)).scale(a0 * half))
            )
            terms.append(
                ("momentum", "lorentz", -tensor(p(j, n), m * zm).scale(a0 * half))
            )
        return terms
    if real.label == "case_iii":
        xi_p0 = x(i, n) * p(0, n)
        x0_pi = x(0, n) * p(i, n)
        return [
            ("coordinate", "momentum", tensor(xi_p0, ctx.z(lam))),
            ("momentum", "coordinate", tensor(ctx.z(lam - LP_ONE), xi_p0)),
            ("coordinate", "momentum", -tensor(x0_pi, ctx.z(-lam))),
            ("momentum", "coordinate", -tensor(ctx.z(LP_ONE - lam), x0_pi)),
            (
                "momentum",
                "dilatation",
                -tensor(p(i, n), ctx.S * ctx.z(-lam)).scale(a0 * (one_s - lam_s)),
            ),
            (
                "dilatation",
                "momentum",
                tensor(ctx.S * ctx.z(LP_ONE - lam), p(i, n)).scale(a0 * lam_s),
            ),
        ]
    raise UsageError(f"no closed form recorded for {real.label!r}")


def boost_coproduct_closed_form(
    i: int, real: LorentzRealization, ctx: TwistContext
) -> TensorElement:
    """The published closed forms for the three preset cases, canonical mod R."""
    n = ctx.order
    out = TensorElement.zero(n)
    for _, _, term in _closed_form_terms(i, real, ctx):
        out = out + term
    return canonicalize(out, ctx.R)


def nonpoincare_leg_kinds(
    i: int, real: LorentzRealization, ctx: TwistContext
) -> set[str]:
    """Leg kinds in the boost coproduct that fall outside the Poincare span.

    The closed forms (verified equal to the computed coproducts mod R) use
    only Lorentz-generator and momentum legs for cases (i) and (ii).  Case
    (iii) needs bare coordinate-momentum legs (x_i p0 and x0 p_i appear with
    different cofactors, so they never assemble into the boost) and the
    dilatation x_k p_k: the gl(4)-type content of the extension.
    """
    offending = set()
    for lkind, rkind, _ in _closed_form_terms(i, real, ctx):
        for kind in (lkind, rkind):
            if kind in ("coordinate", "dilatation"):
                offending.add(kind)
    return offending


def case_iii_x_leg_mismatch(i: int, ctx: TwistContext) -> bool:
    """The bare x_i p0 and x0 p_i legs of the case (iii) coproduct carry
    different cofactors, so they cannot be regrouped into the boost.

    Returns True when the mismatch is present (i.e. the coproduct does not
    close in the Poincare span)."""
    from .algebra import Monomial

    real = realization("iii", ctx)
    n = ctx.order

    def unit_exp(mu):
        e = [0, 0, 0, 0]
        e[mu] = 1
        return tuple(e)

    xi_p0 = Monomial(unit_exp(i), unit_exp(0))
    x0_pi = Monomial(unit_exp(0), unit_exp(i))

    # If the coordinate bilinears assembled into M~_{i0} = x_i p0 - x0 p_i,
    # the cofactor of x0 p_i would be minus the cofactor of x_i p0 on each
    # side of the tensor product.
    mismatch = False
    for left_side in (True, False):
        xi_cof = AlgebraElement.zero(n)
        x0_cof = AlgebraElement.zero(n)
        for lkind, rkind, term in _closed_form_terms(i, real, ctx):
            kind = lkind if left_side else rkind
            if kind != "coordinate":
                continue
            for (l, r), s in term.terms.items():
                mono = l if left_side else r
                other = r if left_side else l
                cof = AlgebraElement.monomial(other, n, s)
                if mono == xi_p0:
                    xi_cof = xi_cof + cof
                elif mono == x0_pi:
                    x0_cof = x0_cof + cof
                else:
                    mismatch = True
        if xi_cof != -x0_cof:
            mismatch = True
    return mismatch


def rotation_coproduct_closed_form(i: int, j: int, ctx: TwistContext) -> TensorElement:
    m = mij(i, j, ctx)
    return canonicalize(tensor(m, ctx.one) + tensor(ctx.one, m), ctx.R)


# -- algebra sector ------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: str = ""


def _delta(i: int, j: int) -> int:
    return 1 if i == j else 0


def lorentz_algebra_check(real: LorentzRealization, ctx: TwistContext) -> list[CheckResult]:
    """Commutator structure of the boost/rotation sector.

    Cases (i) and (iii) must reproduce the undeformed structure constants;
    case (ii) deforms only [B_i, B_j] into -i M_ij cosh A.
    """
    n = ctx.order
    i_s = Scalar.i(n)
    boosts = {i: mhat(i, real, ctx) for i in SPATIAL}
    rots = {(i, j): mij(i, j, ctx) for i in SPATIAL for j in SPATIAL if i != j}

    def rot(i, j):
        if i == j:
            return AlgebraElement.zero(n)
        return rots[(i, j)]

    def boost_or_zero(k):
        return boosts[k]

    if real.label == "case_ii":
        cosh = (series_exp_linear(1, n) + series_exp_linear(-1, n)) * Fraction(1, 2)
        cosh_a = apply_series(cosh, ctx.A)
    else:
        cosh_a = ctx.one

    results = []
    for i in SPATIAL:
        for j in SPATIAL:
            if i >= j:
                continue
            lhs = commutator(boosts[i], boosts[j])
            rhs = (rot(i, j) * cosh_a).scale(-i_s)
            results.append(
                CheckResult(
                    f"[B{i},B{j}]",
                    lhs == rhs,
                    "" if lhs == rhs else str(lhs - rhs),
                )
            )
    for i in SPATIAL:
        for j in SPATIAL:
            for k in SPATIAL:
                if j >= k:
                    continue
                lhs = commutator(boosts[i], rot(j, k))
                rhs = (
                    boost_or_zero(j).scale(i_s * _delta(i, k))
                    - boost_or_zero(k).scale(i_s * _delta(i, j))
                )
                results.append(
                    CheckResult(
                        f"[B{i},M{j}{k}]",
                        lhs == rhs,
                        "" if lhs == rhs else str(lhs - rhs),
                    )
                )
    for (i, j) in ((1, 2), (1, 3), (2, 3)):
        for (k, l) in ((1, 2), (1, 3), (2, 3)):
            lhs = commutator(rot(i, j), rot(k, l))
            rhs = -(
                rot(i, l).scale(i_s * _delta(j, k))
                + rot(j, k).scale(i_s * _delta(i, l))
                - rot(i, k).scale(i_s * _delta(j, l))
                - rot(j, l).scale(i_s * _delta(i, k))
            )
            results.append(
                CheckResult(
                    f"[M{i}{j},M{k}{l}]",
                    lhs == rhs,
                    "" if lhs == rhs else str(lhs - rhs),
                )
            )
    return results


def momentum_sector_closed_forms(
    real: LorentzRealization, ctx: TwistContext
) -> list[CheckResult]:
    """[B_i, p_mu] closed forms; every right-hand side is momentum-only.

    [B_i, p0] = i p_i F2(A);
    [B_i, p_j] = i delta_ij (p0 F1(A) + a0 p^2 F4(A)) + i a0 p_i p_j F3(A).
    """
    n = ctx.order
    i_s = Scalar.i(n)
    a0 = Scalar.a0(n)
    psq = momentum_square(ctx)
    results = []
    for i in SPATIAL:
        b = mhat(i, real, ctx)
        lhs = commutator(b, p(0, n))
        rhs = (p(i, n) * apply_series(real.f2, ctx.A)).scale(i_s)
        results.append(CheckResult(f"[B{i},p0]", lhs == rhs))
        for j in SPATIAL:
            lhs = commutator(b, p(j, n))
            rhs = AlgebraElement.zero(n)
            if i == j:
                rhs = rhs + (p(0, n) * apply_series(real.f1, ctx.A)).scale(i_s)
                if not real.f4.is_zero():
                    rhs = rhs + (psq * apply_series(real.f4, ctx.A)).scale(i_s * a0)
            if not real.f3.is_zero():
                rhs = rhs + (
                    p(i, n) * p(j, n) * apply_series(real.f3, ctx.A)
                ).scale(i_s * a0)
            results.append(CheckResult(f"[B{i},p{j}]", lhs == rhs))
    return results


def mhat_from_case_i(i: int, ctx: TwistContext) -> AlgebraElement:
    """Standard-basis boost via the case-(i) generators at lam = 1/2:
    Bhat_i = B_i Z^(-1/2) + (a0/2) M_ij p_j."""
    if ctx.lam != Fraction(1, 2):
        raise UsageError("the M <-> Mhat relation needs lam = 1/2")
    n = ctx.order
    case_i = realization("i", ctx)
    out = mhat(i, case_i, ctx) * ctx.z(Fraction(-1, 2))
    for j in SPATIAL:
        if j == i:
            continue
        out = out + (mij(i, j, ctx) * p(j, n)).scale(
            Scalar.a0(n) * Fraction(1, 2)
        )
    return out


def coproduct_homomorphism_check(
    real: LorentzRealization, ctx: TwistContext, i: int = 1, j: int = 2
) -> bool:
    """Delta([B_i, B_j]) == [Delta B_i, Delta B_j] mod R."""
    bi = mhat(i, real, ctx)
    bj = mhat(j, real, ctx)
    lhs = ctx.coproduct(commutator(bi, bj))
    rhs = canonicalize(
        t_commutator(ctx.coproduct(bi), ctx.coproduct(bj)), ctx.R
    )
    return lhs == rhs


# -- noncommutative coordinate coproducts --------------------------------


def xhat_coproduct(mu: int, ctx: TwistContext) -> TensorElement:
    """Coproduct of xhat_mu: the class of xhat_mu (x) 1, canonical mod R."""
    return canonicalize(tensor(ctx.xhat(mu), ctx.one), ctx.R)


def xhat_coproduct_hom(mu: int, ctx: TwistContext) -> TensorElement:
    """Same coproduct through the generator-homomorphism route."""
    return ctx.coproduct_hom(ctx.xhat(mu))


def xhat_coproduct_compact(mu: int, ctx: TwistContext) -> TensorElement:
    """Z^-1 (x) xhat_mu - a_mu p^L_alpha (x) xhat^alpha, canonical mod R.

    The a_mu p^L_0 product is expanded exactly as 1 - Z^-1, avoiding the
    truncated division by a0.
    """
    n = ctx.order
    zinv = ctx.z(-1)
    out = tensor(zinv, ctx.xhat(mu))
    if mu == 0:
        # -a0 * (eta^{00} p^L_0 (x) xhat_0 + p^L_k (x) xhat_k)
        out = out + tensor(ctx.one - zinv, ctx.xhat(0))
        for k in SPATIAL:
            out = out - tensor(
                p(k, n) * ctx.z(ctx.lam_poly - LP_ONE), ctx.xhat(k)
            ).scale(Scalar.a0(n))
    return canonicalize(out, ctx.R)


def p_leftward(mu: int, ctx: TwistContext) -> AlgebraElement:
    """Leftward momenta: p^L_0 = (1 - Z^-1)/a0, p^L_i = p_i Z^(lam-1).

    The division by a0 shifts the grading down; the top truncation slot of
    p^L_0 is unknowable at this order and is set to zero.
    """
    n = ctx.order
    if mu == 0:
        diff = ctx.one - ctx.z(-1)
        shifted = {}
        for m, s in diff.terms.items():
            if s.components[0]:
                raise UsageError("a0-division of an ungraded element")
            shifted[m] = Scalar(s.components[1:] + (LP_ZERO,), n)
        return AlgebraElement(shifted, n)
    return p(mu, n) * ctx.z(ctx.lam_poly - LP_ONE)


# -- order-a0 coalgebra span test ----------------------------------------


def boost_coproduct_order1_match(
    real: LorentzRealization, ctx: TwistContext, i: int = 1
) -> SolutionSpace:
    """Fit the order-a0 part of the boost coproduct with the rotation-
    invariant order-a0 ansatz built from the boost, rotations and momenta.

    For case (ii) the unique solution reproduces the published first-order
    coefficients.  (Working modulo the relation ideal, first order alone
    does not yet separate case (iii); its non-closure is detected
    structurally by `nonpoincare_leg_kinds`.)
    """
    if ctx.lam is None:
        raise UsageError("span matching needs a rational lam")
    n = ctx.order
    b = mhat(i, real, ctx)
    rots = {j: mij(i, j, ctx) for j in SPATIAL if j != i}
    one = ctx.one

    def sum_rot(builder):
        acc = TensorElement.zero(n)
        for j, m in rots.items():
            acc = acc + builder(j, m)
        return acc

    candidates = [
        tensor(b, p(0, n)),
        tensor(p(0, n), b),
        tensor(b * p(0, n), one),
        tensor(one, b * p(0, n)),
        sum_rot(lambda j, m: tensor(m * p(j, n), one)),
        sum_rot(lambda j, m: tensor(m, p(j, n))),
        sum_rot(lambda j, m: tensor(p(j, n), m)),
        sum_rot(lambda j, m: tensor(one, m * p(j, n))),
    ]
    primitive = tensor(b, one) + tensor(one, b)
    target = ctx.coproduct(b) - canonicalize(primitive, ctx.R)
    columns = [
        canonicalize(c.scale(Scalar.a0(n)), ctx.R) for c in candidates
    ]
    keys = set(target.terms)
    for col in columns:
        keys.update(col.terms)
    rows = []
    rhs = []
    for key in sorted(keys):
        for grade in (0, 1):
            row = [
                _grade_coeff(col.coefficient(key), grade) for col in columns
            ]
            val = _grade_coeff(target.coefficient(key), grade)
            if any(row) or val:
                rows.append(row)
                rhs.append(val)
    return solve(rows, rhs)


def _grade_coeff(s: Scalar, grade: int) -> GaussianRational:
    poly = s.components[grade]
    if poly.degree() > 0:
        raise UsageError("symbolic lam leaked into a numeric system")
    return poly.constant_term()
