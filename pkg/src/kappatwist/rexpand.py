"""Perturbative re-expression of the universal R-matrix in Poincare
generators.

We look for r_1, r_2, ... with R = exp(r_1 + r_2 + ...), where r_k starts
at a0^k and is linear in the Lorentz generators (no momenta-only terms).
Order by order, the Baker-Campbell-Hausdorff remainder of the already-known
orders is matched against a rotation-invariant ansatz, with all comparisons
done in the canonical form modulo the flipped relation set R~ and the
twist parameter specialized to a rational value (1/2 for the standard
basis).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraElement, p
from .hopf import TwistContext
from .linsolve import SolutionSpace, solve
from .poincare import SPATIAL, LorentzRealization, mhat, mhat_from_case_i, mij
from .scalars import GR_ZERO, GaussianRational, Scalar, UsageError
from .tensor import TensorElement, canonicalize, t_exp, tau0, tensor

I_NEG = GaussianRational(0, -1)


@dataclass(frozen=True)
class AnsatzTerm:
    """One rotation-invariant basis term of the order-k ansatz.

    `element` is the bare invariant sum (no a0 power, no -i); the candidate
    r_k is -i a0^k times a rational combination of these.  The recipe
    fields (kind, taken, rest, side) record how the term was assembled so
    it can be rebuilt with substituted generators.
    """

    name: str
    element: TensorElement
    kind: str = "boost"  # boost | rotation
    taken: tuple = ()  # momentum labels sharing the generator's leg
    rest: tuple = ()  # momentum labels on the other leg
    side: str = "left"  # which leg carries the generator


@dataclass
class ExpansionResult:
    order: int
    status: str  # unique | parametric | infeasible
    terms: list[AnsatzTerm]
    solution: SolutionSpace
    equations: int
    coefficients: dict[str, GaussianRational] = field(default_factory=dict)
    element: TensorElement | None = None

    @property
    def dimension(self) -> int:
        return self.solution.dimension if self.status != "infeasible" else 0


# -- ansatz enumeration --------------------------------------------------

# Momentum content per order: 'i' (and 'j' for rotations) contract the
# generator indices, further dummies come in contracted pairs, '0' is a
# time-like momentum.  The total momentum degree equals the order.
def _content(kind: str, k: int) -> list[tuple[str, ...]]:
    base = ("i",) if kind == "boost" else ("i", "j")
    dummies = ("j", "k") if kind == "boost" else ("k",)
    remaining = k - len(base)
    out: list[tuple[str, ...]] = []
    if remaining < 0:
        return out
    for pairs in range(remaining // 2 + 1):
        if pairs > len(dummies):
            break
        zeros = remaining - 2 * pairs
        out.append(
            base
            + tuple(d for d in dummies[:pairs] for _ in range(2))
            + ("0",) * zeros
        )
    return out


_LABEL_ORDER = {"i": 0, "j": 1, "k": 2, "0": 3}


def _sub_multisets(labels):
    """All distinct sub-multisets, as (taken, rest) label tuples."""
    seen = []
    n = len(labels)
    for mask in range(1 << n):
        taken = tuple(labels[b] for b in range(n) if mask >> b & 1)
        rest = tuple(labels[b] for b in range(n) if not mask >> b & 1)
        if (taken, rest) not in seen:
            seen.append((taken, rest))
    # prefer 'j' accompanying the generator so rotation representatives
    # come out in the conventional M_ij p_j ... form
    seen.sort(key=lambda tr: (len(tr[0]), tr[0].count("i"), tr[0]))
    return seen


def _momentum_product(labels, idx, n: int) -> AlgebraElement:
    out = AlgebraElement.one(n)
    for lab in labels:
        out = out * p(idx[lab], n)
    return out


def _label_str(gname, labels):
    ordered = sorted(labels, key=_LABEL_ORDER.get)
    factors = [gname] if gname else []
    pos = 0
    while pos < len(ordered):
        lab = ordered[pos]
        count = ordered.count(lab)
        sym = "p_" + lab
        factors.append(sym if count == 1 else f"{sym}^{count}")
        pos += count
    return "*".join(factors) if factors else "1"


def _expand_term(
    kind: str,
    taken: tuple,
    rest: tuple,
    side: str,
    boosts: dict,
    ctx: TwistContext,
) -> TensorElement:
    n = ctx.order
    acc = TensorElement.zero(n)
    labels = set(taken) | set(rest)
    if kind == "boost":
        dummies = tuple(d for d in ("j", "k") if d in labels)
        frames = [(i,) for i in SPATIAL]
    else:
        dummies = ("k",) if "k" in labels else ()
        frames = list(itertools.permutations(SPATIAL, 2))
    for frame in frames:
        gen = (
            boosts[frame[0]] if kind == "boost" else mij(frame[0], frame[1], ctx)
        )
        for assign in itertools.product(SPATIAL, repeat=len(dummies)):
            idx = {"i": frame[0], "0": 0, **dict(zip(dummies, assign))}
            if kind == "rotation":
                idx["j"] = frame[1]
            gleg = gen * _momentum_product(taken, idx, n)
            oleg = _momentum_product(rest, idx, n)
            acc = acc + (
                tensor(gleg, oleg) if side == "left" else tensor(oleg, gleg)
            )
    return acc


def generate_ansatz(
    k: int, real: LorentzRealization, ctx: TwistContext
) -> list[AnsatzTerm]:
    """Complete rotation-invariant ansatz basis at order k."""
    if k < 1:
        raise UsageError("expansion order must be positive")
    boosts = {i: mhat(i, real, ctx) for i in SPATIAL}
    out: list[AnsatzTerm] = []

    def push(term: AnsatzTerm):
        if term.element.is_zero():
            return
        for t in out:
            if term.element == t.element or term.element == -t.element:
                return
        out.append(term)

    for kind, gname in (("boost", "Mh_i0"), ("rotation", "M_ij")):
        for content in _content(kind, k):
            for taken, rest in _sub_multisets(content):
                for side in ("left", "right"):
                    element = _expand_term(kind, taken, rest, side, boosts, ctx)
                    gtext = _label_str(gname, taken)
                    otext = _label_str("", rest)
                    name = (
                        f"{gtext} ox {otext}"
                        if side == "left"
                        else f"{otext} ox {gtext}"
                    )
                    push(AnsatzTerm(name, element, kind, taken, rest, side))
    return out


# -- targets and solving -------------------------------------------------


def bch_target(k: int, prior: list[TensorElement], ctx: TwistContext) -> TensorElement:
    """Order-a0^k part of R - exp(r_1 + ... + r_{k-1}), canonical mod R~."""
    if len(prior) != k - 1:
        raise UsageError("need exactly the r's of all lower orders")
    n = ctx.order
    if k > n:
        raise UsageError("truncation order too low for this expansion order")
    acc = TensorElement.zero(n)
    for r in prior:
        acc = acc + r
    known = t_exp(acc) if not acc.is_zero() else TensorElement.one(n)
    return canonicalize(ctx.rmatrix() - known, ctx.Rtilde).grade_part(k)


def _term_column(term: AnsatzTerm, k: int, ctx: TwistContext) -> TensorElement:
    n = ctx.order
    pref = Scalar.graded(I_NEG, k, n)
    return canonicalize(term.element.scale(pref), ctx.Rtilde).grade_part(k)


def _index_pattern(key):
    """Symbolic shape of a canonical monomial pair.

    Records where the coordinate factors sit, the timelike momentum powers
    and, for every participating spatial index, its (left power, right
    power, carries-x) profile as an unordered multiset -- the form in which
    the matching is done by hand, with contracted dummy indices treated as
    distinct symbols.
    """
    l, r = key
    xs = [
        (leg, mu)
        for leg, mono in (("L", l), ("R", r))
        for mu in range(4)
        for _ in range(mono.alpha[mu])
    ]
    sig_x = tuple(sorted((leg, mu == 0) for leg, mu in xs))
    classes = []
    for s in (1, 2, 3):
        has_x = any(mu == s for _, mu in xs)
        c = (l.beta[s], r.beta[s], has_x)
        if c != (0, 0, False):
            classes.append(c)
    return (sig_x, (l.beta[0], r.beta[0]), tuple(sorted(classes)))


def _is_generic(pat) -> bool:
    """True when every spatial dummy appears exactly as one contracted pair."""
    return all(l + r + hx <= 2 for (l, r, hx) in pat[2])


def solve_order(
    k: int,
    real: LorentzRealization,
    ctx: TwistContext,
    prior: list[TensorElement],
) -> ExpansionResult:
    """Match the order-k remainder with the ansatz and solve exactly.

    Equations are indexed by the generic index patterns of the canonical
    monomial basis (contracted dummies distinct); the index-coincidence
    monomials are consequences and are verified against the solution
    afterwards on the full concrete basis.
    """
    if ctx.lam is None:
        raise UsageError("the expansion needs a rational twist parameter")
    target = bch_target(k, prior, ctx)
    terms = generate_ansatz(k, real, ctx)
    columns = [_term_column(t, k, ctx) for t in terms]
    keys = set(target.terms)
    for col in columns:
        keys.update(col.terms)

    concrete = []
    by_pattern: dict[tuple, tuple] = {}
    for key in sorted(keys):
        row = tuple(_numeric(col.coefficient(key), k) for col in columns)
        val = _numeric(target.coefficient(key), k)
        if not any(row) and not val:
            continue
        concrete.append((row, val))
        pat = _index_pattern(key)
        prev = by_pattern.get(pat)
        if prev is None:
            by_pattern[pat] = (row, val)
        elif prev != (row, val):
            raise UsageError("index pattern with non-uniform coefficients")

    rows = []
    rhs = []
    for pat in sorted(by_pattern):
        if not _is_generic(pat):
            continue
        row, val = by_pattern[pat]
        rows.append(list(row))
        rhs.append(val)

    sol = solve(rows, rhs)
    result = ExpansionResult(k, sol.status, terms, sol, len(rows))
    if sol.status != "infeasible":
        _check_concrete(sol, concrete)
        result.coefficients = {
            t.name: c for t, c in zip(terms, sol.particular)
        }
        result.element = assemble(terms, sol.particular, k, ctx)
    return result


def _check_concrete(sol: SolutionSpace, concrete) -> None:
    """The generic-pattern solution must satisfy every concrete equation
    (including index coincidences), for the particular solution and for
    the whole solution space."""
    vectors = [(sol.particular, True)] + [(v, False) for v in sol.nullspace]
    for row, val in concrete:
        for vec, inhom in vectors:
            acc = GR_ZERO
            for a, b in zip(row, vec):
                acc = acc + a * b
            if acc != (val if inhom else GR_ZERO):
                raise UsageError(
                    "generic-pattern solution violates a coincidence equation"
                )


def _numeric(s: Scalar, grade: int) -> GaussianRational:
    poly = s.components[grade]
    if poly.degree() > 0:
        raise UsageError("symbolic twist parameter leaked into the system")
    return poly.constant_term()


def assemble(
    terms: list[AnsatzTerm], coeffs, k: int, ctx: TwistContext
) -> TensorElement:
    """r_k = -i a0^k * sum of coeff * term."""
    n = ctx.order
    acc = TensorElement.zero(n)
    for t, c in zip(terms, coeffs):
        if c:
            acc = acc + t.element.scale(Scalar.graded(I_NEG * c, k, n))
    return acc


def expand(
    up_to: int, real: LorentzRealization, ctx: TwistContext
) -> list[ExpansionResult]:
    """Solve orders 1..up_to sequentially, feeding each solution forward.

    Stops early when an order is infeasible."""
    results = []
    prior: list[TensorElement] = []
    for k in range(1, up_to + 1):
        res = solve_order(k, real, ctx, prior)
        results.append(res)
        if res.status == "infeasible":
            break
        prior.append(res.element)
    return results


def residual_through(
    prior: list[TensorElement], ctx: TwistContext
) -> TensorElement:
    """R - exp(sum of r's), canonical mod R~ (grades beyond len(prior) are
    expected to survive)."""
    acc = TensorElement.zero(ctx.order)
    for r in prior:
        acc = acc + r
    known = t_exp(acc) if not acc.is_zero() else TensorElement.one(ctx.order)
    return canonicalize(ctx.rmatrix() - known, ctx.Rtilde)


def wedge_check(element: TensorElement) -> bool:
    """Wedge (flip-antisymmetric) structure: tau0(r) == -r."""
    return tau0(element) == -element


# -- named k=3 parameters ------------------------------------------------

# The three-parameter family at k=3 is conventionally labelled by
# alpha1, beta1, alpha2 read off from the coefficients of
# M_ij p_j p_0 (x) p_i, p_i (x) M_ij p_j p_0 and M_ij p_j (x) p_i p_0
# (times -24, +24, -24 with the -i a0^3 / 24 prefactor convention).
_PARAM_POSITIONS = (
    ("M_ij*p_j*p_0 ox p_i", -24),
    ("p_i ox M_ij*p_j*p_0", 24),
    ("M_ij*p_j ox p_i*p_0", -24),
)
PARAM_NAMES = ("alpha1", "beta1", "alpha2")


def named_parameters(result: ExpansionResult) -> dict[str, GaussianRational]:
    """Read (alpha1, beta1, alpha2) off a k=3 solution's coefficients."""
    if result.order != 3:
        raise UsageError("named parameters exist at order 3 only")
    out = {}
    for pname, (tname, factor) in zip(PARAM_NAMES, _PARAM_POSITIONS):
        out[pname] = result.coefficients[tname] * factor
    return out


def specialize_coefficients(
    result: ExpansionResult, alpha1, beta1, alpha2
) -> dict[str, GaussianRational]:
    """Named coefficients of the k=3 family member with the given
    parameter values."""
    if result.order != 3 or result.status != "parametric":
        raise UsageError("specialization needs the parametric order-3 family")
    sol = result.solution
    want = [Fraction(alpha1), Fraction(beta1), Fraction(alpha2)]
    index = {t.name: i for i, t in enumerate(result.terms)}
    # parameter value = factor * (particular + sum_f t_f * null_f) at the
    # watched coefficient positions; solve the small square system for t.
    rows = []
    rhs = []
    for (tname, factor), target in zip(_PARAM_POSITIONS, want):
        col = index[tname]
        rows.append([factor * vec[col] for vec in sol.nullspace])
        rhs.append(GaussianRational(target) - factor * sol.particular[col])
    small = solve(rows, rhs)
    if small.status != "unique":
        raise UsageError("parameter labels do not pin down the family member")
    coeffs = list(sol.particular)
    for t_val, vec in zip(small.particular, sol.nullspace):
        coeffs = [c + t_val * v for c, v in zip(coeffs, vec)]
    return {t.name: c for t, c in zip(result.terms, coeffs)}


def specialize(
    result: ExpansionResult, alpha1, beta1, alpha2, ctx: TwistContext
) -> TensorElement:
    """Pick the member of the k=3 family with the given parameter values."""
    coeffs = specialize_coefficients(result, alpha1, beta1, alpha2)
    return assemble(
        result.terms, [coeffs[t.name] for t in result.terms], 3, ctx
    )


def _mirror_name(name: str) -> str:
    left, right = name.split(" ox ")
    return f"{right} ox {left}"


def coefficient_wedge_check(coefficients: dict[str, GaussianRational]) -> bool:
    """Flip-antisymmetry of the named coefficient table: the mirror of
    every term must appear with the opposite coefficient.

    This is strictly stronger than flip-antisymmetry of the assembled
    element, because distinct named terms share concrete monomials at
    index coincidences.
    """
    return all(
        coefficients.get(_mirror_name(name), GR_ZERO) == -c
        for name, c in coefficients.items()
    )


def reference_third_order(
    alpha1, beta1, alpha2, real: LorentzRealization, ctx: TwistContext
) -> TensorElement:
    """The known three-parameter family at order 3, assembled from its
    published coefficient table (times -i a0^3 / 24)."""
    a1 = GaussianRational(Fraction(alpha1))
    b1 = GaussianRational(Fraction(beta1))
    a2 = GaussianRational(Fraction(alpha2))
    two = GaussianRational(2)
    table = {
        "Mh_i0*p_0^2 ox p_i": GaussianRational(3),
        "p_i ox Mh_i0*p_0^2": GaussianRational(-3),
        "Mh_i0 ox p_i*p_0^2": GaussianRational(3),
        "p_i*p_0^2 ox Mh_i0": GaussianRational(-3),
        "Mh_i0*p_0 ox p_i*p_0": two,
        "p_i*p_0 ox Mh_i0*p_0": -two,
        "Mh_i0*p_i*p_j ox p_j": -(a1 + two),
        "p_j ox Mh_i0*p_i*p_j": b1 + two,
        "Mh_i0*p_j^2 ox p_i": a1,
        "p_i ox Mh_i0*p_j^2": -b1,
        "Mh_i0 ox p_i*p_j^2": -two,
        "p_i*p_j^2 ox Mh_i0": two,
        "Mh_i0*p_i ox p_j^2": -(a2 + two),
        "p_j^2 ox Mh_i0*p_i": a2 + two,
        "Mh_i0*p_j ox p_i*p_j": a2 + two,
        "p_i*p_j ox Mh_i0*p_j": -(a2 + two),
        "M_ij*p_j*p_0 ox p_i": -a1,
        "p_i ox M_ij*p_j*p_0": b1,
        "M_ij*p_j ox p_i*p_0": -a2,
        "p_i*p_0 ox M_ij*p_j": a2,
    }
    terms = generate_ansatz(3, real, ctx)
    scale = Fraction(1, 24)
    coeffs = [table.get(t.name, GR_ZERO) * scale for t in terms]
    return assemble(terms, coeffs, 3, ctx)


# -- change of generator basis -------------------------------------------


def translate_basis(
    element: TensorElement,
    k: int,
    coefficients: dict[str, GaussianRational],
    terms: list[AnsatzTerm],
    ctx: TwistContext,
    to_case: str = "i",
) -> TensorElement:
    """Re-express a solved r_k through the case-(i) generators.

    Uses the identity Mh_i0 = M_i0 Z^(-1/2) + (a0/2) M_ij p_j, so the
    rebuilt element equals the original exactly.  Case (iii) generators
    cannot be reached this way and are rejected.
    """
    if to_case in ("iii", "case_iii"):
        raise UsageError(
            "the standard-basis generators cannot be re-expressed through "
            "the case (iii) generators"
        )
    if to_case not in ("i", "case_i", "ii", "case_ii"):
        raise UsageError(f"unknown target case {to_case!r}")
    if to_case in ("ii", "case_ii"):
        return element
    n = ctx.order
    boosts = {i: mhat_from_case_i(i, ctx) for i in SPATIAL}
    acc = TensorElement.zero(n)
    by_name = {t.name: t for t in terms}
    for name, c in coefficients.items():
        if not c:
            continue
        term = by_name[name]
        rebuilt = _expand_term(term.kind, term.taken, term.rest, term.side, boosts, ctx)
        acc = acc + rebuilt.scale(Scalar.graded(I_NEG * c, k, n))
    return acc
