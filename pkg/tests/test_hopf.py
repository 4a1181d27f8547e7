"""Twist context: deformed coproducts, twist axioms, R-matrix and star
products."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappatwist.algebra import (
    AlgebraElement,
    Polynomial,
    act,
    commutator,
    p,
    x,
)
from kappatwist.hopf import TwistContext
from kappatwist.scalars import LambdaPoly, Scalar, UsageError
from kappatwist.tensor import (
    TensorElement,
    canonicalize,
    equal_mod,
    t_mul,
    tau0,
    tensor,
)

N = 3


@pytest.fixture(scope="module")
def ctx():
    return TwistContext(order=N)


def lam_of(ctx):
    return Scalar.from_value(ctx.lam_poly, ctx.order)


class TestGeneratorCoproducts:
    def test_spatial_coordinates(self, ctx):
        # Delta x_i = x_i (x) Z^lam = Z^(lam-1) (x) x_i
        lam = LambdaPoly.gen()
        for i in (1, 2, 3):
            d = ctx.generator_coproduct(f"x{i}")
            form_a = tensor(x(i, N), ctx.z(lam))
            form_b = tensor(ctx.z(lam - LambdaPoly.const(1)), x(i, N))
            assert equal_mod(d, form_a, ctx.R)
            assert equal_mod(d, form_b, ctx.R)
            assert equal_mod(form_a, form_b, ctx.R)

    def test_time_coordinate(self, ctx):
        d = ctx.generator_coproduct("x0")
        one = ctx.one
        a0 = Scalar.a0(N)
        lam = lam_of(ctx)
        form_a = tensor(x(0, N), one) + tensor(one, ctx.S).scale(
            a0 * (Scalar.one(N) - lam)
        )
        form_b = tensor(one, x(0, N)) - tensor(ctx.S, one).scale(a0 * lam)
        assert equal_mod(d, form_a, ctx.R)
        assert equal_mod(d, form_b, ctx.R)
        assert equal_mod(form_a, form_b, ctx.R)

    def test_momenta(self, ctx):
        lam = LambdaPoly.gen()
        for i in (1, 2, 3):
            d = ctx.generator_coproduct(f"p{i}")
            want = tensor(p(i, N), ctx.z(-lam)) + tensor(
                ctx.z(LambdaPoly.const(1) - lam), p(i, N)
            )
            assert d == canonicalize(want, ctx.R)
        d0 = ctx.generator_coproduct("p0")
        want0 = tensor(p(0, N), ctx.one) + tensor(ctx.one, p(0, N))
        assert d0 == canonicalize(want0, ctx.R)

    def test_a0_limit_is_undeformed(self, ctx):
        for name in ("x0", "x1", "p0", "p1", "p2"):
            d = ctx.generator_coproduct(name)
            d0 = ctx.coproduct0(ctx.generator(name))
            assert d.a0_limit() == d0

    def test_homomorphism_random_pairs(self, ctx):
        import random

        rng = random.Random(7)
        names = ["x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"]
        for _ in range(25):
            a = ctx.generator(rng.choice(names))
            b = ctx.generator(rng.choice(names))
            lhs = ctx.coproduct(a * b)
            rhs = t_mul(ctx.coproduct(a), ctx.coproduct(b))
            assert equal_mod(lhs, rhs, ctx.R)

    def test_coproduct_respects_commutators(self, ctx):
        # Delta([p_mu, x_nu]) must be the constant -i eta_{mu nu} 1x1
        for mu, nu in ((0, 0), (1, 1), (1, 2)):
            c = commutator(p(mu, N), x(nu, N))
            d = ctx.coproduct(c)
            want = canonicalize(
                tensor(c, ctx.one), ctx.R
            )  # constants are tensor-primitive
            assert d == want


class TestTwistAxioms:
    def test_cocycle(self, ctx):
        assert ctx.verify_cocycle()

    def test_cocycle_mutation_detected(self, ctx):
        assert not ctx.verify_cocycle(flip_sign=True)

    def test_counit(self, ctx):
        assert ctx.verify_counit()

    def test_twist_invertible(self, ctx):
        assert t_mul(ctx.twist(), ctx.twist_inverse()) == TensorElement.one(N)


class TestRealization:
    def test_closed_forms(self, ctx):
        lam = LambdaPoly.gen()
        for i in (1, 2, 3):
            assert ctx.xhat(i) == x(i, N) * ctx.z(-lam)
        want0 = x(0, N) - ctx.S.scale(
            Scalar.a0(N) * (Scalar.one(N) - lam_of(ctx))
        )
        assert ctx.xhat(0) == want0

    def test_operator_equals_closed_form(self, ctx):
        for mu in range(4):
            xh = ctx.xhat(mu)
            for exps in itertools.product(range(3), repeat=2):
                f = Polynomial.x_monomial((exps[0], exps[1], 0, 0), N)
                assert ctx.realization_operator(mu, f) == act(xh, f)

    def test_kappa_minkowski(self, ctx):
        i = Scalar.i(N)
        a0 = Scalar.a0(N)
        xh = [ctx.xhat(mu) for mu in range(4)]
        for mu in range(4):
            for nu in range(4):
                lhs = commutator(xh[mu], xh[nu])
                rhs = AlgebraElement.zero(N)
                if mu == 0:
                    rhs = rhs + xh[nu].scale(i * a0)
                if nu == 0:
                    rhs = rhs - xh[mu].scale(i * a0)
                assert lhs == rhs, (mu, nu)


class TestRMatrix:
    def test_flip_gives_inverse(self, ctx):
        assert tau0(ctx.rmatrix()) == ctx.rmatrix_inverse()

    def test_conjugation_equals_opposite(self, ctx):
        for name in ("x0", "x1", "p0", "p1"):
            h = ctx.generator(name)
            assert ctx.rmatrix_conjugate(h) == ctx.coproduct_opposite(h)

    def test_tau_squared(self, ctx):
        # tau = tau0 R; tau^2 = tau0(R) R = R^-1 R = 1x1
        prod = t_mul(tau0(ctx.rmatrix()), ctx.rmatrix())
        assert prod == TensorElement.one(N)


class TestStarProducts:
    def test_flip_identity_all_low_degree(self, ctx):
        monos = [
            (0, 0, 0, 0),
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (1, 1, 0, 0),
            (0, 2, 0, 0),
        ]
        for ea in monos:
            for eb in monos:
                f = Polynomial.x_monomial(ea, N)
                g = Polynomial.x_monomial(eb, N)
                assert ctx.star_product(f, g, "F") == ctx.star_product(
                    g, f, "Ftilde"
                )

    def test_unknown_flavor(self, ctx):
        f = Polynomial.x_monomial((1, 0, 0, 0), N)
        with pytest.raises(UsageError):
            ctx.star_product(f, f, "bogus")


class TestRationalLambda:
    def test_specialized_context_consistent(self):
        sym = TwistContext(order=N)
        rat = TwistContext(order=N, lam=Fraction(1, 3))
        for name in ("x1", "p1", "x0"):
            d_sym = sym.generator_coproduct(name)
            d_rat = rat.generator_coproduct(name)
            assert d_sym.substitute_lambda(Fraction(1, 3)) == d_rat

    def test_order_bounds(self):
        with pytest.raises(UsageError):
            TwistContext(order=0)
        with pytest.raises(UsageError):
            TwistContext(order=7)
