"""Phase-space algebra kernel: normal ordering, commutators, module
action, group-like exponentials."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappatwist.algebra import (
    AlgebraElement,
    DIM,
    ETA,
    Monomial,
    Polynomial,
    act,
    commutator,
    dilatation,
    element_str,
    graded_exp,
    p,
    time_translation,
    x,
    z_power,
)
from kappatwist.scalars import DomainError, LambdaPoly, Scalar

N = 3


def monomials(max_deg=2):
    def build(pairs_x, pairs_p):
        alpha = [0] * DIM
        beta = [0] * DIM
        for mu in pairs_x:
            alpha[mu] += 1
        for mu in pairs_p:
            beta[mu] += 1
        return Monomial(tuple(alpha), tuple(beta))

    idx = st.integers(0, DIM - 1)
    return st.builds(
        build,
        st.lists(idx, max_size=max_deg),
        st.lists(idx, max_size=max_deg),
    )


def elements(order=N, max_terms=3):
    coeff = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))

    def build(pairs):
        out = AlgebraElement.zero(order)
        for m, c in pairs:
            out = out + AlgebraElement.monomial(m, order).scale(
                Scalar.from_value(c, order)
            )
        return out

    return st.builds(
        build, st.lists(st.tuples(monomials(), coeff), max_size=max_terms)
    )


class TestCommutators:
    def test_canonical_pairs(self):
        for mu in range(DIM):
            for nu in range(DIM):
                got = commutator(p(mu, N), x(nu, N))
                expect = AlgebraElement.zero(N)
                if mu == nu:
                    expect = AlgebraElement.one(N).scale(
                        Scalar.i(N).scale(-ETA[mu])
                    )
                assert got == expect, f"[p{mu}, x{nu}]"

    def test_coordinates_commute(self):
        for mu in range(DIM):
            for nu in range(DIM):
                assert commutator(x(mu, N), x(nu, N)).is_zero()
                assert commutator(p(mu, N), p(nu, N)).is_zero()

    def test_dilatation_weights(self):
        S = dilatation(N)
        for k in (1, 2, 3):
            assert commutator(S, p(k, N)) == p(k, N).scale(Scalar.i(N))
            assert commutator(S, x(k, N)) == x(k, N).scale(-Scalar.i(N))
        assert commutator(S, p(0, N)).is_zero()
        assert commutator(S, time_translation(N)).is_zero()


class TestProduct:
    @given(elements(), elements(), elements())
    @settings(max_examples=60, deadline=None)
    def test_associativity(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(elements(), elements())
    @settings(max_examples=40, deadline=None)
    def test_distributivity(self, a, b):
        c = x(1, N) * p(1, N)
        assert (a + b) * c == a * c + b * c

    def test_normal_order(self):
        # p1 x1 reorders to x1 p1 - i
        e = p(1, N) * x(1, N)
        assert e.coefficient(
            Monomial((0, 1, 0, 0), (0, 1, 0, 0))
        ) == Scalar.one(N)
        assert e.coefficient(Monomial((0,) * 4, (0,) * 4)) == -Scalar.i(N)

    def test_power(self):
        e = x(1, N) + p(0, N)
        assert e**3 == e * e * e
        assert e**0 == AlgebraElement.one(N)


class TestAction:
    def test_momentum_derivative(self):
        # p_1 |> x1^2 = -i eta_{11} * 2 x1 = -2i x1
        f = Polynomial.x_monomial((0, 2, 0, 0), N)
        got = act(p(1, N), f)
        expect = Polynomial.x_monomial(
            (0, 1, 0, 0), N, Scalar.i(N).scale(-2)
        )
        assert got == expect

    def test_timelike_sign(self):
        # p_0 |> x0 = -i eta_{00} = +i
        f = Polynomial.x_monomial((1, 0, 0, 0), N)
        got = act(p(0, N), f)
        assert got == Polynomial.x_monomial((0, 0, 0, 0), N, Scalar.i(N))

    @given(elements(), elements())
    @settings(max_examples=40, deadline=None)
    def test_composition(self, a, b):
        f = Polynomial.x_monomial((1, 1, 0, 0), N)
        assert act(a * b, f) == act(a, act(b, f))


class TestExponentials:
    def test_z_power_group_law(self):
        za = z_power(LambdaPoly.const(Fraction(1, 2)), N)
        zb = z_power(LambdaPoly.const(Fraction(-1, 2)), N)
        assert za * zb == AlgebraElement.one(N)
        z1 = z_power(LambdaPoly.const(1), N)
        assert za * za == z1

    def test_z_symbolic_exponent(self):
        lam = LambdaPoly.gen()
        z = z_power(lam, N)
        zc = z_power(-lam, N)
        assert z * zc == AlgebraElement.one(N)

    def test_graded_exp_requires_positive_grade(self):
        with pytest.raises(DomainError):
            graded_exp(x(1, N))

    def test_graded_exp_inverse(self):
        a = time_translation(N).scale(Scalar.i(N))
        assert graded_exp(a) * graded_exp(-a) == AlgebraElement.one(N)


def test_element_str_roundtrippable_tokens():
    e = x(1, N) * p(0, N) - AlgebraElement.one(N).scale(Scalar.i(N))
    s = element_str(e)
    assert "x1" in s and "p0" in s
