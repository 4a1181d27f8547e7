"""Expression parser and command-line interface."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappatwist.algebra import AlgebraElement, Monomial, element_str, p, x
from kappatwist.cli import run
from kappatwist.hopf import TwistContext
from kappatwist.parser import ParseError, evaluate, parse
from kappatwist.scalars import Scalar, UsageError
from kappatwist.tensor import TensorElement, tensor_str

N = 3


@pytest.fixture(scope="module")
def ctx():
    return TwistContext(order=N)


class TestParser:
    def test_normal_ordering_example(self, ctx):
        # p1*x1 elaborates to x1 p1 - i
        e = evaluate("p1*x1", ctx)
        assert e == x(1, N) * p(1, N) - AlgebraElement.one(N).scale(Scalar.i(N))
        assert e.coefficient(Monomial((0,) * 4, (0,) * 4)) == -Scalar.i(N)

    def test_tensor_example(self, ctx):
        t = evaluate("x1 ox Z^[lam]", ctx)
        assert isinstance(t, TensorElement)
        from kappatwist.tensor import tensor

        assert t == tensor(x(1, N), ctx.z(ctx.lam_poly))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse("exp(")
        assert err.value.position == 4

    def test_unknown_identifier(self):
        with pytest.raises(ParseError):
            parse("foo")

    def test_tensor_nesting_rejected(self, ctx):
        with pytest.raises(ParseError):
            parse("p1 ox p2 ox p3")

    def test_mixed_sum_rejected(self):
        with pytest.raises(ParseError):
            parse("p1 ox p2 + x1")

    def test_whitespace_insensitive(self, ctx):
        assert evaluate("p1*x1+2", ctx) == evaluate(" p1 * x1 + 2 ", ctx)

    def test_z_exponent_forms(self, ctx):
        assert evaluate("Z^[1-lam]", ctx) == evaluate("Z^[-lam+1]", ctx)
        assert evaluate("Z^[1/2]*Z^[-1/2]", ctx) == evaluate("1", ctx)
        assert evaluate("Z^[2*lam]", ctx) == evaluate("Z^[lam]*Z^[lam]", ctx)

    def test_mhat_requires_case(self, ctx):
        with pytest.raises(UsageError):
            evaluate("Mhat[1,0]", ctx)
        e = evaluate("Mhat[1,0]", ctx, "i")
        assert not e.is_zero()

    def test_generator_table(self, ctx):
        for src in ("A", "S", "Z", "M[1,2]", "x3", "p3", "I", "a0", "lam"):
            evaluate(src, ctx)


def random_elements():
    coeff = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
    idx = st.integers(0, 3)

    def build(terms):
        out = AlgebraElement.zero(N)
        for xs, ps, c in terms:
            alpha = [0] * 4
            beta = [0] * 4
            for mu in xs:
                alpha[mu] += 1
            for mu in ps:
                beta[mu] += 1
            out = out + AlgebraElement.monomial(
                Monomial(tuple(alpha), tuple(beta)), N
            ).scale(Scalar.from_value(c, N))
        return out

    return st.builds(
        build,
        st.lists(
            st.tuples(st.lists(idx, max_size=2), st.lists(idx, max_size=2), coeff),
            min_size=1,
            max_size=3,
        ),
    )


class TestRoundTrip:
    @given(random_elements())
    @settings(max_examples=40, deadline=None)
    def test_parse_render_identity(self, e):
        ctx = TwistContext(order=N)
        s = element_str(e)
        assert evaluate(s, ctx) == e

    @given(random_elements(), random_elements())
    @settings(max_examples=25, deadline=None)
    def test_tensor_parse_render_identity(self, a, b):
        from kappatwist.tensor import tensor

        ctx = TwistContext(order=N)
        t = tensor(a, b)
        s = tensor_str(t)
        if t.is_zero():
            return
        assert evaluate(s, ctx) == t

    def test_coproduct_rendering_roundtrip(self):
        ctx = TwistContext(order=N)
        for name in ("x0", "x1", "p0", "p1"):
            d = ctx.generator_coproduct(name)
            assert evaluate(tensor_str(d), ctx) == d


class TestCLI:
    def test_coproduct_example(self, capsys):
        code = run(["coproduct", "--gen", "p1", "--lambda", "sym", "--order", "3"])
        out = capsys.readouterr().out.strip()
        assert code == 0
        assert out == "p1 ox Z^[-lam] + Z^[1-lam] ox p1"

    def test_coproduct_all_generators(self, capsys):
        for gen in ("x0", "x1", "p0", "A", "S", "Z", "M[1,2]"):
            assert run(["coproduct", "--gen", gen, "--order", "3"]) == 0
        capsys.readouterr()

    def test_boost_coproduct_cases(self, capsys):
        for case in ("i", "ii", "iii"):
            args = ["coproduct", "--gen", "Mhat[1,0]", "--case", case, "--order", "3"]
            if case == "ii":
                args += ["--lambda", "1/2"]
            assert run(args) == 0
        capsys.readouterr()

    def test_rexpand_first_order_json(self, capsys):
        code = run(["rexpand", "--order", "1", "--case", "ii", "--format", "json"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["c1"] == "-1"
        assert payload["d2"] == "1"
        assert payload["c2"] == "0"
        assert payload["d1"] == "0"
        assert payload["status"] == "unique"

    def test_rexpand_case_iii_infeasible(self, capsys):
        code = run(
            [
                "rexpand", "--order", "3", "--case", "iii",
                "--truncation", "3", "--format", "json",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["status"] == "infeasible"

    def test_json_deterministic(self, capsys):
        args = ["rexpand", "--order", "1", "--case", "ii", "--format", "json"]
        run(args)
        first = capsys.readouterr().out
        run(args)
        second = capsys.readouterr().out
        assert first == second

    def test_verify_exit_codes(self, capsys):
        assert (
            run(["verify", "--suite", "algebra", "--order", "2", "--quick"]) == 0
        )
        capsys.readouterr()

    def test_eval_and_canonicalize(self, capsys):
        assert run(["eval", "p1*x1", "--order", "2"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "-I + x1*p1"
        assert run(["eval", "x1 ox 1", "--canonicalize", "R0", "--order", "2"]) == 0
        out = capsys.readouterr().out.strip()
        assert out == "1 ox x1"

    def test_parse_error_exit_code(self, capsys):
        assert run(["eval", "exp("]) == 2
        capsys.readouterr()

    def test_usage_error_exit_code(self, capsys):
        assert run(["eval", "Mhat[1,0]"]) == 2
        assert run(["coproduct", "--gen", "q7"]) == 2
        assert run(["bogus"]) == 2
        capsys.readouterr()
