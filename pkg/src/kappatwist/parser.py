"""Expression parser for the command-line surface.

Grammar (whitespace insensitive):

    texpr  := tsum
    tsum   := tterm (("+" | "-") tterm)*
    tterm  := expr ("ox" expr)?
    expr   := sum
    sum    := prod (("+" | "-") prod)*
    prod   := pow ("*" pow)*
    pow    := atom ("^" int)?
    atom   := rational | "I" | "a0" | "lam" | generator
            | "Z" ("^" "[" lampoly "]")?
            | "exp" "(" expr ")" | "(" expr ")"

Generators: x0..x3, p0..p3, A, S, Z, M[i,j], Mhat[i,0].  Tensor products
are single level; sums of tensor terms are accepted so canonical renderings
round-trip.  `lampoly` reuses the scalar grammar restricted to rationals
and `lam`.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraElement, graded_exp
from .hopf import TwistContext
from .scalars import LambdaPoly, Scalar, UsageError
from .tensor import TensorElement, tensor


class ParseError(UsageError):
    """Malformed input; carries the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\^|\*|\+|-|\(|\)|\[|\]|,))"
)

_GEN_NAMES = {"x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3", "A", "S", "Z"}


def tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            if src[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


# -- AST -----------------------------------------------------------------
# nodes: ("num", Fraction) ("I",) ("a0",) ("lam",) ("gen", name)
#        ("M", i, j) ("Mhat", i) ("Z", LambdaPoly | None) ("exp", node)
#        ("mul", [nodes]) ("pow", node, int) ("sum", [(sign, node), ...])
#        ("tensor", left, right) ("tsum", [(sign, node), ...])


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok[1]!r}", tok[2])
        return tok

    def at_op(self, *values):
        tok = self.peek()
        return tok[0] == "op" and tok[1] in values

    # -- entry points ----------------------------------------------------

    def parse(self):
        node = self.tsum()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return node

    def tsum(self):
        parts = [(1, self.tterm())]
        while self.at_op("+", "-"):
            sign = 1 if self.next()[1] == "+" else -1
            parts.append((sign, self.tterm()))
        if len(parts) == 1 and parts[0][1][0] != "tensor":
            return parts[0][1]
        if all(part[0] == "tensor" for _, part in parts):
            return ("tsum", parts)
        if any(part[0] == "tensor" for _, part in parts):
            raise ParseError("cannot mix tensor and plain terms", 0)
        return ("sum", parts)

    def tterm(self):
        left = self.sum_no_tensor()
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "ox":
            self.next()
            right = self.sum_no_tensor()
            return ("tensor", left, right)
        return left

    def sum_no_tensor(self):
        # a sum that stops at "ox" / tensor-level "+"/"-" is impossible to
        # delimit without parentheses, so within a tensor context the legs
        # are products; parenthesize to embed sums in a leg.
        return self.prod()

    def prod(self):
        factors = [self.power()]
        while self.at_op("*"):
            self.next()
            factors.append(self.power())
        return factors[0] if len(factors) == 1 else ("mul", factors)

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            tok = self.next()
            sign = 1
            if self.at_op("-"):
                self.next()
                sign = -1
            etok = self.expect("num")
            if "/" in etok[1]:
                raise ParseError("integer exponent required", etok[2])
            return ("pow", base, sign * int(etok[1]))
        return base

    def atom(self):
        tok = self.next()
        kind, text, pos = tok
        if kind == "num":
            return ("num", Fraction(text))
        if kind == "op" and text == "(":
            inner = self.inner_sum()
            self.expect("op", ")")
            return inner
        if kind == "op" and text == "-":
            return ("sum", [(-1, self.power())])
        if kind == "op" and text == "+":
            return self.power()
        if kind != "name":
            raise ParseError(f"unexpected token {text!r}", pos)
        if text == "I":
            return ("I",)
        if text == "a0":
            return ("a0",)
        if text == "lam":
            return ("lam",)
        if text == "exp":
            self.expect("op", "(")
            inner = self.inner_sum()
            self.expect("op", ")")
            return ("exp", inner)
        if text == "Z":
            if self.at_op("^") and self.tokens[self.i + 1][:2] == ("op", "["):
                self.next()
                self.next()
                poly = self.lampoly()
                self.expect("op", "]")
                return ("Z", poly)
            return ("Z", None)
        if text == "M" or text == "Mhat":
            self.expect("op", "[")
            itok = self.expect("num")
            self.expect("op", ",")
            jtok = self.expect("num")
            self.expect("op", "]")
            i, j = int(itok[1]), int(jtok[1])
            if text == "Mhat":
                if j != 0:
                    raise ParseError("boost index pair must be [i,0]", jtok[2])
                return ("Mhat", i)
            return ("M", i, j)
        if text in _GEN_NAMES:
            return ("gen", text)
        raise ParseError(f"unknown identifier {text!r}", pos)

    def inner_sum(self):
        parts = [(1, self.prod())]
        while self.at_op("+", "-"):
            sign = 1 if self.next()[1] == "+" else -1
            parts.append((sign, self.prod()))
        return parts[0][1] if len(parts) == 1 and parts[0][0] == 1 else ("sum", parts)

    def lampoly(self) -> LambdaPoly:
        """Restricted sum of rational multiples of powers of lam."""
        poly = LambdaPoly()
        sign = 1
        if self.at_op("+", "-"):
            sign = 1 if self.next()[1] == "+" else -1
        while True:
            poly = poly + self._lampoly_term().scale(sign)
            if not self.at_op("+", "-"):
                return poly
            sign = 1 if self.next()[1] == "+" else -1

    def _lampoly_term(self) -> LambdaPoly:
        coeff = Fraction(1)
        degree = 0
        explicit = False
        tok = self.peek()
        if tok[0] == "num":
            self.next()
            coeff = Fraction(tok[1])
            explicit = True
            if self.at_op("*"):
                self.next()
                tok = self.peek()
                if tok[0] != "name" or tok[1] != "lam":
                    raise ParseError("expected 'lam'", tok[2])
        tok = self.peek()
        if tok[0] == "name" and tok[1] == "lam":
            self.next()
            degree = 1
            if self.at_op("^"):
                self.next()
                etok = self.expect("num")
                degree = int(etok[1])
        elif not explicit:
            raise ParseError(f"expected rational or 'lam', found {tok[1]!r}", tok[2])
        return LambdaPoly({degree: coeff})


def parse(src: str):
    """Parse to an AST; raises ParseError on malformed input."""
    return Parser(src).parse()


# -- elaboration ---------------------------------------------------------


def elaborate(node, ctx: TwistContext, realization_case: str | None = None):
    """Turn an AST into an AlgebraElement or TensorElement in `ctx`.

    Boost generators Mhat[i,0] need a realization case; rotations and the
    plain generators do not.
    """
    kind = node[0]
    n = ctx.order
    if kind == "tsum":
        out = TensorElement.zero(n)
        for sign, part in node[1]:
            t = elaborate(part, ctx, realization_case)
            out = out + (t if sign > 0 else -t)
        return out
    if kind == "tensor":
        left = elaborate(node[1], ctx, realization_case)
        right = elaborate(node[2], ctx, realization_case)
        if not isinstance(left, AlgebraElement) or not isinstance(
            right, AlgebraElement
        ):
            raise UsageError("tensor legs must be plain elements")
        return tensor(left, right)
    if kind == "sum":
        out = AlgebraElement.zero(n)
        for sign, part in node[1]:
            e = elaborate(part, ctx, realization_case)
            _require_plain(e)
            out = out + (e if sign > 0 else -e)
        return out
    if kind == "mul":
        out = AlgebraElement.one(n)
        for part in node[1]:
            e = elaborate(part, ctx, realization_case)
            _require_plain(e)
            out = out * e
        return out
    if kind == "pow":
        base = elaborate(node[1], ctx, realization_case)
        _require_plain(base)
        exp = node[2]
        if exp >= 0:
            return base**exp
        # negative powers only for Z-type group-like elements
        raise UsageError("negative powers are only available as Z^[...]")
    if kind == "num":
        return AlgebraElement.one(n).scale(Scalar.from_value(node[1], n))
    if kind == "I":
        return AlgebraElement.one(n).scale(Scalar.i(n))
    if kind == "a0":
        return AlgebraElement.one(n).scale(Scalar.a0(n))
    if kind == "lam":
        return AlgebraElement.one(n).scale(
            Scalar.from_value(ctx.lam_poly, n)
        )
    if kind == "gen":
        return ctx.generator(node[1])
    if kind == "Z":
        return ctx.z(1) if node[1] is None else ctx.z(node[1])
    if kind == "exp":
        inner = elaborate(node[1], ctx, realization_case)
        _require_plain(inner)
        return graded_exp(inner)
    if kind == "M":
        from .poincare import mij

        return mij(node[1], node[2], ctx)
    if kind == "Mhat":
        from .poincare import mhat, realization

        if realization_case is None:
            raise UsageError("Mhat[i,0] needs a realization case")
        return mhat(node[1], realization(realization_case, ctx), ctx)
    raise UsageError(f"unhandled node {kind!r}")


def _require_plain(e):
    if not isinstance(e, AlgebraElement):
        raise UsageError("tensor expressions cannot be nested")


def evaluate(src: str, ctx: TwistContext, realization_case: str | None = None):
    return elaborate(parse(src), ctx, realization_case)
