"""Text syntax for maps, points and conditions, and the inverse renderer.

Grammar (a superset of the documented one)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'x' | 'g' | '(' expr ')' | '[' expr (',' expr)* ']'

Integers are reduced mod p; ``g`` is the class of x modulo the field's defining
polynomial. In a tower, ``[a, b, ...]`` lists an element's coordinates over the
next field down, each written in that field's own syntax. A point is ``inf`` or
a constant expression.
"""

import re

from . import _dense
from .errors import ParseError
from .poly import Poly, PointP1, reduce_map

_TOKEN = re.compile(r"\s*(?:(\d+)|(inf|oo|∞)|([xg])|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("inf", None, start))
        elif m.group(3):
            tokens.append((m.group(3), None, start))
        else:
            ch = m.group(4)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent producing (num, den) coefficient lists."""

    def __init__(self, text, field):
        self.F = field
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_end(self):
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {kind!r}", pos)

    def expr(self):
        val = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = self._addsub(val, rhs, op == "-")
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                val = (_dense.mul(self.F, val[0], rhs[0]), _dense.mul(self.F, val[1], rhs[1]))
            else:
                if not rhs[0]:
                    raise ParseError("division by zero", pos)
                val = (_dense.mul(self.F, val[0], rhs[1]), _dense.mul(self.F, val[1], rhs[0]))
        return val

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            n, d = self.unary()
            return _dense.neg(self.F, n), d
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, pos = self.take()
            kind, value, _ = self.peek()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            self.take()
            n, d = [1], [1]
            for _ in range(value):
                n = _dense.mul(self.F, n, base[0])
                d = _dense.mul(self.F, d, base[1])
            return n, d
        return base

    def atom(self):
        kind, value, pos = self.take()
        F = self.F
        if kind == "int":
            c = F.from_int(value)
            return ([c] if c else []), [1]
        if kind == "x":
            return [0, 1], [1]
        if kind == "g":
            return [F.generator], [1]
        if kind == "(":
            val = self.expr()
            k, _, p2 = self.take()
            if k != ")":
                raise ParseError("expected ')'", p2)
            return val
        if kind == "[":
            return [c for c in [self._digits(pos)] if c], [1]
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {kind!r}", pos)

    def _digits(self, pos):
        """``[d0, d1, ...]``: an element given by its coordinates over the base field."""
        F = self.F
        if F.base is None:
            raise ParseError("coordinate lists need an extension field", pos)
        sub = _Parser.__new__(_Parser)
        sub.F, sub.toks, sub.i = F.base, self.toks, self.i
        digits = []
        while True:
            start = sub.peek()[2]
            num, den = sub.expr()
            if len(num) > 1 or len(den) > 1:
                raise ParseError("coordinates must be constants", start)
            digits.append(F.base.div(num[0], den[0]) if num else 0)
            k, _, p2 = sub.take()
            if k == "]":
                break
            if k != ",":
                raise ParseError("expected ',' or ']'", p2)
        self.i = sub.i
        if len(digits) > F.degree:
            raise ParseError(f"at most {F.degree} coordinates", pos)
        return F.encode(digits + [0] * (F.degree - len(digits)))

    def _addsub(self, a, b, subtract):
        F = self.F
        bn = _dense.neg(F, b[0]) if subtract else b[0]
        num = _dense.add(F, _dense.mul(F, a[0], b[1]), _dense.mul(F, bn, a[1]))
        return num, _dense.mul(F, a[1], b[1])


def parse_rational(text, field):
    """Parse to an unreduced (num, den) pair of coefficient lists."""
    parser = _Parser(text, field)
    val = parser.expr()
    parser.expect_end()
    return val


def parse_map_expression(text, field):
    num, den = parse_rational(text, field)
    return reduce_map(Poly(field, num), Poly(field, den))


def parse_element(text, field):
    num, den = parse_rational(text, field)
    if len(num) > 1 or len(den) > 1:
        raise ParseError("expected a constant, found an expression in x", 0)
    c = num[0] if num else 0
    return field.div(c, den[0])


def parse_point(text, field):
    t = text.strip()
    if t in ("inf", "oo", "∞"):
        return PointP1(field, None)
    return PointP1(field, parse_element(t, field))


def parse_condition(text, field):
    """``point:e`` -> (PointP1, e)."""
    point, sep, e = text.rpartition(":")
    if not sep:
        raise ParseError("condition must look like 'point:e'", 0)
    try:
        e = int(e)
    except ValueError:
        raise ParseError(f"bad ramification index {e!r}", len(point) + 1) from None
    if e < 0:
        raise ParseError("ramification index must be >= 0", len(point) + 1)
    return parse_point(point, field), e


def parse_branch(text, field):
    """``point:e->value`` -> (PointP1, e, PointP1)."""
    left, sep, value = text.partition("->")
    if not sep:
        raise ParseError("branch condition must look like 'point:e->value'", 0)
    point, e = parse_condition(left, field)
    return point, e, parse_point(value, field)


# -- rendering ----------------------------------------------------------------


def render_element(field, code):
    if field.base is None:
        return str(code)
    digits = field.decode(code)
    if field.base.base is not None:
        # towers: nested digit lists
        return "[" + ",".join(render_element(field.base, d) for d in digits) + "]"
    terms = []
    for i, c in enumerate(digits):
        if not c:
            continue
        mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    if not terms:
        return "0"
    return terms[0] if len(terms) == 1 else "(" + " + ".join(terms) + ")"


def render_poly(field, coeffs, var="x"):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = render_element(field, c)
        if not mono:
            terms.append(cs)
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"


def render(f):
    """Text form that parse_map_expression maps back to ``f``."""
    num = render_poly(f.field, f.num)
    if f.den == (1,):
        return num
    return f"({num})/({render_poly(f.field, f.den)})"


def render_point(point):
    if point.is_infinity:
        return "inf"
    return render_element(point.field, point.value)
