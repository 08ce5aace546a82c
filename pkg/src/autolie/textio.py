"""Textual round-trip format for scalars and rational functions.

Scalars print as expressions in the tower parameters with ``zN`` denoting a
primitive N-th root of unity, e.g. ``(2*g*(g^4-1))/((m^2-g^2)*(1-m^2*g^2))``
style input parses back exactly.  Rational functions in the spectral variable
use ``l`` for the variable and also accept the coefficient-list syntax
``poly([c0,c1,...])/poly([d0,d1,...])``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, TowerMismatch
from . import kernel as K
from .scalars import Ctx, Scalar

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()\[\],]))")


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _frac_text(q: Fraction) -> str:
    return str(q)


def _cyc_text(pay, ctx: Ctx) -> tuple[str, bool]:
    """Render a level-0 payload; returns (text, needs_parens_when_embedded)."""
    terms = []
    for k, c in enumerate(pay):
        if not c:
            continue
        if k == 0:
            body = _frac_text(abs(c))
        else:
            z = f"z{ctx.L}" if k == 1 else f"z{ctx.L}^{k}"
            body = z if abs(c) == 1 else f"{_frac_text(abs(c))}*{z}"
        terms.append((c < 0, body))
    if not terms:
        return "0", False
    out = []
    for i, (neg, body) in enumerate(terms):
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    s = "".join(out)
    composite = len(terms) > 1 or s.startswith("-") or "/" in s
    return s, composite


def _poly_text(coeffs, lvl: int, ctx: Ctx, var: str) -> str:
    """Render a dense coefficient tuple as a sum, highest degree first."""
    if not coeffs:
        return "0"
    parts = []  # (negated, body) pairs
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if K.t_is_zero(c, lvl):
            continue
        cs, needs = _pay_text(c, lvl, ctx)
        neg = cs.startswith("-")
        if neg:
            cs, needs = _pay_text(K.t_neg(c, lvl, ctx.cd), lvl, ctx)
        if e == 0:
            parts.append((neg, f"({cs})" if needs else cs))
            continue
        v = var if e == 1 else f"{var}^{e}"
        if cs == "1":
            parts.append((neg, v))
        else:
            parts.append((neg, (f"({cs})" if needs else cs) + f"*{v}"))
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _pay_text(pay, lvl: int, ctx: Ctx) -> tuple[str, bool]:
    if lvl == 0:
        return _cyc_text(pay, ctx)
    num, den = pay
    var = ctx.params[lvl - 1]
    num_s = _poly_text(num, lvl - 1, ctx, var)
    if den == (K.t_one(lvl - 1, ctx.cd),):
        composite = (" " in num_s) or num_s.startswith("-") or "/" in num_s or "*" in num_s
        return num_s, composite
    den_s = _poly_text(den, lvl - 1, ctx, var)
    # the (num)/(den) form binds like a factor, no extra parens required
    return f"({num_s})/({den_s})", False


def scalar_to_text(s: Scalar) -> str:
    return _pay_text(s.pay, s.ctx.lvl, s.ctx)[0]


def rat_poly_text(coeffs, ctx: Ctx, var: str = "l") -> str:
    return _poly_text(coeffs, ctx.lvl, ctx, var)


def rat_pretty(f) -> str:
    """Human-readable expression in the variable l."""
    ctx = f.ctx
    num_s = _poly_text(f.num, ctx.lvl, ctx, "l")
    if f.den == (K.t_one(ctx.lvl, ctx.cd),):
        return num_s
    den_s = _poly_text(f.den, ctx.lvl, ctx, "l")
    return f"({num_s})/({den_s})"


def rat_to_text(f) -> str:
    """Coefficient-list round-trip syntax poly([...])/poly([...])."""
    from . import kernel as K_

    def side(coeffs):
        items = ", ".join(_pay_text(c, f.ctx.lvl, f.ctx)[0] for c in coeffs)
        return f"poly([{items}])"

    if f.den == (K_.t_one(f.ctx.lvl, f.ctx.cd),):
        return side(f.num)
    return f"{side(f.num)}/{side(f.den)}"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"bad character at {text[pos:pos + 10]!r}")
            break
        pos = m.end()
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
    out.append(("end", None))
    return out


class _Parser:
    """Recursive-descent parser over values supporting + - * / ** via hooks."""

    def __init__(self, tokens, make_int, resolve_name):
        self.toks = tokens
        self.i = 0
        self.make_int = make_int
        self.resolve_name = resolve_name

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val!r}")

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input near {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            w = self.factor()
            v = v * w if op == "*" else v / w
        return v

    def factor(self):
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            _, op = self.take()
            if op == "-":
                sign = -sign
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            esign = 1
            if self.peek() == ("op", "-"):
                self.take()
                esign = -1
            kind, e = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            v = v ** (esign * e)
        return v if sign == 1 else -v

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.make_int(val)
        if kind == "name":
            return self.resolve_name(val, self)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected token {val!r}")


def _scalar_name_resolver(ctx: Ctx):
    def resolve(name, parser):
        if name[0] == "z" and name[1:].isdigit():
            order = int(name[1:])
            try:
                return ctx.zeta(order)
            except TowerMismatch as exc:
                raise ParseError(str(exc)) from None
        if name in ctx.params:
            return ctx.param(name)
        raise ParseError(f"unknown symbol {name!r}")

    return resolve


def parse_scalar(text: str, ctx: Ctx) -> Scalar:
    p = _Parser(_tokenize(text), ctx.scalar, _scalar_name_resolver(ctx))
    v = p.parse()
    return ctx.scalar(v) if not isinstance(v, Scalar) else v


def parse_rat(text: str, ctx: Ctx):
    """Parse an l-expression or poly([...])/poly([...]) into a RatL."""
    from .polyrat import RatL

    scalar_resolve = _scalar_name_resolver(ctx)

    def resolve(name, parser):
        if name == "l":
            return RatL.lam(ctx)
        if name == "poly":
            parser.expect("(")
            parser.expect("[")
            coeffs = []
            if parser.peek() != ("op", "]"):
                sp = _Parser(parser.toks, ctx.scalar, scalar_resolve)
                sp.i = parser.i
                while True:
                    coeffs.append(ctx.scalar(sp.expr()))
                    if sp.peek() == ("op", ","):
                        sp.take()
                        continue
                    break
                parser.i = sp.i
            parser.expect("]")
            parser.expect(")")
            return RatL.from_scalars(ctx, coeffs)
        return RatL.from_scalar(scalar_resolve(name, parser))

    p = _Parser(_tokenize(text), lambda n: RatL.from_scalar(ctx.scalar(n)), resolve)
    v = p.parse()
    if isinstance(v, Scalar):
        from .polyrat import RatL

        return RatL.from_scalar(v)
    return v
