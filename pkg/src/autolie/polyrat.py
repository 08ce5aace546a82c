"""Polynomials and rational functions in the spectral variable over Scalar.

RatL values are kept in canonical form (numerator and denominator coprime,
denominator monic), so structural equality is equality of rational functions.
Pole bookkeeping works on the Riemann sphere: infinity is a legitimate point,
handled through the local parameter 1/lambda.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import kernel as K
from .errors import DivisionByZero, EvalPole, PoleOutsideGamma, TowerMismatch
from .scalars import Ctx, Scalar, _wrap


def _pt(ctx: Ctx, p):
    """Normalize a point argument to (is_infinite, value payload or None)."""
    if hasattr(p, "is_infinite"):
        if p.ctx is not ctx:
            raise TowerMismatch("point from a different context")
        if p.is_infinite():
            return True, None
        return False, p.value().pay
    if isinstance(p, Scalar):
        if p.ctx is not ctx:
            raise TowerMismatch("point from a different context")
        return False, p.pay
    return False, ctx.scalar(p).pay


class PolyL:
    """Dense polynomial in the spectral variable, lowest degree first."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Ctx, coeffs=()):
        self.ctx = ctx
        pays = []
        for c in coeffs:
            pays.append(ctx.scalar(c).pay)
        self.coeffs = K.p_trim(pays, ctx.lvl)

    @staticmethod
    def _raw(ctx: Ctx, pays) -> "PolyL":
        obj = object.__new__(PolyL)
        obj.ctx = ctx
        obj.coeffs = K.p_trim(pays, ctx.lvl)
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Scalar:
        if 0 <= i < len(self.coeffs):
            return _wrap(self.ctx, self.coeffs[i])
        return self.ctx.zero()

    def scalars(self) -> list[Scalar]:
        return [_wrap(self.ctx, c) for c in self.coeffs]

    def __eq__(self, other):
        return (
            isinstance(other, PolyL)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __add__(self, other):
        return PolyL._raw(self.ctx, K.p_add(self.coeffs, other.coeffs, self.ctx.lvl, self.ctx.cd))

    def __sub__(self, other):
        return PolyL._raw(self.ctx, K.p_sub(self.coeffs, other.coeffs, self.ctx.lvl, self.ctx.cd))

    def __neg__(self):
        return PolyL._raw(self.ctx, K.p_neg(self.coeffs, self.ctx.lvl, self.ctx.cd))

    def __mul__(self, other):
        if isinstance(other, PolyL):
            return PolyL._raw(self.ctx, K.p_mul(self.coeffs, other.coeffs, self.ctx.lvl, self.ctx.cd))
        s = self.ctx.scalar(other)
        return PolyL._raw(self.ctx, K.p_scale(self.coeffs, s.pay, self.ctx.lvl, self.ctx.cd))

    __rmul__ = __mul__

    def monic(self) -> "PolyL":
        return PolyL._raw(self.ctx, K.p_monic(self.coeffs, self.ctx.lvl, self.ctx.cd))

    def eval(self, v) -> Scalar:
        vv = self.ctx.scalar(v)
        return _wrap(self.ctx, K.p_eval(self.coeffs, vv.pay, self.ctx.lvl, self.ctx.cd))

    def text(self) -> str:
        from .textio import rat_poly_text

        return rat_poly_text(self.coeffs, self.ctx)

    def __repr__(self):
        return self.text()


class RatL:
    """Rational function of the spectral variable in coprime monic-denominator form."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: Ctx, num, den=None):
        if isinstance(num, PolyL):
            num = num.coeffs
        else:
            num = tuple(ctx.scalar(c).pay for c in num)
        if den is None:
            den = (K.t_one(ctx.lvl, ctx.cd),)
        elif isinstance(den, PolyL):
            den = den.coeffs
        else:
            den = tuple(ctx.scalar(c).pay for c in den)
        pair = K.r_make(num, den, ctx.lvl + 1, ctx.cd)
        self.ctx = ctx
        self.num, self.den = pair

    @staticmethod
    def _raw(ctx: Ctx, pair) -> "RatL":
        obj = object.__new__(RatL)
        obj.ctx = ctx
        obj.num, obj.den = pair
        return obj

    @property
    def pair(self):
        return (self.num, self.den)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_scalar(s: Scalar) -> "RatL":
        one = K.t_one(s.ctx.lvl, s.ctx.cd)
        if s.is_zero():
            return RatL._raw(s.ctx, ((), (one,)))
        return RatL._raw(s.ctx, ((s.pay,), (one,)))

    @staticmethod
    def from_scalars(ctx: Ctx, coeffs) -> "RatL":
        return RatL(ctx, [ctx.scalar(c) for c in coeffs])

    @staticmethod
    def lam(ctx: Ctx) -> "RatL":
        one = K.t_one(ctx.lvl, ctx.cd)
        return RatL._raw(ctx, ((K.t_zero(ctx.lvl, ctx.cd), one), (one,)))

    @staticmethod
    def zero(ctx: Ctx) -> "RatL":
        return RatL._raw(ctx, ((), (K.t_one(ctx.lvl, ctx.cd),)))

    @staticmethod
    def one(ctx: Ctx) -> "RatL":
        one = K.t_one(ctx.lvl, ctx.cd)
        return RatL._raw(ctx, ((one,), (one,)))

    @staticmethod
    def parse(text: str, ctx: Ctx) -> "RatL":
        from .textio import parse_rat

        return parse_rat(text, ctx)

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return not self.is_zero()

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        if not self.num:
            return self.ctx.zero()
        return _wrap(self.ctx, self.num[0])

    @property
    def deg_num(self) -> int:
        return len(self.num) - 1

    @property
    def deg_den(self) -> int:
        return len(self.den) - 1

    def num_poly(self) -> PolyL:
        return PolyL._raw(self.ctx, self.num)

    def den_poly(self) -> PolyL:
        return PolyL._raw(self.ctx, self.den)

    def __eq__(self, other):
        if isinstance(other, RatL):
            return self.ctx is other.ctx and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Scalar)):
            return self == RatL.from_scalar(self.ctx.scalar(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.num, self.den))

    # -- arithmetic --------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatL):
            if other.ctx is not self.ctx:
                raise TowerMismatch("rational functions from different contexts")
            return other.pair
        if isinstance(other, (int, Fraction, Scalar)):
            return RatL.from_scalar(self.ctx.scalar(other)).pair
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return RatL._raw(self.ctx, K.t_add(self.pair, pair, self.ctx.lvl + 1, self.ctx.cd))

    __radd__ = __add__

    def __neg__(self):
        return RatL._raw(self.ctx, K.t_neg(self.pair, self.ctx.lvl + 1, self.ctx.cd))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return RatL._raw(self.ctx, K.t_sub(self.pair, pair, self.ctx.lvl + 1, self.ctx.cd))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return RatL._raw(self.ctx, K.t_mul(self.pair, pair, self.ctx.lvl + 1, self.ctx.cd))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        if not pair[0]:
            raise DivisionByZero("division by the zero rational function")
        return RatL._raw(self.ctx, K.t_div(self.pair, pair, self.ctx.lvl + 1, self.ctx.cd))

    def __rtruediv__(self, other):
        return RatL.from_scalar(self.ctx.scalar(other)) / self

    def __pow__(self, n: int):
        if n < 0 and self.is_zero():
            raise DivisionByZero("negative power of zero")
        return RatL._raw(self.ctx, K.t_pow(self.pair, n, self.ctx.lvl + 1, self.ctx.cd))

    # -- evaluation and local expansion ------------------------------------------

    def eval_at(self, p) -> Scalar:
        """Exact value at a sphere point; EvalPole at a pole of the function."""
        inf, v = _pt(self.ctx, p)
        lvl, cd = self.ctx.lvl, self.ctx.cd
        if inf:
            dn, dd = len(self.num) - 1, len(self.den) - 1
            if dn > dd:
                raise EvalPole("pole at infinity")
            if dn < dd:
                return self.ctx.zero()
            return _wrap(self.ctx, K.t_div(self.num[-1], self.den[-1], lvl, cd))
        n = K.p_eval(self.num, v, lvl, cd)
        d = K.p_eval(self.den, v, lvl, cd)
        if K.t_is_zero(d, lvl):
            raise EvalPole("pole at the evaluation point")
        return _wrap(self.ctx, K.t_div(n, d, lvl, cd))

    def _local_pair(self, p):
        """Numerator/denominator in the local parameter t at p (t=0 is p)."""
        inf, v = _pt(self.ctx, p)
        if inf:
            # lambda = 1/t: reverse coefficients and rebalance with powers of t
            dn, dd = len(self.num) - 1, len(self.den) - 1
            n = list(reversed(self.num))
            d = list(reversed(self.den))
            zero = K.t_zero(self.ctx.lvl, self.ctx.cd)
            if dd > dn:
                n = [zero] * (dd - dn) + n
            elif dn > dd:
                d = [zero] * (dn - dd) + d
            return n, d
        return _shift(self.num, v, self.ctx), _shift(self.den, v, self.ctx)

    def val_at(self, p) -> int:
        """Order of vanishing at p; negative for a pole, 0 elsewhere."""
        if self.is_zero():
            raise ValueError("valuation of the zero function")
        n, d = self._local_pair(p)
        return _val(n, self.ctx) - _val(d, self.ctx)

    def laurent_at(self, p, depth: int) -> "LaurentPrefix":
        """First `depth` local coefficients starting at the lowest exponent present."""
        if depth < 1:
            raise ValueError("depth must be >= 1")
        lvl, cd = self.ctx.lvl, self.ctx.cd
        if self.is_zero():
            return LaurentPrefix(0, tuple(self.ctx.zero() for _ in range(depth)))
        n, d = self._local_pair(p)
        vn, vd = _val(n, self.ctx), _val(d, self.ctx)
        n = n[vn:]
        d = d[vd:]
        # power-series division of unit parts to `depth` terms
        inv0 = K.t_inv(d[0], lvl, cd)
        out = []
        for k in range(depth):
            acc = n[k] if k < len(n) else K.t_zero(lvl, cd)
            for j in range(1, min(k, len(d) - 1) + 1):
                acc = K.t_sub(acc, K.t_mul(out[k - j], d[j], lvl, cd), lvl, cd)
            out.append(K.t_mul(acc, inv0, lvl, cd))
        return LaurentPrefix(vn - vd, tuple(_wrap(self.ctx, c) for c in out))

    def laurent_window(self, p, lo: int, hi: int) -> list[Scalar]:
        """Local coefficients for the exponent range lo..hi-1, zero-padded."""
        if self.is_zero():
            return [self.ctx.zero()] * (hi - lo)
        pre = self.laurent_at(p, max(1, hi - lo))
        out = []
        for e in range(lo, hi):
            i = e - pre.start
            if 0 <= i < len(pre.coeffs):
                out.append(pre.coeffs[i])
            elif i < 0:
                out.append(self.ctx.zero())
            else:  # beyond the computed prefix; extend
                deeper = self.laurent_at(p, i + 1)
                out.append(deeper.coeffs[i])
        return out

    # -- transformation under fractional-linear maps ------------------------------

    def pullback(self, m) -> "RatL":
        """The function composed with the inverse of m (contravariant action)."""
        pair = self._pullback_pair(m)
        return RatL._raw(self.ctx, K.r_make(pair[0], pair[1], self.ctx.lvl + 1, self.ctx.cd))

    def pullback_eq(self, m) -> bool:
        """Exact test pullback(m) == self without canonicalizing (fast path)."""
        n2, d2 = self._pullback_pair(m)
        lvl, cd = self.ctx.lvl, self.ctx.cd
        lhs = K.p_mul(n2, self.den, lvl, cd)
        rhs = K.p_mul(d2, self.num, lvl, cd)
        return lhs == rhs

    def _pullback_pair(self, m):
        # inverse of (a,b;c,d) acts as lambda -> (d*lambda - b)/(-c*lambda + a)
        lvl, cd = self.ctx.lvl, self.ctx.cd
        a, b, c, d = m.a, m.b, m.c, m.d
        lin1 = K.p_trim((K.t_neg(b, lvl, cd), d), lvl)          # d*l - b
        lin2 = K.p_trim((a, K.t_neg(c, lvl, cd)), lvl)          # -c*l + a
        D = max(len(self.num), len(self.den)) - 1
        return (
            _compose_linfrac(self.num, lin1, lin2, D, self.ctx),
            _compose_linfrac(self.den, lin1, lin2, D, self.ctx),
        )

    # -- pole accounting ------------------------------------------------------------

    def pole_profile(self, allowed) -> "PoleProfile":
        """Pole orders at the allowed sphere points; error on any pole elsewhere.

        Root detection never factors: the denominator is divided exactly by the
        declared linear factors and any nonconstant residue is an error.
        """
        lvl, cd = self.ctx.lvl, self.ctx.cd
        entries = []
        rem = list(self.den)
        inf_seen = False
        for p in allowed:
            inf, v = _pt(self.ctx, p)
            if inf:
                inf_seen = True
                order = (len(self.num) - 1) - (len(self.den) - 1)
                if order > 0:
                    entries.append((p, order))
                continue
            order = 0
            while rem and len(rem) > 1:
                q, r = _syn_div(rem, v, self.ctx)
                if not K.t_is_zero(r, lvl):
                    break
                rem = q
                order += 1
            if order:
                entries.append((p, order))
        if len(rem) > 1:
            from .textio import rat_poly_text

            raise PoleOutsideGamma(
                "denominator keeps a nonconstant factor outside the allowed set: "
                + rat_poly_text(K.p_monic(rem, lvl, cd), self.ctx)
            )
        if not inf_seen and (len(self.num) - 1) > (len(self.den) - 1):
            raise PoleOutsideGamma("pole at infinity is not in the allowed set")
        return PoleProfile(tuple(entries))

    # -- printing ---------------------------------------------------------------------

    def pretty(self) -> str:
        from .textio import rat_pretty

        return rat_pretty(self)

    def text(self) -> str:
        from .textio import rat_to_text

        return rat_to_text(self)

    def __repr__(self):
        return self.pretty()


class LaurentPrefix:
    """A finite run of local expansion coefficients starting at `start`."""

    __slots__ = ("start", "coeffs")

    def __init__(self, start: int, coeffs):
        self.start = start
        self.coeffs = tuple(coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"LaurentPrefix(start={self.start}, coeffs={list(self.coeffs)!r})"


class PoleProfile:
    """Pole orders on a finite set of sphere points (infinity included)."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    def order_at(self, p) -> int:
        for q, order in self.entries:
            if _same_point(p, q):
                return order
        return 0

    @property
    def total(self) -> int:
        return sum(order for _, order in self.entries)

    def __repr__(self):
        inner = ", ".join(f"{q!r}: {order}" for q, order in self.entries)
        return "{" + inner + "}"


def _same_point(p, q) -> bool:
    if hasattr(p, "is_infinite") and hasattr(q, "is_infinite"):
        return p == q
    return p == q


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _val(local_coeffs, ctx) -> int:
    for i, c in enumerate(local_coeffs):
        if not K.t_is_zero(c, ctx.lvl):
            return i
    return len(local_coeffs)


def _shift(coeffs, v, ctx):
    """Taylor shift: coefficients of p(t + v) given those of p(lambda)."""
    lvl, cd = ctx.lvl, ctx.cd
    n = len(coeffs)
    if n == 0:
        return []
    powers = [K.t_one(lvl, cd)]
    for _ in range(n - 1):
        powers.append(K.t_mul(powers[-1], v, lvl, cd))
    out = []
    for j in range(n):
        acc = K.t_zero(lvl, cd)
        for i in range(j, n):
            c = coeffs[i]
            if K.t_is_zero(c, lvl):
                continue
            term = K.t_mul(c, powers[i - j], lvl, cd)
            cb = math.comb(i, j)
            if cb != 1:
                term = K.t_scale_q(term, Fraction(cb), lvl, cd)
            acc = K.t_add(acc, term, lvl, cd)
        out.append(acc)
    return out


def _syn_div(coeffs, v, ctx):
    """Synthetic division by (lambda - v): returns (quotient, remainder)."""
    lvl, cd = ctx.lvl, ctx.cd
    q = [K.t_zero(lvl, cd)] * (len(coeffs) - 1)
    acc = coeffs[-1]
    for i in range(len(coeffs) - 2, -1, -1):
        q[i] = acc
        acc = K.t_add(coeffs[i], K.t_mul(acc, v, lvl, cd), lvl, cd)
    return q, acc


def _compose_linfrac(coeffs, lin1, lin2, D, ctx):
    """Homogenized composition sum c_i * lin1^i * lin2^(D - i)."""
    lvl, cd = ctx.lvl, ctx.cd
    if not coeffs:
        return ()
    pow1 = [(K.t_one(lvl, cd),)]
    pow2 = [(K.t_one(lvl, cd),)]
    for _ in range(D):
        pow1.append(K.p_mul(pow1[-1], lin1, lvl, cd))
        pow2.append(K.p_mul(pow2[-1], lin2, lvl, cd))
    total = ()
    for i, c in enumerate(coeffs):
        if K.t_is_zero(c, lvl):
            continue
        term = K.p_mul(pow1[i], pow2[D - i], lvl, cd)
        term = K.p_scale(term, c, lvl, cd)
        total = K.p_add(total, term, lvl, cd)
    return total
