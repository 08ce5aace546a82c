"""Exact scalars: cyclotomic numbers and towers Q(zeta_L)(p1)...(pk).

A :class:`Ctx` fixes the coefficient field once for a whole computation: the
conductor L of the cyclotomic base field and an ordered tuple of formal
parameter names.  Mixing scalars from different contexts raises
:class:`TowerMismatch`; there is no silent embedding.

:class:`Scalar` values are immutable and canonical, so ``==`` is exact field
equality and scalars can be used as dict keys.  A scalar whose context has an
empty parameter tower is a :class:`CycNum`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import kernel as K
from .errors import EvalPole, MissingBinding, TowerMismatch

_RESERVED_NAMES = {"l", "poly"}


class Ctx:
    """Interned description of a coefficient field Q(zeta_L)(params...)."""

    __slots__ = ("L", "params", "cd", "lvl")

    def __init__(self, L: int, params: tuple[str, ...]):
        for name in params:
            if not name.isidentifier():
                raise ValueError(f"parameter name {name!r} is not an identifier")
            if name in _RESERVED_NAMES or (name[0] == "z" and name[1:].isdigit()):
                raise ValueError(f"parameter name {name!r} is reserved")
        if len(set(params)) != len(params):
            raise ValueError("parameter names must be unique")
        self.L = L
        self.params = params
        self.cd = K.cyc_data(L)
        self.lvl = len(params)

    @staticmethod
    @lru_cache(maxsize=None)
    def get(L: int, params: tuple[str, ...] = ()) -> "Ctx":
        return Ctx(L, tuple(params))

    # -- scalar constructors -------------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction or Scalar into this context."""
        if isinstance(value, Scalar):
            if value.ctx is self:
                return value
            raise TowerMismatch(f"scalar from {value.ctx} used in {self}")
        pay = K.t_from_fraction(Fraction(value), self.lvl, self.cd)
        return _wrap(self, pay)

    def zero(self) -> "Scalar":
        return _wrap(self, K.t_zero(self.lvl, self.cd))

    def one(self) -> "Scalar":
        return _wrap(self, K.t_one(self.lvl, self.cd))

    def zeta(self, order: int | None = None, k: int = 1) -> "Scalar":
        """The root of unity zeta_order^k (order defaults to the conductor)."""
        if order is None:
            order = self.L
        if self.L % order:
            raise TowerMismatch(
                f"zeta_{order} does not lie in Q(zeta_{self.L}); conductor mismatch"
            )
        pay = K.c_zeta(k * (self.L // order), self.cd)
        return _wrap(self, K.t_embed(pay, 0, self.lvl, self.cd))

    def param(self, name: str) -> "Scalar":
        if name not in self.params:
            raise TowerMismatch(f"unknown parameter {name!r} in {self}")
        pos = self.params.index(name) + 1
        one_below = K.t_one(pos - 1, self.cd)
        var = ((K.t_zero(pos - 1, self.cd), one_below), (one_below,))
        return _wrap(self, K.t_embed(var, pos, self.lvl, self.cd))

    def lift(self, x: "Scalar") -> "Scalar":
        """Embed a scalar from a prefix tower (same conductor) into this context."""
        if x.ctx.L != self.L or x.ctx.params != self.params[: x.ctx.lvl]:
            raise TowerMismatch(f"cannot lift from {x.ctx} into {self}")
        return _wrap(self, K.t_embed(x.pay, x.ctx.lvl, self.lvl, self.cd))

    def parse(self, text: str) -> "Scalar":
        from .textio import parse_scalar

        return parse_scalar(text, self)

    def __repr__(self):
        tail = "".join(f"({p})" for p in self.params)
        return f"Q(z{self.L}){tail}"


def _wrap(ctx: Ctx, pay) -> "Scalar":
    cls = Scalar if ctx.params else CycNum
    obj = object.__new__(cls)
    obj.ctx = ctx
    obj.pay = pay
    return obj


def _coerce(ctx: Ctx, other):
    if isinstance(other, Scalar):
        if other.ctx is not ctx:
            raise TowerMismatch(f"operands from {other.ctx} and {ctx}")
        return other.pay
    if isinstance(other, (int, Fraction)):
        return K.t_from_fraction(Fraction(other), ctx.lvl, ctx.cd)
    return None


class Scalar:
    """Element of Q(zeta_L)(p1)...(pk) in canonical form."""

    __slots__ = ("ctx", "pay")

    def __init__(self, ctx: Ctx, value=0):
        coerced = ctx.scalar(value)
        self.ctx = ctx
        self.pay = coerced.pay

    # -- ring/field structure -------------------------------------------------

    def is_zero(self) -> bool:
        return K.t_is_zero(self.pay, self.ctx.lvl)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ctx is other.ctx and self.pay == other.pay
        if isinstance(other, (int, Fraction)):
            return self.pay == K.t_from_fraction(Fraction(other), self.ctx.lvl, self.ctx.cd)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.L, self.ctx.params, self.pay))

    def __add__(self, other):
        pay = _coerce(self.ctx, other)
        if pay is None:
            return NotImplemented
        return _wrap(self.ctx, K.t_add(self.pay, pay, self.ctx.lvl, self.ctx.cd))

    __radd__ = __add__

    def __neg__(self):
        return _wrap(self.ctx, K.t_neg(self.pay, self.ctx.lvl, self.ctx.cd))

    def __sub__(self, other):
        pay = _coerce(self.ctx, other)
        if pay is None:
            return NotImplemented
        return _wrap(self.ctx, K.t_sub(self.pay, pay, self.ctx.lvl, self.ctx.cd))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pay = _coerce(self.ctx, other)
        if pay is None:
            return NotImplemented
        return _wrap(self.ctx, K.t_mul(self.pay, pay, self.ctx.lvl, self.ctx.cd))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pay = _coerce(self.ctx, other)
        if pay is None:
            return NotImplemented
        from .errors import DivisionByZero

        if K.t_is_zero(pay, self.ctx.lvl):
            raise DivisionByZero("division by the zero scalar")
        return _wrap(self.ctx, K.t_div(self.pay, pay, self.ctx.lvl, self.ctx.cd))

    def __rtruediv__(self, other):
        return self.ctx.scalar(other) / self

    def __pow__(self, n: int):
        from .errors import DivisionByZero

        if n < 0 and self.is_zero():
            raise DivisionByZero("negative power of zero")
        return _wrap(self.ctx, K.t_pow(self.pay, n, self.ctx.lvl, self.ctx.cd))

    def inv(self) -> "Scalar":
        return self.__pow__(-1)

    def conj(self) -> "Scalar":
        """Complex conjugation zeta -> zeta^(-1), applied coefficientwise."""
        return _wrap(self.ctx, K.t_conj(self.pay, self.ctx.lvl, self.ctx.cd))

    # -- evaluation ------------------------------------------------------------

    def eval(self, bindings: dict) -> "CycNum":
        """Substitute cyclotomic values for every tower parameter.

        ``bindings`` maps parameter names to CycNum / int / Fraction values.
        """
        ctx = self.ctx
        base = Ctx.get(ctx.L, ())
        values = []
        for name in ctx.params:
            if name not in bindings:
                raise MissingBinding(f"no binding for parameter {name!r}")
            v = bindings[name]
            if isinstance(v, Scalar):
                if v.ctx.L != ctx.L or v.ctx.params:
                    raise TowerMismatch("bindings must be cyclotomic numbers of the same conductor")
                values.append(v.pay)
            else:
                values.append(K.c_from_fraction(Fraction(v), ctx.cd))
        try:
            pay = K.t_eval_all(self.pay, ctx.lvl, values, ctx.cd)
        except ZeroDivisionError as exc:
            raise EvalPole(str(exc)) from None
        return _wrap(base, pay)

    def as_fraction(self) -> Fraction:
        """The rational value of a constant scalar; raises if not rational."""
        cyc = self.eval({})
        coeffs = cyc.pay
        if any(coeffs[1:]):
            raise ValueError("scalar is not a rational number")
        return coeffs[0]

    # -- printing ---------------------------------------------------------------

    def text(self) -> str:
        from .textio import scalar_to_text

        return scalar_to_text(self)

    def __repr__(self):
        return self.text()


class CycNum(Scalar):
    """Element of the cyclotomic field Q(zeta_L); a Scalar with empty tower."""

    __slots__ = ()

    def __init__(self, ctx: Ctx, value=0):
        if ctx.params:
            raise TowerMismatch("CycNum requires a context with no parameters")
        super().__init__(ctx, value)

    @property
    def conductor(self) -> int:
        return self.ctx.L

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self.pay


def cyc_root(L: int, k: int = 1) -> CycNum:
    """The root of unity zeta_L^k as an element of Q(zeta_L)."""
    if L < 1:
        raise ValueError("order must be >= 1")
    return Ctx.get(L, ()).zeta(L, k)


def cyc_conj(x: CycNum) -> CycNum:
    return x.conj()
