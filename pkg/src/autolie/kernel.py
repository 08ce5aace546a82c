"""Exact arithmetic kernel: cyclotomic numbers and towers of fraction fields.

Every value is a "payload", a nested structure of hashable tuples whose leaves
are ``fractions.Fraction``:

  level 0   tuple of Fraction of length phi(L), the coefficient vector of a
            residue modulo the L-th cyclotomic polynomial (so the vector
            (a0, a1, ...) stands for a0 + a1*zeta + a2*zeta^2 + ...),
  level k   pair (num, den) of dense coefficient tuples over level k-1
            payloads, lowest degree first; num == () encodes zero, den is
            monic with no trailing zeros and coprime to num.

Each level above 0 is the field of rational functions in one more variable
over the level below.  Canonical form (coprime, monic denominator) makes
structural equality of payloads coincide with field equality, and makes every
payload usable as a dict key.

Levels are not stored inside payloads; callers thread the level and a
:class:`CycData` table through every call.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

F0 = Fraction(0)
F1 = Fraction(1)


# ---------------------------------------------------------------------------
# Fraction polynomials (used only to set up cyclotomic tables)
# ---------------------------------------------------------------------------

def _fp_trim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return list(cs[:n])


def _fp_divmod(a, b):
    a = _fp_trim(a)
    b = _fp_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [F0] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv = F1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] * inv
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    return q, _fp_trim(r)


@lru_cache(maxsize=None)
def cyclotomic_poly(L: int) -> tuple[Fraction, ...]:
    """Monic minimal polynomial of a primitive L-th root of unity.

    Computed as (x^L - 1) / prod of the cyclotomic polynomials of the proper
    divisors of L; coefficients are integers represented as Fractions.
    """
    if L < 1:
        raise ValueError("conductor must be >= 1")
    poly = [-F1] + [F0] * (L - 1) + [F1]
    for d in range(1, L):
        if L % d == 0:
            poly, rem = _fp_divmod(poly, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(poly)


def euler_phi(L: int) -> int:
    return len(cyclotomic_poly(L)) - 1


class CycData:
    """Per-conductor reduction tables for arithmetic in Q(zeta_L)."""

    __slots__ = ("L", "phi", "mod", "red", "pow", "zero", "one", "_inv_cache")

    def __init__(self, L: int):
        self.L = L
        self.mod = cyclotomic_poly(L)
        self.phi = len(self.mod) - 1
        phi = self.phi
        base = [-c for c in self.mod[:phi]]  # x^phi reduced
        # pow[j] = x^j reduced, for 0 <= j < max(L, 2*phi - 1)
        pows = []
        v = [F0] * phi
        v[0] = F1
        for _ in range(max(L, 2 * phi - 1)):
            pows.append(tuple(v))
            top = v[phi - 1]
            v = [F0] + v[: phi - 1]
            if top:
                v = [v[i] + top * base[i] for i in range(phi)]
        self.pow = tuple(pows)
        # red[j] = x^(phi+j) reduced, used to fold products back below phi
        self.red = tuple(pows[phi:]) if phi > 1 else ()
        self.zero = (F0,) * phi
        one = [F0] * phi
        one[0] = F1
        self.one = tuple(one)
        self._inv_cache = {}


@lru_cache(maxsize=None)
def cyc_data(L: int) -> CycData:
    return CycData(L)


# ---------------------------------------------------------------------------
# level 0: Q(zeta_L)
# ---------------------------------------------------------------------------

def c_from_fraction(q: Fraction, cd: CycData):
    v = [F0] * cd.phi
    v[0] = q
    return tuple(v)


def c_is_zero(a) -> bool:
    return not any(a)


def c_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def c_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def c_neg(a):
    return tuple(-x for x in a)


def c_mul(a, b, cd: CycData):
    phi = cd.phi
    if phi == 1:
        return (a[0] * b[0],)
    out = [F0] * (2 * phi - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    low = out[:phi]
    for j in range(phi - 1):
        c = out[phi + j]
        if c:
            row = cd.red[j]
            for i in range(phi):
                if row[i]:
                    low[i] += c * row[i]
    return tuple(low)


def c_inv(a, cd: CycData):
    """Inverse in Q(zeta_L) by the extended Euclidean algorithm mod Phi_L."""
    if c_is_zero(a):
        raise ZeroDivisionError("inverse of zero cyclotomic number")
    cached = cd._inv_cache.get(a)
    if cached is not None:
        return cached
    # r0 = Phi_L, r1 = a; track t with t*a = r (mod Phi_L)
    r0, r1 = list(cd.mod), _fp_trim(a)
    t0, t1 = [], [F1]
    while r1:
        q, r = _fp_divmod(r0, r1)
        # t = t0 - q*t1
        prod = [F0] * (len(q) + len(t1))
        for i, qi in enumerate(q):
            if qi:
                for j, tj in enumerate(t1):
                    prod[i + j] += qi * tj
        t = [x - y for x, y in zip(t0 + [F0] * (len(prod) - len(t0)), prod)]
        r0, r1, t0, t1 = r1, r, t1, _fp_trim(t)
    # r0 = gcd is a nonzero constant; scale t0 by its inverse
    scale = F1 / r0[0]
    out = [c * scale for c in t0] + [F0] * (cd.phi - len(t0))
    result = tuple(out[: cd.phi])
    if len(cd._inv_cache) < 4096:
        cd._inv_cache[a] = result
    return result


def c_div(a, b, cd: CycData):
    return c_mul(a, c_inv(b, cd), cd)


def c_conj(a, cd: CycData):
    """Image under the field automorphism zeta -> zeta^(-1)."""
    out = [F0] * cd.phi
    for k, x in enumerate(a):
        if x:
            row = cd.pow[(cd.L - k) % cd.L]
            for i in range(cd.phi):
                if row[i]:
                    out[i] += x * row[i]
    return tuple(out)


def c_zeta(k: int, cd: CycData):
    return cd.pow[k % cd.L]


# ---------------------------------------------------------------------------
# generic tower ops; lvl == 0 delegates to the c_* functions
# ---------------------------------------------------------------------------

def t_zero(lvl: int, cd: CycData):
    if lvl == 0:
        return cd.zero
    return ((), (t_one(lvl - 1, cd),))


def t_one(lvl: int, cd: CycData):
    if lvl == 0:
        return cd.one
    one = t_one(lvl - 1, cd)
    return ((one,), (one,))


def t_from_fraction(q, lvl: int, cd: CycData):
    if lvl == 0:
        return c_from_fraction(Fraction(q), cd)
    if q == 0:
        return t_zero(lvl, cd)
    return ((t_from_fraction(q, lvl - 1, cd),), (t_one(lvl - 1, cd),))


def t_embed(a, from_lvl: int, to_lvl: int, cd: CycData):
    """Lift a payload to a higher level as a constant."""
    while from_lvl < to_lvl:
        if t_is_zero(a, from_lvl):
            a = ((), (t_one(from_lvl, cd),))
        else:
            a = ((a,), (t_one(from_lvl, cd),))
        from_lvl += 1
    return a


def t_is_zero(a, lvl: int) -> bool:
    if lvl == 0:
        return not any(a)
    return not a[0]


def t_is_one(a, lvl: int, cd: CycData) -> bool:
    return a == t_one(lvl, cd)


def t_neg(a, lvl: int, cd: CycData):
    if lvl == 0:
        return c_neg(a)
    return (p_neg(a[0], lvl - 1, cd), a[1])


def t_add(a, b, lvl: int, cd: CycData):
    if lvl == 0:
        return c_add(a, b)
    an, ad = a
    bn, bd = b
    if not an:
        return b
    if not bn:
        return a
    if ad == bd:
        num = p_add(an, bn, lvl - 1, cd)
        return r_make(num, ad, lvl, cd)
    g = p_gcd_monic(ad, bd, lvl - 1, cd)
    if len(g) == 1:  # coprime denominators: result is automatically reduced
        num = p_add(p_mul(an, bd, lvl - 1, cd), p_mul(bn, ad, lvl - 1, cd), lvl - 1, cd)
        den = p_mul(ad, bd, lvl - 1, cd)
        return r_monic(num, den, lvl, cd)
    ad_r = p_divexact(ad, g, lvl - 1, cd)
    bd_r = p_divexact(bd, g, lvl - 1, cd)
    num = p_add(p_mul(an, bd_r, lvl - 1, cd), p_mul(bn, ad_r, lvl - 1, cd), lvl - 1, cd)
    den = p_mul(ad, bd_r, lvl - 1, cd)
    # remaining common factor divides g only
    g2 = p_gcd_monic(num, g, lvl - 1, cd)
    if len(g2) > 1:
        num = p_divexact(num, g2, lvl - 1, cd)
        den = p_divexact(den, g2, lvl - 1, cd)
    return r_monic(num, den, lvl, cd)


def t_sub(a, b, lvl: int, cd: CycData):
    if lvl == 0:
        return c_sub(a, b)
    return t_add(a, t_neg(b, lvl, cd), lvl, cd)


def t_mul(a, b, lvl: int, cd: CycData):
    if lvl == 0:
        return c_mul(a, b, cd)
    an, ad = a
    bn, bd = b
    if not an or not bn:
        return t_zero(lvl, cd)
    # cross-cancel so the product needs no further gcd
    g1 = p_gcd_monic(an, bd, lvl - 1, cd)
    if len(g1) > 1:
        an = p_divexact(an, g1, lvl - 1, cd)
        bd = p_divexact(bd, g1, lvl - 1, cd)
    g2 = p_gcd_monic(bn, ad, lvl - 1, cd)
    if len(g2) > 1:
        bn = p_divexact(bn, g2, lvl - 1, cd)
        ad = p_divexact(ad, g2, lvl - 1, cd)
    num = p_mul(an, bn, lvl - 1, cd)
    den = p_mul(ad, bd, lvl - 1, cd)
    return r_monic(num, den, lvl, cd)


def t_inv(a, lvl: int, cd: CycData):
    if lvl == 0:
        return c_inv(a, cd)
    an, ad = a
    if not an:
        raise ZeroDivisionError("inverse of zero")
    return r_monic(ad, an, lvl, cd)


def t_div(a, b, lvl: int, cd: CycData):
    if lvl == 0:
        return c_div(a, b, cd)
    return t_mul(a, t_inv(b, lvl, cd), lvl, cd)


def t_pow(a, n: int, lvl: int, cd: CycData):
    if n < 0:
        a = t_inv(a, lvl, cd)
        n = -n
    out = t_one(lvl, cd)
    base = a
    while n:
        if n & 1:
            out = t_mul(out, base, lvl, cd)
        base = t_mul(base, base, lvl, cd) if n > 1 else base
        n >>= 1
    return out


def t_scale_q(a, q, lvl: int, cd: CycData):
    """Multiply by a rational constant; cheap, preserves canonical form."""
    if q == 0:
        return t_zero(lvl, cd)
    if lvl == 0:
        return tuple(x * q for x in a)
    num, den = a
    return (tuple(t_scale_q(c, q, lvl - 1, cd) for c in num), den)


def t_conj(a, lvl: int, cd: CycData):
    """zeta -> zeta^(-1) applied to every cyclotomic coefficient."""
    if lvl == 0:
        return c_conj(a, cd)
    num = tuple(t_conj(c, lvl - 1, cd) for c in a[0])
    den = tuple(t_conj(c, lvl - 1, cd) for c in a[1])
    return (num, den)


# ---------------------------------------------------------------------------
# dense polynomials whose coefficients are payloads of a given level
# ---------------------------------------------------------------------------

def p_trim(cs, lvl: int):
    n = len(cs)
    while n and t_is_zero(cs[n - 1], lvl):
        n -= 1
    return tuple(cs[:n])


def p_add(a, b, lvl: int, cd: CycData):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = t_add(out[i], c, lvl, cd)
    return p_trim(out, lvl)


def p_neg(a, lvl: int, cd: CycData):
    return tuple(t_neg(c, lvl, cd) for c in a)


def p_sub(a, b, lvl: int, cd: CycData):
    return p_add(a, p_neg(b, lvl, cd), lvl, cd)


def p_mul(a, b, lvl: int, cd: CycData):
    if not a or not b:
        return ()
    zero = t_zero(lvl, cd)
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if t_is_zero(x, lvl):
            continue
        for j, y in enumerate(b):
            if not t_is_zero(y, lvl):
                out[i + j] = t_add(out[i + j], t_mul(x, y, lvl, cd), lvl, cd)
    return p_trim(out, lvl)


def p_scale(cs, s, lvl: int, cd: CycData):
    if t_is_zero(s, lvl):
        return ()
    return p_trim([t_mul(c, s, lvl, cd) for c in cs], lvl)


def p_divmod(a, b, lvl: int, cd: CycData):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), tuple(a)
    zero = t_zero(lvl, cd)
    q = [zero] * (len(a) - len(b) + 1)
    r = list(a)
    inv = t_inv(b[-1], lvl, cd)
    for i in range(len(a) - len(b), -1, -1):
        c = t_mul(r[i + len(b) - 1], inv, lvl, cd)
        if t_is_zero(c, lvl):
            continue
        q[i] = c
        for j in range(len(b) - 1):
            if not t_is_zero(b[j], lvl):
                r[i + j] = t_sub(r[i + j], t_mul(c, b[j], lvl, cd), lvl, cd)
        r[i + len(b) - 1] = zero
    return p_trim(q, lvl), p_trim(r, lvl)


def p_divexact(a, b, lvl: int, cd: CycData):
    q, r = p_divmod(a, b, lvl, cd)
    assert not r, "division was expected to be exact"
    return q


def p_monic(cs, lvl: int, cd: CycData):
    if not cs:
        return cs
    lc = cs[-1]
    if t_is_one(lc, lvl, cd):
        return tuple(cs)
    inv = t_inv(lc, lvl, cd)
    return tuple(t_mul(c, inv, lvl, cd) for c in cs)


def p_gcd_monic(a, b, lvl: int, cd: CycData):
    """Monic gcd by the Euclidean algorithm; returns (one,) for coprime inputs."""
    a = p_trim(a, lvl)
    b = p_trim(b, lvl)
    while b:
        _, r = p_divmod(a, b, lvl, cd)
        a, b = b, p_monic(r, lvl, cd)
    if not a:
        return ()
    return p_monic(a, lvl, cd)


def p_eval(cs, v, lvl: int, cd: CycData):
    """Horner evaluation; v and the result are payloads of the same level."""
    out = t_zero(lvl, cd)
    for c in reversed(cs):
        out = t_add(t_mul(out, v, lvl, cd), c, lvl, cd)
    return out


def p_pow(cs, n: int, lvl: int, cd: CycData):
    out = (t_one(lvl, cd),)
    base = tuple(cs)
    while n:
        if n & 1:
            out = p_mul(out, base, lvl, cd)
        if n > 1:
            base = p_mul(base, base, lvl, cd)
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# canonical rational pairs at a level
# ---------------------------------------------------------------------------

def r_monic(num, den, lvl: int, cd: CycData):
    """Normalize an already-coprime pair to a monic denominator."""
    num = p_trim(num, lvl - 1)
    den = p_trim(den, lvl - 1)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ((), (t_one(lvl - 1, cd),))
    lc = den[-1]
    if not t_is_one(lc, lvl - 1, cd):
        inv = t_inv(lc, lvl - 1, cd)
        num = tuple(t_mul(c, inv, lvl - 1, cd) for c in num)
        den = tuple(t_mul(c, inv, lvl - 1, cd) for c in den[:-1]) + (t_one(lvl - 1, cd),)
    return (tuple(num), tuple(den))


def r_make(num, den, lvl: int, cd: CycData):
    """Full canonicalization: cancel the gcd, then make the denominator monic."""
    num = p_trim(num, lvl - 1)
    den = p_trim(den, lvl - 1)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ((), (t_one(lvl - 1, cd),))
    g = p_gcd_monic(num, den, lvl - 1, cd)
    if len(g) > 1:
        num = p_divexact(num, g, lvl - 1, cd)
        den = p_divexact(den, g, lvl - 1, cd)
    return r_monic(num, den, lvl, cd)


def t_eval_all(a, lvl: int, values, cd: CycData):
    """Evaluate a payload at level-0 values for every tower variable.

    ``values[k]`` is the level-0 payload substituted for the level k+1
    variable.  Raises ZeroDivisionError if a denominator vanishes (callers
    translate this to EvalPole).
    """
    if lvl == 0:
        return a
    num, den = a
    v = values[lvl - 1]
    n = _eval_coeffs(num, lvl - 1, values, v, cd)
    d = _eval_coeffs(den, lvl - 1, values, v, cd)
    if c_is_zero(d):
        raise ZeroDivisionError("denominator vanishes at the binding")
    return c_div(n, d, cd)


def _eval_coeffs(cs, lvl, values, v, cd):
    out = cd.zero
    for c in reversed(cs):
        out = c_add(c_mul(out, v, cd), t_eval_all(c, lvl, values, cd))
    return out


def t_eval_top(a, lvl: int, v, cd: CycData):
    """Evaluate only the top variable at a payload v of level lvl-1."""
    num, den = a
    n = p_eval(num, v, lvl - 1, cd)
    d = p_eval(den, v, lvl - 1, cd)
    if t_is_zero(d, lvl - 1):
        raise ZeroDivisionError("denominator vanishes at the binding")
    return t_div(n, d, lvl - 1, cd)
