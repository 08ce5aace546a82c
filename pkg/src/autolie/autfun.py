"""Scalar automorphic functions: group averages, primitives, rebasing.

A primitive automorphic function for a pair of distinct orbits has poles
exactly on the first orbit and zeros exactly on the second, each with
multiplicity equal to the orbit's isotropy order, and is unique up to a
constant factor.  The constructor normalizes the leading local coefficient at
the designated pole representative to 1.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernel as K
from .errors import OrbitClash, SameOrbit
from .moebius import FinGroup, MoebiusT, Orbit, SpherePoint, orbit_of, orbit_polynomial
from .polyrat import RatL
from .scalars import _wrap


def average(g: FinGroup, f: RatL) -> RatL:
    """Group average (1/|G|) sum of pullbacks; a projector onto invariants."""
    terms = [f.pullback(m) for m in g.elements]
    while len(terms) > 1:  # balanced summation keeps intermediate gcds small
        terms = [
            terms[i] + terms[i + 1] if i + 1 < len(terms) else terms[i]
            for i in range(0, len(terms), 2)
        ]
    return terms[0] * Fraction(1, g.order)


def pole_average(g: FinGroup, gamma: SpherePoint) -> RatL:
    """Average of (lambda - gamma)^(-k) with k the isotropy order of gamma.

    Computed over the common denominator prod (lambda - p)^k over the finite
    orbit points, which avoids any intermediate gcd; the only cancellation
    check needed afterwards is against the known orbit roots.
    """
    ctx = g.ctx
    lvl, cd = ctx.lvl, ctx.cd
    if gamma.is_infinite():
        tau = MoebiusT(ctx, 0, 1, 1, 0)  # lambda -> 1/lambda
        fh = pole_average(g.conjugated(tau), SpherePoint.of(ctx, 0))
        return fh.pullback(tau)
    orb = orbit_of(g, gamma)
    k = orb.isotropy_order
    gv = gamma.value().pay
    one = K.t_one(lvl, cd)

    finite = [p for p in orb.points if not p.is_infinite()]
    fin_vals = [K.t_div(p.p, p.q, lvl, cd) for p in finite]
    D = (one,)
    for v in fin_vals:
        D = K.p_mul(D, K.p_pow((K.t_neg(v, lvl, cd), one), k, lvl, cd), lvl, cd)
    cof = {}  # index of orbit point -> D / (lambda - p)^k
    total = ()
    for m in g.elements:
        a, b, c, d = m.a, m.b, m.c, m.d
        # 1/(sigma^{-1}(lambda) - gamma) = (-c*lambda + a)/((d + gamma c) lambda - (b + gamma a))
        num_lin = K.p_trim((a, K.t_neg(c, lvl, cd)), lvl)
        s1 = K.t_add(d, K.t_mul(gv, c, lvl, cd), lvl, cd)
        s0 = K.t_add(b, K.t_mul(gv, a, lvl, cd), lvl, cd)
        num = K.p_pow(num_lin, k, lvl, cd)
        if K.t_is_zero(s1, lvl):
            # sigma maps gamma to infinity: the term is a polynomial
            scale = K.t_inv(K.t_pow(K.t_neg(s0, lvl, cd), k, lvl, cd), lvl, cd)
            term = K.p_mul(K.p_scale(num, scale, lvl, cd), D, lvl, cd)
        else:
            pv = K.t_div(s0, s1, lvl, cd)  # the image point sigma(gamma)
            idx = next(i for i, v in enumerate(fin_vals) if v == pv)
            q = cof.get(idx)
            if q is None:
                q = K.p_divexact(D, K.p_pow((K.t_neg(fin_vals[idx], lvl, cd), one), k, lvl, cd), lvl, cd)
                cof[idx] = q
            scale = K.t_inv(K.t_pow(s1, k, lvl, cd), lvl, cd)
            term = K.p_mul(K.p_scale(num, scale, lvl, cd), q, lvl, cd)
        total = K.p_add(total, term, lvl, cd)
    total = K.p_scale(total, K.t_from_fraction(Fraction(1, g.order), lvl, cd), lvl, cd)
    # cancel only against the known roots of D
    for v in fin_vals:
        lin = (K.t_neg(v, lvl, cd), one)
        while True:
            qn, rn = K.p_divmod(total, lin, lvl, cd)
            if rn or not total:
                break
            qd, rd = K.p_divmod(D, lin, lvl, cd)
            if rd:
                break
            total, D = qn, qd
    return RatL._raw(ctx, K.r_monic(total, D, lvl + 1, cd))


class AutoFun:
    """A group-invariant rational function with declared pole/zero orbits."""

    __slots__ = ("group", "fun", "pole_orbit", "zero_orbit")

    def __init__(self, group: FinGroup, fun: RatL, pole_orbit: Orbit,
                 zero_orbit: Orbit | None = None, check: bool = True):
        self.group = group
        self.fun = fun
        self.pole_orbit = pole_orbit
        self.zero_orbit = zero_orbit
        if check:
            self.validate()

    def validate(self, full_invariance: bool = False) -> None:
        f = self.fun
        k1 = self.pole_orbit.isotropy_order
        prof = f.pole_profile(self.pole_orbit.points)
        for p in self.pole_orbit.points:
            order = prof.order_at(p)
            if order == 0 or order % k1:
                raise ValueError(
                    f"pole order {order} at an orbit point is not a positive multiple of {k1}"
                )
        if self.zero_orbit is not None:
            k2 = self.zero_orbit.isotropy_order
            for p in self.zero_orbit.points:
                v = f.val_at(p)
                if v <= 0 or v % k2:
                    raise ValueError(
                        f"zero order {v} at an orbit point is not a positive multiple of {k2}"
                    )
        members = self.group.elements if full_invariance else self.group.generators()
        for m in members:
            if not f.pullback_eq(m):
                raise ValueError("function is not invariant under the group")

    def __call__(self, p) -> "object":
        return self.fun.eval_at(p)

    def __repr__(self):
        return f"AutoFun({self.fun.pretty()})"


def primitive(g: FinGroup, g1: SpherePoint | int, g2: SpherePoint | int) -> AutoFun:
    """The primitive invariant with poles on the orbit of g1, zeros on that of g2."""
    ctx = g.ctx
    if not isinstance(g1, SpherePoint):
        g1 = SpherePoint.of(ctx, g1)
    if not isinstance(g2, SpherePoint):
        g2 = SpherePoint.of(ctx, g2)
    o1 = orbit_of(g, g1)
    if o1.contains(g2):
        raise SameOrbit("seed points lie on the same orbit")
    o2 = orbit_of(g, g2)
    fh = pole_average(g, g1)
    c = fh.eval_at(g2)
    f = fh - RatL.from_scalar(c)
    lead = f.laurent_at(g1, 1).coeffs[0]
    f = f * RatL.from_scalar(lead.inv())
    return AutoFun(g, f, o1, o2)


def rebase(f: AutoFun, g3: SpherePoint | int, g4: SpherePoint | int | None = None) -> AutoFun:
    """Move the zero orbit (g4 omitted) or both orbits of a primitive.

    The pole orbit moves to the orbit of g3 and the zero orbit to that of g4;
    with g4 on the current pole orbit this degenerates to the swap c/f.  Both
    new seeds must avoid the current pole orbit.
    """
    g = f.group
    ctx = g.ctx
    if not isinstance(g3, SpherePoint):
        g3 = SpherePoint.of(ctx, g3)
    if g4 is None:
        # zero shift: same poles, zeros moved to the orbit of g3
        if f.pole_orbit.contains(g3):
            raise OrbitClash("new zero seed lies on the pole orbit")
        c = f.fun.eval_at(g3)
        out = f.fun - RatL.from_scalar(c)
        rep = f.pole_orbit.seed
        lead = out.laurent_at(rep, 1).coeffs[0]
        out = out * RatL.from_scalar(lead.inv())
        return AutoFun(g, out, f.pole_orbit, orbit_of(g, g3))
    if not isinstance(g4, SpherePoint):
        g4 = SpherePoint.of(ctx, g4)
    if f.pole_orbit.contains(g3):
        raise OrbitClash("new pole seed lies on the current pole orbit")
    o3 = orbit_of(g, g3)
    if o3.contains(g4):
        raise SameOrbit("new pole and zero seeds lie on the same orbit")
    den = f.fun - RatL.from_scalar(f.fun.eval_at(g3))
    if f.pole_orbit.contains(g4):
        out = 1 / den
    else:
        num = f.fun - RatL.from_scalar(f.fun.eval_at(g4))
        out = num / den
    lead = out.laurent_at(g3, 1).coeffs[0]
    out = out * RatL.from_scalar(lead.inv())
    return AutoFun(g, out, o3, orbit_of(g, g4))


def klein_form(g: FinGroup, pole_orbit: Orbit, zero_orbit: Orbit) -> RatL:
    """Independent construction of the primitive from orbit polynomials.

    Returns zero_poly^k2 / pole_poly^k1.  Both divisors have total degree |G|
    on the sphere, so the order at infinity comes out right automatically.
    Used as an oracle against the averaging route.
    """
    ctx = g.ctx
    num = orbit_polynomial(zero_orbit)
    den = orbit_polynomial(pole_orbit)
    k1, k2 = pole_orbit.isotropy_order, zero_orbit.isotropy_order
    return RatL(ctx, num) ** k2 / RatL(ctx, den) ** k1
