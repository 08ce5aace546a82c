"""Sphere points, fractional-linear transformations and the finite group catalog.

Points and transformations are projective: a point is a homogeneous pair
(p, q) with (1, 0) the point at infinity, and a transformation is a 2x2
matrix up to a nonzero scalar.  Equality always goes through cross
multiplication.  For contexts without formal parameters a canonical hashable
key (scaled so the first nonzero entry is 1) speeds up closure and orbit
deduplication; with parameters present, deduplication falls back to pairwise
cross-multiplication scans.
"""

from __future__ import annotations

from .errors import ClosureOverflow, RelationFailure, UnknownGroup
from . import kernel as K
from .polyrat import PolyL
from .scalars import Ctx, Scalar, _wrap


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


class SpherePoint:
    """Point of the Riemann sphere as a homogeneous pair of scalars."""

    __slots__ = ("ctx", "p", "q")

    def __init__(self, ctx: Ctx, p, q=1):
        pp = ctx.scalar(p)
        qq = ctx.scalar(q)
        if pp.is_zero() and qq.is_zero():
            raise ValueError("(0 : 0) is not a point")
        self.ctx = ctx
        self.p = pp.pay
        self.q = qq.pay

    @staticmethod
    def of(ctx: Ctx, value) -> "SpherePoint":
        return SpherePoint(ctx, value, 1)

    @staticmethod
    def infinity(ctx: Ctx) -> "SpherePoint":
        return SpherePoint(ctx, 1, 0)

    def is_infinite(self) -> bool:
        return K.t_is_zero(self.q, self.ctx.lvl)

    def value(self) -> Scalar:
        if self.is_infinite():
            raise ValueError("the point at infinity has no affine value")
        return _wrap(self.ctx, K.t_div(self.p, self.q, self.ctx.lvl, self.ctx.cd))

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            try:
                other = SpherePoint.of(self.ctx, self.ctx.scalar(other))
            except Exception:
                return NotImplemented
        if self.ctx is not other.ctx:
            return False
        lvl, cd = self.ctx.lvl, self.ctx.cd
        lhs = K.t_mul(self.p, other.q, lvl, cd)
        rhs = K.t_mul(other.p, self.q, lvl, cd)
        return lhs == rhs

    def key(self):
        """Canonical hashable key (constant contexts only)."""
        lvl, cd = self.ctx.lvl, self.ctx.cd
        if not K.t_is_zero(self.p, lvl):
            inv = K.t_inv(self.p, lvl, cd)
            return (K.t_one(lvl, cd), K.t_mul(self.q, inv, lvl, cd))
        return (K.t_zero(lvl, cd), K.t_one(lvl, cd))

    def __hash__(self):
        return hash((id(self.ctx), self.key()))

    def __repr__(self):
        if self.is_infinite():
            return "inf"
        return self.value().text()


class MoebiusT:
    """Fractional-linear transformation lambda -> (a*lambda + b)/(c*lambda + d)."""

    __slots__ = ("ctx", "a", "b", "c", "d")

    def __init__(self, ctx: Ctx, a, b, c, d):
        lvl, cd = ctx.lvl, ctx.cd
        pays = [ctx.scalar(x).pay for x in (a, b, c, d)]
        det = K.t_sub(
            K.t_mul(pays[0], pays[3], lvl, cd), K.t_mul(pays[1], pays[2], lvl, cd), lvl, cd
        )
        if K.t_is_zero(det, lvl):
            raise ValueError("singular matrix is not a sphere transformation")
        self.ctx = ctx
        self.a, self.b, self.c, self.d = pays

    @staticmethod
    def _raw(ctx, a, b, c, d) -> "MoebiusT":
        obj = object.__new__(MoebiusT)
        obj.ctx, obj.a, obj.b, obj.c, obj.d = ctx, a, b, c, d
        return obj

    @staticmethod
    def identity(ctx: Ctx) -> "MoebiusT":
        one, zero = K.t_one(ctx.lvl, ctx.cd), K.t_zero(ctx.lvl, ctx.cd)
        return MoebiusT._raw(ctx, one, zero, zero, one)

    def entries(self):
        return tuple(_wrap(self.ctx, x) for x in (self.a, self.b, self.c, self.d))

    def compose(self, other: "MoebiusT") -> "MoebiusT":
        """Matrix product; self acts after other."""
        lvl, cd = self.ctx.lvl, self.ctx.cd
        m = K.t_mul
        s = K.t_add
        return MoebiusT._raw(
            self.ctx,
            s(m(self.a, other.a, lvl, cd), m(self.b, other.c, lvl, cd), lvl, cd),
            s(m(self.a, other.b, lvl, cd), m(self.b, other.d, lvl, cd), lvl, cd),
            s(m(self.c, other.a, lvl, cd), m(self.d, other.c, lvl, cd), lvl, cd),
            s(m(self.c, other.b, lvl, cd), m(self.d, other.d, lvl, cd), lvl, cd),
        )

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "MoebiusT":
        lvl, cd = self.ctx.lvl, self.ctx.cd
        return MoebiusT._raw(
            self.ctx, self.d, K.t_neg(self.b, lvl, cd), K.t_neg(self.c, lvl, cd), self.a
        )

    def apply(self, p: SpherePoint) -> SpherePoint:
        lvl, cd = self.ctx.lvl, self.ctx.cd
        out = object.__new__(SpherePoint)
        out.ctx = self.ctx
        out.p = K.t_add(K.t_mul(self.a, p.p, lvl, cd), K.t_mul(self.b, p.q, lvl, cd), lvl, cd)
        out.q = K.t_add(K.t_mul(self.c, p.p, lvl, cd), K.t_mul(self.d, p.q, lvl, cd), lvl, cd)
        return out

    def __eq__(self, other):
        if not isinstance(other, MoebiusT) or self.ctx is not other.ctx:
            return NotImplemented
        lvl, cd = self.ctx.lvl, self.ctx.cd
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        ref = next(i for i, x in enumerate(mine) if not K.t_is_zero(x, lvl))
        if K.t_is_zero(theirs[ref], lvl):
            return False
        for i in range(4):
            lhs = K.t_mul(mine[i], theirs[ref], lvl, cd)
            rhs = K.t_mul(theirs[i], mine[ref], lvl, cd)
            if lhs != rhs:
                return False
        return True

    def key(self):
        """Canonical projective key (constant contexts only)."""
        lvl, cd = self.ctx.lvl, self.ctx.cd
        vals = (self.a, self.b, self.c, self.d)
        ref = next(x for x in vals if not K.t_is_zero(x, lvl))
        inv = K.t_inv(ref, lvl, cd)
        return tuple(K.t_mul(x, inv, lvl, cd) for x in vals)

    def __hash__(self):
        return hash((id(self.ctx), self.key()))

    def is_identity(self) -> bool:
        lvl = self.ctx.lvl
        return (
            K.t_is_zero(self.b, lvl)
            and K.t_is_zero(self.c, lvl)
            and K.t_mul(self.a, K.t_one(lvl, self.ctx.cd), lvl, self.ctx.cd) == self.d
        )

    def pretty(self) -> str:
        from .textio import rat_poly_text

        num = rat_poly_text(K.p_trim((self.b, self.a), self.ctx.lvl), self.ctx)
        den = rat_poly_text(K.p_trim((self.d, self.c), self.ctx.lvl), self.ctx)
        return num if den == "1" else f"({num})/({den})"

    def __repr__(self):
        return self.pretty()


class FinGroup:
    """Finite group of sphere transformations with lazy index tables."""

    def __init__(self, ctx: Ctx, elements, gen_indices, name=""):
        self.ctx = ctx
        self.elements = list(elements)
        self.gen_indices = tuple(gen_indices)
        self.name = name
        self._mult = {}
        self._inv = {}
        self._index = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def generators(self):
        return [self.elements[i] for i in self.gen_indices]

    def index_of(self, m: MoebiusT) -> int:
        if not self.ctx.params:
            if self._index is None:
                self._index = {e.key(): i for i, e in enumerate(self.elements)}
            return self._index[m.key()]
        for i, e in enumerate(self.elements):
            if e == m:
                return i
        raise KeyError("transformation is not a group element")

    def mult(self, i: int, j: int) -> int:
        got = self._mult.get((i, j))
        if got is None:
            got = self.index_of(self.elements[i].compose(self.elements[j]))
            self._mult[(i, j)] = got
        return got

    def inv(self, i: int) -> int:
        got = self._inv.get(i)
        if got is None:
            got = self.index_of(self.elements[i].inverse())
            self._inv[i] = got
        return got

    def mult_table(self):
        return [[self.mult(i, j) for j in range(self.order)] for i in range(self.order)]

    def word(self, letters: str) -> MoebiusT:
        """Evaluate a word in the generators, e.g. "sst" = s*s*t (left to right)."""
        names = "stuvw"
        out = MoebiusT.identity(self.ctx)
        for ch in letters:
            out = out.compose(self.elements[self.gen_indices[names.index(ch)]])
        return out

    def check_relations(self, relations: list[str]) -> None:
        """Each relation is a generator word that must evaluate to the identity."""
        ident = MoebiusT.identity(self.ctx)
        for rel in relations:
            if not self.word(rel) == ident:
                raise RelationFailure(f"relation {rel!r} = id fails in {self.name or 'group'}")

    def conjugated(self, tau: MoebiusT) -> "FinGroup":
        """The group tau * G * tau^(-1) with the same table structure."""
        tinv = tau.inverse()
        elems = [tau.compose(e).compose(tinv) for e in self.elements]
        out = FinGroup(self.ctx, elems, self.gen_indices, name=self.name + "~")
        return out

    def __repr__(self):
        return f"FinGroup({self.name or '?'}, order={self.order})"


def group_generate(gens, bound: int = 256, name: str = "") -> FinGroup:
    """Breadth-first closure of the generators with projective deduplication."""
    if not gens:
        raise ValueError("at least one generator required")
    ctx = gens[0].ctx
    ident = MoebiusT.identity(ctx)
    elements = [ident]
    use_keys = not ctx.params
    seen = {ident.key()} if use_keys else None

    def find(m):
        if use_keys:
            return m.key() in seen
        return any(e == m for e in elements)

    def push(m):
        if use_keys:
            seen.add(m.key())
        elements.append(m)

    gen_indices = []
    for g in gens:
        if not find(g):
            push(g)
        gen_indices.append(next(i for i, e in enumerate(elements) if e == g))
    frontier = list(elements)
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                cand = m.compose(g)
                if not find(cand):
                    if len(elements) >= bound:
                        raise ClosureOverflow(
                            f"closure exceeded bound {bound}; generators are not finite"
                        )
                    push(cand)
                    new.append(cand)
        frontier = new
    return FinGroup(ctx, elements, gen_indices, name=name)


# ---------------------------------------------------------------------------
# the classical catalog
# ---------------------------------------------------------------------------

_DEFAULT_RELATIONS = {
    "T": ["ss", "ttt", "ststst"],
    "O": ["ssss", "tt", "ststst"],
    "I": ["sssss", "tt", "ststst"],
}


def default_conductor(name: str, N: int | None = None) -> int:
    if name == "Z" or name == "D":
        return _lcm(4, N)
    return {"T": 12, "O": 8, "I": 20}[name]


def catalog(name: str, N: int | None = None, ctx: Ctx | None = None,
            conductor: int | None = None) -> FinGroup:
    """Build one of the five classical finite groups on its standard generators.

    Pass `conductor` (a multiple of the default) to host extra algebraic
    points, or a full `ctx` to work over a parameter tower.
    """
    name = name.upper()
    if name not in ("Z", "D", "T", "O", "I"):
        raise UnknownGroup(f"unknown group name {name!r}")
    if name in ("Z", "D"):
        if N is None:
            raise UnknownGroup(f"group {name} needs an index N")
        if name == "Z" and N < 1:
            raise UnknownGroup("Z_N requires N >= 1")
        if name == "D" and N < 2:
            raise UnknownGroup("D_N requires N >= 2")
    need = default_conductor(name, N)
    if ctx is None:
        L = conductor if conductor is not None else need
        if L % need:
            raise UnknownGroup(f"conductor {L} cannot host the generators (needs {need})")
        ctx = Ctx.get(L, ())
    elif ctx.L % need:
        raise UnknownGroup(f"context conductor {ctx.L} cannot host the generators")

    one, zero = 1, 0
    if name == "Z":
        om = ctx.zeta(N)
        gens = [MoebiusT(ctx, om, zero, zero, one)]
        g = group_generate(gens, bound=4 * N + 8, name=f"Z{N}")
        if g.order != N:
            raise RelationFailure(f"Z_{N} closure has order {g.order}")
        return g
    if name == "D":
        om = ctx.zeta(N)
        gens = [MoebiusT(ctx, om, zero, zero, one), MoebiusT(ctx, zero, one, one, zero)]
        g = group_generate(gens, bound=8 * N + 8, name=f"D{N}")
        g.check_relations(["s" * N, "tt", "stst"])
        if g.order != 2 * N:
            raise RelationFailure(f"D_{N} closure has order {g.order}")
        return g
    if name == "T":
        i_ = ctx.zeta(4)
        gens = [MoebiusT(ctx, -ctx.one(), zero, zero, one), MoebiusT(ctx, one, i_, one, -i_)]
        g = group_generate(gens, bound=64, name="T")
    elif name == "O":
        i_ = ctx.zeta(4)
        gens = [MoebiusT(ctx, i_, zero, zero, one), MoebiusT(ctx, one, one, one, -ctx.one())]
        g = group_generate(gens, bound=96, name="O")
    else:
        ep = ctx.zeta(5)
        u = ep * ep + ep * ep * ep  # epsilon^2 + epsilon^3
        gens = [MoebiusT(ctx, ep, zero, zero, one), MoebiusT(ctx, u, one, one, -u)]
        g = group_generate(gens, bound=150, name="I")
    g.check_relations(_DEFAULT_RELATIONS[name])
    expect = {"T": 12, "O": 24, "I": 60}[name]
    if g.order != expect:
        raise RelationFailure(f"{name} closure has order {g.order}, expected {expect}")
    return g


class Orbit:
    """Orbit of a point with its isotropy order."""

    __slots__ = ("group", "seed", "points", "isotropy_order")

    def __init__(self, group: FinGroup, seed: SpherePoint, points, isotropy_order: int):
        self.group = group
        self.seed = seed
        self.points = tuple(points)
        self.isotropy_order = isotropy_order

    def __len__(self):
        return len(self.points)

    def contains(self, p: SpherePoint) -> bool:
        return any(q == p for q in self.points)

    def finite_points(self):
        return [p for p in self.points if not p.is_infinite()]

    def has_infinity(self) -> bool:
        return any(p.is_infinite() for p in self.points)

    def __repr__(self):
        return f"Orbit(size={len(self.points)}, isotropy={self.isotropy_order})"


def orbit_of(g: FinGroup, p: SpherePoint | int) -> Orbit:
    if not isinstance(p, SpherePoint):
        p = SpherePoint.of(g.ctx, p)
    use_keys = not g.ctx.params
    points = []
    seen = set() if use_keys else None
    for m in g.elements:
        q = m.apply(p)
        if use_keys:
            k = q.key()
            if k in seen:
                continue
            seen.add(k)
            points.append(q)
        else:
            if not any(r == q for r in points):
                points.append(q)
    size = len(points)
    assert g.order % size == 0, "orbit size must divide the group order"
    return Orbit(g, p, points, g.order // size)


def orbit_polynomial(o: Orbit) -> PolyL:
    """Monic polynomial whose roots are exactly the finite orbit points."""
    ctx = o.group.ctx
    lvl, cd = ctx.lvl, ctx.cd
    poly = (K.t_one(lvl, cd),)
    for p in o.points:
        if p.is_infinite():
            continue
        v = K.t_div(p.p, p.q, lvl, cd)
        poly = K.p_mul(poly, (K.t_neg(v, lvl, cd), K.t_one(lvl, cd)), lvl, cd)
    return PolyL._raw(ctx, poly)
