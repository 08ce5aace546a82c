"""Reduction groups: sphere transformations paired with algebra automorphisms.

An element is a pair (sigma, phi) acting on matrix functions by
a(lambda) -> phi(lambda)[a(sigma^{-1}(lambda))].  Composition follows the
semi-direct rule: the matrix of the second automorphism is pulled back by the
first sphere transformation.  Automorphisms are conjugations Q a Q^{-1}
("inner") or transpose maps -H a^tr H^{-1} ("outer"); matrices live over
RatL so constant and lambda-dependent automorphisms share one code path.
Automorphism matrices compare projectively (up to a nonzero rational-function
factor), matching the conjugation action.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ClosureOverflow, DimensionMismatch, RelationFailure
from . import kernel as K
from .moebius import FinGroup, MoebiusT
from .polyrat import RatL
from .scalars import Ctx, Scalar


def _mat_of(ctx: Ctx, rows) -> tuple[tuple[RatL, ...], ...]:
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, RatL):
                if x.ctx is not ctx:
                    raise DimensionMismatch("matrix entry from another context")
                r.append(x)
            else:
                r.append(RatL.from_scalar(ctx.scalar(x)))
        out.append(tuple(r))
    return tuple(out)


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), RatL.zero(a[0][0].ctx)) for j in range(n))
        for i in range(n)
    )


def mat_transpose(a):
    n = len(a)
    return tuple(tuple(a[j][i] for j in range(n)) for i in range(n))


def mat_scale(a, s):
    return tuple(tuple(x * s for x in row) for row in a)


def mat_det(a) -> RatL:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    raise DimensionMismatch("determinant implemented for dimensions <= 3")


def mat_inverse(a):
    n = len(a)
    det = mat_det(a)
    if det.is_zero():
        raise ValueError("singular matrix")
    if n == 1:
        return ((1 / det,),)
    if n == 2:
        return (
            (a[1][1] / det, -a[0][1] / det),
            (-a[1][0] / det, a[0][0] / det),
        )
    cof = [[None] * 3 for _ in range(3)]
    idx = ((1, 2), (0, 2), (0, 1))
    for i in range(3):
        for j in range(3):
            r1, r2 = idx[i]
            c1, c2 = idx[j]
            minor = a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]
            cof[j][i] = minor if (i + j) % 2 == 0 else -minor
    return tuple(tuple(x / det for x in row) for row in cof)


def _mat_pullback(mat, sigma: MoebiusT):
    return tuple(tuple(x.pullback(sigma) for x in row) for row in mat)


# 2x2 transpose-negation equals conjugation by this matrix; used to keep
# every sl(2) automorphism in inner form
def _sl2_outer_to_inner(ctx: Ctx):
    return _mat_of(ctx, ((0, 1), (-1, 0)))


class Automorphism:
    """Inner (Q a Q^{-1}) or outer (-H a^tr H^{-1}) automorphism over RatL."""

    __slots__ = ("ctx", "kind", "mat", "_inv")

    def __init__(self, ctx: Ctx, kind: str, mat_rows, check: bool = True):
        if kind not in ("inner", "outer"):
            raise ValueError("kind must be 'inner' or 'outer'")
        mat = _mat_of(ctx, mat_rows)
        if kind == "outer" and len(mat) == 2:
            kind, mat = "inner", mat_mul(mat, _sl2_outer_to_inner(ctx))
        self.ctx = ctx
        self.kind = kind
        self.mat = mat
        if check and mat_det(mat).is_zero():
            raise ValueError("automorphism matrix is singular")
        self._inv = None

    @staticmethod
    def inner(ctx: Ctx, rows) -> "Automorphism":
        return Automorphism(ctx, "inner", rows)

    @staticmethod
    def outer(ctx: Ctx, rows) -> "Automorphism":
        return Automorphism(ctx, "outer", rows)

    @staticmethod
    def identity(ctx: Ctx, dim: int) -> "Automorphism":
        rows = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        return Automorphism(ctx, "inner", rows, check=False)

    @property
    def dim(self) -> int:
        return len(self.mat)

    def mat_inv(self):
        if self._inv is None:
            self._inv = mat_inverse(self.mat)
        return self._inv

    def is_identity(self) -> bool:
        if self.kind != "inner":
            return False
        n = self.dim
        for i in range(n):
            for j in range(n):
                if i != j and not self.mat[i][j].is_zero():
                    return False
        return all(self.mat[i][i] == self.mat[0][0] for i in range(n))

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        if self.ctx is not other.ctx or self.kind != other.kind or self.dim != other.dim:
            return False
        n = self.dim
        flat_a = [x for row in self.mat for x in row]
        flat_b = [x for row in other.mat for x in row]
        ref = next(i for i, x in enumerate(flat_a) if not x.is_zero())
        if flat_b[ref].is_zero():
            return False
        for i in range(n * n):
            if flat_a[i] * flat_b[ref] != flat_b[i] * flat_a[ref]:
                return False
        return True

    def key(self):
        """Canonical projective key: scale so the first nonzero entry is 1."""
        flat = [x for row in self.mat for x in row]
        ref = next(x for x in flat if not x.is_zero())
        scaled = [(x / ref).pair for x in flat]
        return (self.kind, tuple(scaled))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """Composition as maps: self applied after other (at a fixed lambda)."""
        if self.dim != other.dim:
            raise DimensionMismatch("automorphism dimensions differ")
        ctx = self.ctx
        if self.kind == "inner":
            kind = other.kind
            mat = mat_mul(self.mat, other.mat)
        else:
            # a transpose map flips the kind and transposes-inverts the inner leg
            kind = "inner" if other.kind == "outer" else "outer"
            mat = mat_mul(self.mat, mat_transpose(other.mat_inv()))
        out = Automorphism.__new__(Automorphism)
        out.ctx, out.kind, out.mat, out._inv = ctx, kind, mat, None
        return out

    def pullback(self, sigma: MoebiusT) -> "Automorphism":
        out = Automorphism.__new__(Automorphism)
        out.ctx, out.kind, out._inv = self.ctx, self.kind, None
        out.mat = _mat_pullback(self.mat, sigma)
        return out

    def apply_rows(self, rows):
        """Apply to a matrix of RatL entries (no sphere action)."""
        if self.kind == "inner":
            return mat_mul(mat_mul(self.mat, rows), self.mat_inv())
        neg = tuple(tuple(-x for x in row) for row in mat_transpose(rows))
        return mat_mul(mat_mul(self.mat, neg), self.mat_inv())

    def __repr__(self):
        return f"Automorphism({self.kind}, dim={self.dim})"


class RedElem:
    """Pair of a sphere transformation and an algebra automorphism."""

    __slots__ = ("sigma", "phi")

    def __init__(self, sigma: MoebiusT, phi: Automorphism):
        if sigma.ctx is not phi.ctx:
            raise DimensionMismatch("sphere and algebra parts use different contexts")
        self.sigma = sigma
        self.phi = phi

    @property
    def ctx(self) -> Ctx:
        return self.sigma.ctx

    @property
    def dim(self) -> int:
        return self.phi.dim

    @staticmethod
    def identity(ctx: Ctx, dim: int) -> "RedElem":
        return RedElem(MoebiusT.identity(ctx), Automorphism.identity(ctx, dim))

    def compose(self, other: "RedElem") -> "RedElem":
        """Semi-direct product rule: (s2,p2)*(s1,p1) = (s2 s1, p2 * s2(p1))."""
        if self.dim != other.dim:
            raise DimensionMismatch("element dimensions differ")
        sigma = self.sigma.compose(other.sigma)
        phi = self.phi.compose(other.phi.pullback(self.sigma))
        return RedElem(sigma, phi)

    def __mul__(self, other):
        return self.compose(other)

    def act_rows(self, rows):
        """Action on a matrix of rational functions."""
        pulled = tuple(tuple(x.pullback(self.sigma) for x in row) for row in rows)
        return self.phi.apply_rows(pulled)

    def act(self, a):
        """Action on a MatElem."""
        from .liealg import MatElem

        if a.dim != self.dim:
            raise DimensionMismatch("matrix dimension differs from the group dimension")
        rows = self.act_rows(a.rows)
        return MatElem._raw(a.ctx, rows, poles=None, allow_trace=a.allow_trace)

    def is_identity(self) -> bool:
        return self.sigma == MoebiusT.identity(self.ctx) and self.phi.is_identity()

    def __eq__(self, other):
        if not isinstance(other, RedElem):
            return NotImplemented
        return self.sigma == other.sigma and self.phi == other.phi

    def key(self):
        return (self.sigma.key(), self.phi.key())

    def __repr__(self):
        return f"RedElem(sigma={self.sigma!r}, {self.phi.kind})"


class RedGroup:
    """Finite reduction group with identity first and lazy index tables."""

    def __init__(self, ctx: Ctx, elements, gen_indices, name=""):
        self.ctx = ctx
        self.elements = list(elements)
        self.gen_indices = tuple(gen_indices)
        self.name = name
        self.dim = elements[0].dim
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

    def index_of(self, g: RedElem) -> int:
        if not self.ctx.params:
            if self._index is None:
                self._index = {e.key(): i for i, e in enumerate(self.elements)}
            return self._index[g.key()]
        for i, e in enumerate(self.elements):
            if e == g:
                return i
        raise KeyError("element is not in the group")

    def mult(self, i: int, j: int) -> int:
        got = self._mult.get((i, j))
        if got is None:
            got = self.index_of(self.elements[i].compose(self.elements[j]))
            self._mult[(i, j)] = got
        return got

    def inv(self, i: int) -> int:
        got = self._inv.get(i)
        if got is None:
            for j in range(self.order):
                if self.mult(i, j) == 0:
                    got = j
                    break
            else:
                raise RelationFailure("element has no inverse in the table")
            self._inv[i] = got
        return got

    def word(self, letters: str) -> RedElem:
        names = "stuvw"
        out = RedElem.identity(self.ctx, self.dim)
        for ch in letters:
            out = out.compose(self.elements[self.gen_indices[names.index(ch)]])
        return out

    def check_relations(self, relations: list[str]) -> None:
        ident = RedElem.identity(self.ctx, self.dim)
        for rel in relations:
            if not self.word(rel) == ident:
                raise RelationFailure(f"relation {rel!r} = id fails in {self.name or 'group'}")

    def __repr__(self):
        return f"RedGroup({self.name or '?'}, order={self.order}, dim={self.dim})"


def red_generate(gens, bound: int = 256, relations=None, name: str = "") -> RedGroup:
    """Finite closure of reduction-group generators under the semi-direct rule."""
    if not gens:
        raise ValueError("at least one generator required")
    ctx = gens[0].ctx
    dim = gens[0].dim
    ident = RedElem.identity(ctx, dim)
    elements = [ident]
    use_keys = not ctx.params
    seen = {ident.key()} if use_keys else None

    def find(g):
        if use_keys:
            return g.key() in seen
        return any(e == g for e in elements)

    gen_indices = []
    for g in gens:
        if g.dim != dim:
            raise DimensionMismatch("generators have mixed dimensions")
        if not find(g):
            if use_keys:
                seen.add(g.key())
            elements.append(g)
        gen_indices.append(next(i for i, e in enumerate(elements) if e == g))
    frontier = list(elements)
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                cand = m.compose(g)
                if not find(cand):
                    if len(elements) >= bound:
                        raise ClosureOverflow(f"closure exceeded bound {bound}")
                    if use_keys:
                        seen.add(cand.key())
                    elements.append(cand)
                    new.append(cand)
        frontier = new
    group = RedGroup(ctx, elements, gen_indices, name=name)
    if relations:
        group.check_relations(relations)
    return group


class FactorAnalysis:
    """Normal-subgroup decomposition data of a reduction group."""

    __slots__ = ("group", "u1", "u2", "k", "quotient_order", "diag_witness", "normality")

    def __init__(self, group, u1, u2, k, quotient_order, diag_witness, normality):
        self.group = group
        self.u1 = tuple(u1)
        self.u2 = tuple(u2)
        self.k = tuple(k)
        self.quotient_order = quotient_order
        self.diag_witness = diag_witness
        self.normality = normality

    def __repr__(self):
        return (
            f"FactorAnalysis(|U1|={len(self.u1)}, |U2|={len(self.u2)}, |K|={len(self.k)}, "
            f"quotient={self.quotient_order}, diag={self.diag_witness})"
        )


def _is_normal(g: RedGroup, subset: set[int]) -> bool:
    for n in subset:
        for i in range(g.order):
            if g.mult(g.mult(i, n), g.inv(i)) not in subset:
                return False
    return True


def factor_analysis(g: RedGroup) -> FactorAnalysis:
    """Indices of U1 (sphere-only), U2 (algebra-only), K = U1*U2, and quotient data."""
    ident_sigma = MoebiusT.identity(g.ctx)
    u1 = [i for i, e in enumerate(g.elements) if e.phi.is_identity()]
    u2 = [i for i, e in enumerate(g.elements) if e.sigma == ident_sigma]
    k = sorted({g.mult(i, j) for i in u1 for j in u2})
    normality = {
        "U1": _is_normal(g, set(u1)),
        "U2": _is_normal(g, set(u2)),
        "K": _is_normal(g, set(k)),
    }
    kset = set(k)
    quotient_order = g.order // len(k)
    # coset representatives of K
    reps = []
    covered = set()
    for i in range(g.order):
        if i in covered:
            continue
        reps.append(i)
        covered |= {g.mult(i, j) for j in k}
    # the quotient embeds diagonally iff distinct cosets never share a
    # projection with U1 (resp. U2) absorbing the difference
    diag = True
    pi1_u1 = [g.elements[i].sigma for i in u1]
    pi2_u2 = [g.elements[i].phi for i in u2]
    for a in reps:
        for b in reps:
            if a == b:
                continue
            d = g.mult(g.inv(a), b)
            if d in kset:
                diag = False
                break
            ds = g.elements[d].sigma
            dp = g.elements[d].phi
            if any(ds == s for s in pi1_u1) or any(dp == p for p in pi2_u2):
                diag = False
                break
        if not diag:
            break
    return FactorAnalysis(g, u1, u2, k, quotient_order, diag, normality)


def average_over(g: RedGroup, indices, a):
    """Plain average of a MatElem over a subset of group elements."""
    from .liealg import MatElem

    total = None
    for i in indices:
        term = g.elements[i].act(a)
        total = term if total is None else total + term
    return total * Fraction(1, len(list(indices)))


def coset_representatives(g: RedGroup, subgroup_indices) -> list[int]:
    sub = list(subgroup_indices)
    reps = []
    covered = set()
    for i in range(g.order):
        if i in covered:
            continue
        reps.append(i)
        covered |= {g.mult(i, j) for j in sub}
    return reps
