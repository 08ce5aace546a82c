"""Quasigraded bases, exact decomposition, structure constants and splitting.

A basis spec fixes degree-zero generators and a primitive invariant f; the
degree-n elements are generator * f^n.  Brackets shift degrees only, so the
whole structure-constant table is determined by the degree-zero brackets, and
each of those is found by one exact linear solve that matches local expansion
coefficients at one representative per orbit plus values at regular points.
Every solution is verified by exact reconstruction before it is accepted.
"""

from __future__ import annotations

from fractions import Fraction

from .autfun import AutoFun
from .errors import NotInSpan, NotInvariant, OrbitClash, PoleOutsideGamma, RangeExceeded
from . import kernel as K
from .liealg import MatElem, bracket, is_invariant
from .linsolve import Inconsistent, LinearSystem
from .moebius import SpherePoint
from .polyrat import RatL
from .redgroup import RedGroup
from .scalars import Scalar, _wrap


class BasisSpec:
    """Degree-zero generators plus a primitive function and a degree range."""

    def __init__(self, group: RedGroup, gens: dict[str, MatElem], f: AutoFun,
                 n_range: tuple[int, int] = (-8, 8), check: bool = True):
        self.group = group
        self.names = tuple(gens)
        self.gens = tuple(gens.values())
        self.f = f
        self.n_range = n_range
        self.orbit_plus = f.pole_orbit
        self.orbit_minus = f.zero_orbit
        self.rep_plus = self.orbit_plus.seed
        self.rep_minus = self.orbit_minus.seed
        self.k_plus = self.orbit_plus.isotropy_order
        self.k_minus = self.orbit_minus.isotropy_order
        self._fpow = {0: RatL.one(group.ctx)}
        self._elements = {}
        # pole/zero order data of each generator at the two representatives
        self._v = [g.max_pole_order(self.rep_plus) for g in self.gens]
        self._w = [g.max_pole_order(self.rep_minus) for g in self.gens]
        if check:
            for name, g in zip(self.names, self.gens):
                if not is_invariant(group, g):
                    raise NotInvariant(f"generator {name} is not invariant")

    @property
    def size(self) -> int:
        return len(self.gens)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def fpow(self, n: int) -> RatL:
        got = self._fpow.get(n)
        if got is None:
            got = self.f.fun ** n
            self._fpow[n] = got
        return got

    def element(self, i: int, n: int) -> MatElem:
        got = self._elements.get((i, n))
        if got is None:
            got = self.gens[i] * self.fpow(n)
            self._elements[(i, n)] = got
        return got


def basis_element(b: BasisSpec, i: int, n: int) -> MatElem:
    """Generator i times f^n, with the pole side checked against the orbits."""
    if not (b.n_range[0] <= n <= b.n_range[1]):
        raise RangeExceeded(f"degree {n} outside the declared range {b.n_range}")
    m = b.element(i, n)
    side = b.orbit_plus.points if n >= 0 else b.orbit_minus.points
    m.check_poles(side)
    return m


def _matrix_max_order(a: MatElem, p) -> int:
    """Max pole order over entries at p; large negative only for the zero matrix."""
    if a.is_zero():
        return -(10**9)
    return a.max_pole_order(p)


def _regular_points(b: BasisSpec):
    """Deterministic stream of rational sphere points off both orbits."""
    ctx = b.group.ctx
    for v in (2, 3, 5, 7, 11, 13, Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), 17, 19):
        p = SpherePoint.of(ctx, v)
        if b.orbit_plus.contains(p) or b.orbit_minus.contains(p):
            continue
        yield p


def decompose(a: MatElem, b: BasisSpec, _require_invariant: bool = True) -> dict:
    """Exact coefficients of a in the basis, keyed by (generator index, degree).

    Raises NotInSpan when the linear matching is inconsistent, NotInvariant
    when the input fails the generator invariance test.
    """
    ctx = b.group.ctx
    lvl, cd = ctx.lvl, ctx.cd
    if a.is_zero():
        return {}
    if a.dim != b.group.dim:
        raise NotInSpan("dimension differs from the basis")
    if _require_invariant and not is_invariant(b.group, a):
        raise NotInvariant("element is not invariant under the reduction group")
    both = list(b.orbit_plus.points) + list(b.orbit_minus.points)
    try:
        a.check_poles(both)
    except PoleOutsideGamma as exc:
        raise NotInSpan(f"poles outside the basis orbits: {exc}") from None

    # candidate degrees are bounded by pole orders only; zero orders can
    # cancel between terms, so the bounds clamp at no-pole rather than
    # requiring each candidate to vanish as deeply as the target
    a_plus = max(_matrix_max_order(a, b.rep_plus), 0)
    a_minus = max(_matrix_max_order(a, b.rep_minus), 0)

    d = a.dim
    slack = 0  # extra degrees on both sides; leading parts of distinct
    # generators may cancel at a representative, hiding deeper terms
    while True:
        candidates = []
        for i in range(b.size):
            # exact per-degree orders: v_i + n*k_plus at the pole side,
            # w_i - n*k_minus at the zero side
            n_lo = -((a_minus - b._w[i]) // b.k_minus) - slack
            n_hi = (a_plus - b._v[i]) // b.k_plus + slack
            for n in range(n_lo, n_hi + 1):
                candidates.append((i, n))
        if not candidates:
            raise NotInSpan("no basis elements fit under the pole profile")
        elems = [b.element(i, n) for (i, n) in candidates]
        system = LinearSystem(len(candidates), lvl, cd)

        # equation providers, cheap before expensive: values at regular
        # points first, local expansion windows at the representatives after
        def provider_regular(p):
            def run():
                for r in range(d):
                    for s in range(d):
                        row = {}
                        for bidx, e in enumerate(elems):
                            v = e.rows[r][s].eval_at(p)
                            if not v.is_zero():
                                row[bidx] = v.pay
                        system.add(row, a.rows[r][s].eval_at(p).pay)
            return run

        def provider_window(p, lo, hi):
            def run():
                for r in range(d):
                    for s in range(d):
                        target = a.rows[r][s].laurent_window(p, lo, hi)
                        cols = [e.rows[r][s].laurent_window(p, lo, hi) for e in elems]
                        for pos in range(hi - lo):
                            row = {
                                bidx: col[pos].pay
                                for bidx, col in enumerate(cols)
                                if not col[pos].is_zero()
                            }
                            system.add(row, target[pos].pay)
            return run

        wplus = max(a_plus, max(b._v[i] + n * b.k_plus for (i, n) in candidates))
        wminus = max(a_minus, max(b._w[i] - n * b.k_minus for (i, n) in candidates))
        providers = [provider_regular(p) for p in _regular_points(b)]
        providers.append(provider_window(b.rep_plus, -wplus, 1))
        providers.append(provider_window(b.rep_minus, -wminus, 1))
        providers.append(provider_window(b.rep_plus, -wplus - 2, 3))
        providers.append(provider_window(b.rep_minus, -wminus - 2, 3))

        fed = 0
        while providers and (fed < 2 or system.free_columns()) and not system.inconsistent:
            providers.pop(0)()
            fed += 1
        if system.inconsistent:
            if slack < 3:
                slack += 1
                continue
            raise NotInSpan("local matching is inconsistent; element is outside the span")
        solution = None
        while True:
            if not system.free_columns():
                sol = system.particular_solution()
                out = {}
                recon = MatElem.zero(ctx, d)
                for (key, c) in zip(candidates, sol):
                    if K.t_is_zero(c, lvl):
                        continue
                    sc = _wrap(ctx, c)
                    out[key] = sc
                    recon = recon + b.element(*key) * sc
                if recon == a:
                    solution = out
                    break
            if not providers:
                break
            providers.pop(0)()
            if system.inconsistent:
                break
        if solution is not None:
            return solution
        if system.inconsistent and slack < 3:
            slack += 1
            continue
        if system.inconsistent:
            raise NotInSpan("local matching is inconsistent; element is outside the span")
        raise NotInSpan("matching stays underdetermined; basis may be degenerate")


class TableTerm:
    """One summand c * gen_k f^(n+m+offset) of a bracket expansion."""

    __slots__ = ("k", "offset", "coeff")

    def __init__(self, k: int, offset: int, coeff: Scalar):
        self.k = k
        self.offset = offset
        self.coeff = coeff

    def __repr__(self):
        return f"TableTerm(k={self.k}, offset={self.offset}, coeff={self.coeff!r})"


class StructureTable:
    """Degree-zero bracket expansions; everything else follows by shifts."""

    def __init__(self, basis: BasisSpec, entries: dict):
        self.basis = basis
        self.names = basis.names
        self.entries = entries  # (i, j) -> tuple[TableTerm, ...]

    def terms(self, i: int, j: int) -> tuple[TableTerm, ...]:
        return self.entries.get((i, j), ())

    def offsets(self):
        out = set()
        for terms in self.entries.values():
            for t in terms:
                out.add(t.offset)
        return out

    def bracket_indices(self, i: int, n: int, j: int, m: int) -> dict:
        """Concrete expansion of [gen_i f^n, gen_j f^m] as {(k, degree): coeff}."""
        out = {}
        for t in self.terms(i, j):
            key = (t.k, n + m + t.offset)
            cur = out.get(key)
            out[key] = t.coeff if cur is None else cur + t.coeff
        return {k: v for k, v in out.items() if not v.is_zero()}

    def coeff_bracket(self, A: dict, B: dict) -> dict:
        """Bilinear extension of the table to coefficient maps over (k, degree)."""
        out = {}
        for (i, n), ca in A.items():
            for (j, m), cb in B.items():
                c = ca * cb
                for t in self.terms(i, j):
                    key = (t.k, n + m + t.offset)
                    cur = out.get(key)
                    val = c * t.coeff if cur is None else cur + c * t.coeff
                    out[key] = val
        return {k: v for k, v in out.items() if not v.is_zero()}

    def to_json(self) -> dict:
        entries = []
        for i in range(len(self.names)):
            for j in range(len(self.names)):
                if i >= j:
                    continue
                terms = self.terms(i, j)
                if not terms:
                    continue
                entries.append(
                    {
                        "i": self.names[i],
                        "j": self.names[j],
                        "terms": [
                            {"k": self.names[t.k], "offset": t.offset, "coeff": t.coeff.text()}
                            for t in terms
                        ],
                    }
                )
        w = quasigrade_window(self)
        return {"basis": list(self.names), "entries": entries, "window": {"p": w.p, "q": w.q}}

    def to_latex(self) -> str:
        lines = []
        for i in range(len(self.names)):
            for j in range(i + 1, len(self.names)):
                terms = self.terms(i, j)
                if not terms:
                    continue
                lhs = f"[{_tex_gen(self.names[i])}^n, {_tex_gen(self.names[j])}^m]"
                parts = []
                for t in terms:
                    deg = "n+m" if t.offset == 0 else f"n+m+{t.offset}"
                    base = f"{_tex_gen(self.names[t.k])}^{{{deg}}}"
                    c = t.coeff.text()
                    if c == "1":
                        parts.append("+" + base)
                    elif c == "-1":
                        parts.append("-" + base)
                    else:
                        parts.append(f"+({c}){base}")
                rhs = "".join(parts).lstrip("+")
                lines.append(f"{lhs} = {rhs} \\\\")
        return "\n".join(lines)


def _tex_gen(name: str) -> str:
    if name[-1].isdigit():
        return f"{name[:-1]}_{name[-1]}"
    return name


def structure_table(b: BasisSpec) -> StructureTable:
    """Bracket every generator pair at degree zero and decompose exactly."""
    entries = {}
    for i in range(b.size):
        for j in range(i + 1, b.size):
            br = bracket(b.gens[i], b.gens[j])
            coeffs = decompose(br, b, _require_invariant=False)
            terms = tuple(
                TableTerm(k, n, c) for ((k, n), c) in sorted(coeffs.items(), key=lambda kv: kv[0])
            )
            if terms:
                entries[(i, j)] = terms
                entries[(j, i)] = tuple(TableTerm(t.k, t.offset, -t.coeff) for t in terms)
    return StructureTable(b, entries)


class QuasiWindow:
    __slots__ = ("p", "q")

    def __init__(self, p: int, q: int):
        self.p = p
        self.q = q

    def __eq__(self, other):
        if isinstance(other, tuple):
            return (self.p, self.q) == other
        return isinstance(other, QuasiWindow) and (self.p, self.q) == (other.p, other.q)

    def __repr__(self):
        return f"QuasiWindow(p={self.p}, q={self.q})"


def quasigrade_window(t: StructureTable) -> QuasiWindow:
    """Minimal (p, q) with every bracket landing in degrees n+m-q .. n+m+p."""
    offsets = t.offsets()
    if not offsets:
        return QuasiWindow(0, 0)
    return QuasiWindow(max(max(offsets), 0), max(-min(offsets), 0))


class JacobiReport:
    def __init__(self, checked: int, violations):
        self.checked = checked
        self.violations = list(violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __repr__(self):
        return f"JacobiReport(checked={self.checked}, violations={len(self.violations)})"


def jacobi_check(t: StructureTable, degrees=(0,)) -> JacobiReport:
    """Zero Jacobiator for all basis triples, computed through the table."""
    b = t.basis
    elems = [(i, n) for n in degrees for i in range(b.size)]
    checked = 0
    violations = []
    for ai in range(len(elems)):
        for bi in range(ai, len(elems)):
            for ci in range(bi, len(elems)):
                A = {elems[ai]: b.group.ctx.one()}
                B = {elems[bi]: b.group.ctx.one()}
                C = {elems[ci]: b.group.ctx.one()}
                j1 = t.coeff_bracket(t.coeff_bracket(A, B), C)
                j2 = t.coeff_bracket(t.coeff_bracket(B, C), A)
                j3 = t.coeff_bracket(t.coeff_bracket(C, A), B)
                total = dict(j1)
                for d in (j2, j3):
                    for k, v in d.items():
                        cur = total.get(k)
                        total[k] = v if cur is None else cur + v
                total = {k: v for k, v in total.items() if not v.is_zero()}
                checked += 1
                if total:
                    violations.append((elems[ai], elems[bi], elems[ci], total))
    return JacobiReport(checked, violations)


class ChangeOfBasis:
    """Triangular transform between the bases attached to two zero orbits."""

    def __init__(self, b: BasisSpec, shift: Scalar):
        self.basis = b
        self.shift = shift  # value of f at the new zero seed

    def coefficient(self, n: int, k: int) -> Scalar:
        from math import comb

        if k < 0 or k > n:
            return self.basis.group.ctx.zero()
        c = self.basis.group.ctx.scalar(Fraction((-1) ** k * comb(n, k)))
        return c * self.shift**k

    def matrix_row(self, n: int):
        return [self.coefficient(n, k) for k in range(n + 1)]

    def apply(self, i: int, n: int) -> MatElem:
        """The degree-n element of the shifted basis, written in the old one."""
        out = MatElem.zero(self.basis.group.ctx, self.basis.group.dim)
        for k in range(n + 1):
            c = self.coefficient(n, k)
            if not c.is_zero():
                out = out + self.basis.element(i, n - k) * c
        return out


def change_basis(b: BasisSpec, new_zero: SpherePoint) -> ChangeOfBasis:
    """Transform to the basis whose primitive vanishes on the orbit of new_zero."""
    if b.orbit_plus.contains(new_zero):
        raise OrbitClash("new zero seed lies on the pole orbit")
    return ChangeOfBasis(b, b.f.fun.eval_at(new_zero))


def shifted_spec(b: BasisSpec, new_zero: SpherePoint) -> BasisSpec:
    """The basis spec with the primitive rebased to vanish at the new orbit."""
    from .autfun import rebase

    f2 = rebase(b.f, new_zero)
    return BasisSpec(b.group, dict(zip(b.names, b.gens)), f2, b.n_range, check=False)


class SplitReport:
    __slots__ = ("plus_closed", "minus_closed")

    def __init__(self, plus_closed: bool, minus_closed: bool):
        self.plus_closed = plus_closed
        self.minus_closed = minus_closed

    def __repr__(self):
        return f"SplitReport(plus={self.plus_closed}, minus={self.minus_closed})"


def split_check(t: StructureTable) -> SplitReport:
    """Closure of the nonnegative-degree and negative-degree halves.

    Nonnegative degrees close iff no offset is negative; negative degrees
    close iff every offset k satisfies n+m+k < 0 for all n, m < 0, i.e. k <= 1.
    """
    offsets = t.offsets()
    plus = all(k >= 0 for k in offsets)
    minus = all(k <= 1 for k in offsets)
    return SplitReport(plus, minus)
