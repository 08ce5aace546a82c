"""Exact linear algebra over a tower field, on sparse rows of payloads.

Rows are reduced online against the pivots found so far, so systems whose
rows touch a single unknown (common for monomial symmetry constraints)
collapse cheaply before any dense elimination happens.
"""

from __future__ import annotations

from . import kernel as K


class Inconsistent(Exception):
    pass


class LinearSystem:
    """Accumulates rows of A x = b and keeps them in reduced echelon form."""

    def __init__(self, ncols: int, lvl: int, cd):
        self.ncols = ncols
        self.lvl = lvl
        self.cd = cd
        self.pivots: dict[int, dict[int, object]] = {}  # pivot col -> row dict
        self.rhs: dict[int, object] = {}  # pivot col -> rhs payload
        self.inconsistent = False

    def _reduce(self, row: dict, rhs):
        lvl, cd = self.lvl, self.cd
        row = dict(row)
        while True:
            col = next((j for j in row if j in self.pivots), None)
            if col is None:
                return row, rhs
            c = row.pop(col)  # pivot rows have an implicit 1 in their column
            prow = self.pivots[col]
            for j, v in prow.items():
                cur = row.get(j, K.t_zero(lvl, cd))
                nxt = K.t_sub(cur, K.t_mul(c, v, lvl, cd), lvl, cd)
                if K.t_is_zero(nxt, lvl):
                    row.pop(j, None)
                else:
                    row[j] = nxt
            rhs = K.t_sub(rhs, K.t_mul(c, self.rhs[col], lvl, cd), lvl, cd)

    def add(self, coeffs: dict, rhs=None):
        """Add one equation; coeffs maps column -> payload."""
        lvl, cd = self.lvl, self.cd
        if rhs is None:
            rhs = K.t_zero(lvl, cd)
        row = {j: v for j, v in coeffs.items() if not K.t_is_zero(v, lvl)}
        row, rhs = self._reduce(row, rhs)
        if not row:
            if not K.t_is_zero(rhs, lvl):
                self.inconsistent = True
            return
        col = min(row)
        inv = K.t_inv(row[col], lvl, cd)
        norm = {j: K.t_mul(v, inv, lvl, cd) for j, v in row.items() if j != col}
        nrhs = K.t_mul(rhs, inv, lvl, cd)
        # back-substitute into existing pivot rows that mention this column
        for pcol, prow in self.pivots.items():
            c = prow.get(col)
            if c is None:
                continue
            del prow[col]
            for j, v in norm.items():
                cur = prow.get(j, K.t_zero(lvl, cd))
                nxt = K.t_sub(cur, K.t_mul(c, v, lvl, cd), lvl, cd)
                if K.t_is_zero(nxt, lvl):
                    prow.pop(j, None)
                else:
                    prow[j] = nxt
            self.rhs[pcol] = K.t_sub(self.rhs[pcol], K.t_mul(c, nrhs, lvl, cd), lvl, cd)
        self.pivots[col] = norm
        self.rhs[col] = nrhs

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> list[int]:
        return [j for j in range(self.ncols) if j not in self.pivots]

    def particular_solution(self):
        """Unique solution if the system has full rank; raises otherwise."""
        if self.inconsistent:
            raise Inconsistent("system is inconsistent")
        free = self.free_columns()
        if free:
            raise Inconsistent(f"system is underdetermined in columns {free}")
        lvl, cd = self.lvl, self.cd
        zero = K.t_zero(lvl, cd)
        return [self.rhs.get(j, zero) for j in range(self.ncols)]

    def nullspace_basis(self):
        """Basis of solutions of A x = 0, one vector per free column."""
        lvl, cd = self.lvl, self.cd
        zero, one = K.t_zero(lvl, cd), K.t_one(lvl, cd)
        basis = []
        for f in self.free_columns():
            vec = [zero] * self.ncols
            vec[f] = one
            for pcol, prow in self.pivots.items():
                c = prow.get(f)
                if c is not None:
                    vec[pcol] = K.t_neg(c, lvl, cd)
            basis.append(vec)
        return basis
