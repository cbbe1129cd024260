"""Exact solution sets of linear systems over Z_p or Z_p[sqrt(t)].

solve_all uses sparse elimination (smallest row first, then the least used
column in it) and canonicalizes the result, so the representation of a
solution set does not depend on the pivot order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .field import PrimeField
from .matrix import SpSymMatrix


class TooLarge(ValueError):
    pass


class LinSystem:
    """A x = b. A is an SpSymMatrix or a dense sequence of rows."""

    def __init__(self, A, b, p, field=None):
        self.A = A
        self.p = p
        if field is None:
            field = A.field if isinstance(A, SpSymMatrix) else PrimeField(p)
        self.field = field
        if isinstance(A, SpSymMatrix):
            self.n_rows = self.n_cols = A.n
        else:
            self.n_rows = len(A)
            self.n_cols = len(A[0]) if self.n_rows else 0
            if any(len(r) != self.n_cols for r in A):
                raise ValueError("ragged matrix")
        self.b = [field.coerce(v) for v in b]
        if len(self.b) != self.n_rows:
            raise ValueError(f"rhs has length {len(self.b)}, expected {self.n_rows}")

    def rows(self):
        """List of {col: value} dicts, zeros omitted."""
        F = self.field
        if isinstance(self.A, SpSymMatrix):
            rows = [dict() for _ in range(self.n_rows)]
            for (i, j), v in self.A._d.items():
                rows[i][j] = v
                rows[j][i] = v
            return rows
        out = []
        for r in self.A:
            d = {}
            for j, v in enumerate(r):
                v = F.coerce(v)
                if not F.is_zero(v):
                    d[j] = v
            out.append(d)
        return out

    def residual_zero(self, x):
        F = self.field
        for row, bi in zip(self.rows(), self.b):
            s = F.zero
            for j, v in row.items():
                s = F.add(s, F.mul(v, x[j]))
            if s != bi:
                return False
        return True

    def nnz(self):
        return sum(len(r) for r in self.rows())


@dataclass(frozen=True)
class AffineSpace:
    status: str  # "empty" or "nonempty"
    n: int
    field: object
    particular: tuple = ()
    null_basis: tuple = ()

    @property
    def empty(self):
        return self.status == "empty"

    @property
    def dim(self):
        return -1 if self.empty else len(self.null_basis)

    def contains(self, x):
        if self.empty or len(x) != self.n:
            return False
        F = self.field
        r = [F.sub(F.coerce(a), b) for a, b in zip(x, self.particular)]
        return all(F.is_zero(v) for v in _reduce_against(r, self.null_basis, F))

    def members(self):
        """Iterate all points (Z_p only; use on tiny spaces)."""
        if self.empty:
            return
        p = self.field.p
        for coeffs in itertools.product(range(p), repeat=len(self.null_basis)):
            x = list(self.particular)
            for c, v in zip(coeffs, self.null_basis):
                if c:
                    x = [(a + c * b) % p for a, b in zip(x, v)]
            yield tuple(x)


EMPTY = "empty"
NONEMPTY = "nonempty"


def _pivot_col(v, F):
    for k, a in enumerate(v):
        if not F.is_zero(a):
            return k
    return None


def _rref(vectors, F):
    """Reduced row echelon form of a list of equal-length vectors."""
    rows = [list(v) for v in vectors]
    out = []
    n = len(rows[0]) if rows else 0
    col = 0
    while rows and col < n:
        piv = next((r for r in rows if not F.is_zero(r[col])), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        s = F.inv(piv[col])
        piv = [F.mul(s, a) for a in piv]
        for group in (rows, out):
            for k, r in enumerate(group):
                f = r[col]
                if not F.is_zero(f):
                    group[k] = [F.sub(a, F.mul(f, b)) for a, b in zip(r, piv)]
        out.append(piv)
        col += 1
    return out


def _reduce_against(x, basis, F):
    x = list(x)
    for v in basis:
        c = _pivot_col(v, F)
        f = x[c]
        if not F.is_zero(f):
            x = [F.sub(a, F.mul(f, b)) for a, b in zip(x, v)]
    return x


def canonical_space(particular, vectors, F, n=None):
    """Canonical AffineSpace for particular + span(vectors)."""
    if particular is None:
        return AffineSpace(EMPTY, n if n is not None else 0, F)
    n = len(particular)
    basis = _rref([v for v in vectors if any(not F.is_zero(a) for a in v)], F)
    x0 = _reduce_against([F.coerce(a) for a in particular], basis, F)
    return AffineSpace(NONEMPTY, n, F, tuple(x0), tuple(tuple(v) for v in basis))


def solve_all(sys: LinSystem) -> AffineSpace:
    F = sys.field
    n = sys.n_cols
    rows = sys.rows()
    rhs = list(sys.b)
    col_rows = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    active = set(range(len(rows)))
    pivots = []  # (col, row dict, rhs) in elimination order
    while active:
        r = min(active, key=lambda k: (len(rows[k]), k))
        row = rows[r]
        active.discard(r)
        if not row:
            if not F.is_zero(rhs[r]):
                return AffineSpace(EMPTY, n, F)
            continue
        c = min(row, key=lambda k: (len(col_rows[k]), k))
        for k in row:
            col_rows[k].discard(r)
        pv = row[c]
        pinv = F.inv(pv)
        for o in list(col_rows.get(c, ())):
            orow = rows[o]
            f = F.mul(orow[c], pinv)
            for k, v in row.items():
                nv = F.sub(orow.get(k, F.zero), F.mul(f, v))
                if F.is_zero(nv):
                    if k in orow:
                        del orow[k]
                        col_rows[k].discard(o)
                else:
                    if k not in orow:
                        col_rows.setdefault(k, set()).add(o)
                    orow[k] = nv
            rhs[o] = F.sub(rhs[o], F.mul(f, rhs[r]))
        pivots.append((c, row, rhs[r]))
    pivot_cols = {c for c, _, _ in pivots}
    free = [k for k in range(n) if k not in pivot_cols]

    def back_substitute(x, use_rhs):
        for c, row, bv in reversed(pivots):
            s = bv if use_rhs else F.zero
            for k, v in row.items():
                if k != c:
                    s = F.sub(s, F.mul(v, x[k]))
            x[c] = F.mul(s, F.inv(row[c]))
        return x

    x0 = back_substitute([F.zero] * n, True)
    basis = []
    for f in free:
        x = [F.zero] * n
        x[f] = F.one
        basis.append(back_substitute(x, False))
    return canonical_space(x0, basis, F)


def enumerate_solutions(sys: LinSystem, limit=10**6):
    """All solutions by brute force over Z_p^n (p^n <= limit)."""
    if not isinstance(sys.field, PrimeField):
        raise TypeError("enumeration is only implemented over Z_p")
    p, n = sys.p, sys.n_cols
    if p ** n > limit:
        raise TooLarge(f"{p}^{n} exceeds {limit}")
    dense = np.zeros((sys.n_rows, n), dtype=np.int64)
    for i, row in enumerate(sys.rows()):
        for j, v in row.items():
            dense[i, j] = v
    b = np.array(sys.b, dtype=np.int64)
    if n == 0:
        return {()} if not b.any() else set()
    grids = np.indices((p,) * n, dtype=np.int64).reshape(n, -1).T
    ok = np.ones(len(grids), dtype=bool)
    for i in range(sys.n_rows):
        ok &= (grids @ dense[i]) % p == b[i]
    return {tuple(int(a) for a in x) for x in grids[ok]}


def map_space(S: AffineSpace, back_map, dst_field):
    """Image of an affine space under a linear map, canonicalized.

    back_map must be linear over Z_p. For spaces over the extension the
    Z_p-span of each basis vector v is {v, sqrt(t) v}, so both are mapped.
    """
    if S.empty:
        return AffineSpace(EMPTY, 0, dst_field)
    F = S.field
    x0 = back_map(list(S.particular))
    vecs = []
    for v in S.null_basis:
        for s in F.basis_scalars():
            vecs.append(back_map([F.mul(s, a) for a in v]))
    return canonical_space(x0, vecs, dst_field)


def spaces_equal_under_map(S1: AffineSpace, S2: AffineSpace, back_map=None) -> bool:
    """True iff back_map(S2) == S1 as sets. back_map=None means identity."""
    if S1.empty or S2.empty:
        return S1.empty and S2.empty
    if back_map is None:
        back_map = list
    img = map_space(S2, back_map, S1.field)
    return img == S1


def space_from_points(points, n, field):
    """Canonical space spanned affinely by a finite set of points (Z_p)."""
    pts = [list(x) for x in points]
    if not pts:
        return AffineSpace(EMPTY, n, field)
    x0 = pts[0]
    return canonical_space(x0, [[field.sub(a, b) for a, b in zip(x, x0)] for x in pts[1:]], field)
