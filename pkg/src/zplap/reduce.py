"""Reductions between linear-system classes over Z_p.

Every reduction returns the output system together with a back-map taking
output solutions to input solutions. Back-maps are linear, so the image of a
solution space is computed by mapping a particular solution and a basis.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .field import ExtField, inv_mod, sqrt_ext, check_prime
from .gadget import build_resistance
from .matrix import SpSymMatrix, degrees, require_laplacian
from .schur import _replace_inplace
from .solve import LinSystem


# -- back-maps ----------------------------------------------------------------

class Truncate:
    kind = "projection"

    def __init__(self, n):
        self.n = n

    def __call__(self, y):
        return list(y[: self.n])

    def describe(self):
        return f"y -> y[0:{self.n}]"


class BlockDifference:
    """y -> y[m : m+n] - y[2m+n : 2m+2n] over Z_p."""

    kind = "difference"

    def __init__(self, m, n, p):
        self.m, self.n, self.p = m, n, p

    def __call__(self, y):
        m, n, p = self.m, self.n, self.p
        return [(y[m + k] - y[2 * m + n + k]) % p for k in range(n)]

    def describe(self):
        m, n = self.m, self.n
        return f"y -> y[{m}:{m+n}] - y[{2*m+n}:{2*m+2*n}]"


class ExtExtract:
    """y -> (v + conj(v)) / 2 with v = D^{-1/2} y, then truncation.

    (v + conj(v)) / 2 is exactly the rational part of v.
    """

    kind = "extension"

    def __init__(self, dinv, n):
        self.dinv = dinv
        self.n = n

    def __call__(self, y):
        return [(self.dinv[k] * y[k]).a for k in range(self.n)]

    def describe(self):
        return f"y -> Re(D^-1/2 y)[0:{self.n}]"


class Compose:
    def __init__(self, outer, inner):
        self.outer, self.inner = outer, inner
        self.kind = inner.kind if outer.kind == "projection" else outer.kind

    def __call__(self, y):
        return self.outer(self.inner(y))

    def describe(self):
        return f"{self.inner.describe()} ; {self.outer.describe()}"


@dataclass
class Reduction:
    name: str
    output: LinSystem
    back_map: object
    stats: dict = dc_field(default_factory=dict)

    def certificate(self):
        return {"reduction": self.name, **self.stats, "backmap_kind": self.back_map.kind}


def _system_nnz(A):
    if isinstance(A, SpSymMatrix):
        return A.nnz()
    return sum(1 for r in A for v in r if v)


def _finish(name, out_matrix, c, back_map, p, nnz_in, t0, field=None):
    sys = LinSystem(out_matrix, c, p, field=field)
    if field is None:
        maxdeg = degrees(out_matrix)[0]
    else:
        maxdeg = max((len(r) - (1 if k in r else 0) for k, r in enumerate(sys.rows())), default=0)
    stats = {
        "nnz_in": nnz_in,
        "nnz_out": out_matrix.nnz(),
        "maxdeg_out": maxdeg,
        "micros": int((time.perf_counter() - t0) * 1e6),
    }
    return Reduction(name, sys, back_map, stats)


def _dense(A, p):
    rows = [[int(v) % p for v in r] for r in A]
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and column")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def _rhs(b, n, p):
    b = [int(v) % p for v in b] if b is not None else [0] * n
    if len(b) != n:
        raise ValueError(f"rhs has length {len(b)}, expected {n}")
    return b


# -- general -> Laplacian / walk -------------------------------------------------

def general_to_laplacian(A, b, p) -> Reduction:
    """4-block construction; blocks y1 (m), y2 (n), y3 (m), y4 (n)."""
    t0 = time.perf_counter()
    check_prime(p)
    A = _dense(A, p)
    m, n = len(A), len(A[0])
    b = _rhs(b, m, p)
    o1, o2, o3, o4 = 0, m, m + n, 2 * m + n
    L = SpSymMatrix(2 * (m + n), p)
    for i in range(m):
        for j in range(n):
            a = A[i][j]
            if a:
                L.set(o1 + i, o2 + j, a)
                L.set(o1 + i, o4 + j, -a)
                L.set(o3 + i, o2 + j, -a)
                L.set(o3 + i, o4 + j, a)
    c = b + [0] * n + [-v % p for v in b] + [0] * n
    return _finish("laplacian", L, c, BlockDifference(m, n, p), p, _system_nnz(A), t0)


def general_to_walk(A, b, p) -> Reduction:
    """8-block construction with an all-ones diagonal."""
    t0 = time.perf_counter()
    check_prime(p)
    A = _dense(A, p)
    m, n = len(A), len(A[0])
    b = _rhs(b, m, p)
    sizes = [m, n, m, n, m, n, m, n]
    off = [sum(sizes[:k]) for k in range(8)]
    W = SpSymMatrix(4 * (m + n), p)
    for k in range(8):
        for i in range(sizes[k]):
            W.set(off[k] + i, off[k] + i, 1)
    for k in range(4):
        for i in range(sizes[k]):
            W.set(off[k] + i, off[k + 4] + i, -1)
    # same sign pattern as the Laplacian construction, blocks 1-4
    for i in range(m):
        for j in range(n):
            a = A[i][j]
            if a:
                W.set(off[0] + i, off[1] + j, a)
                W.set(off[0] + i, off[3] + j, -a)
                W.set(off[2] + i, off[1] + j, -a)
                W.set(off[2] + i, off[3] + j, a)
    c = b + [0] * n + [-v % p for v in b] + [0] * n + [0] * (2 * (m + n))
    return _finish("walk", W, c, BlockDifference(m, n, p), p, _system_nnz(A), t0)


# -- Laplacian surgeries ------------------------------------------------------------

def laplacian_to_unitweight(L: SpSymMatrix, b, method="auto") -> Reduction:
    """Replace every non-unit edge by a unit-weight gadget of the same weight."""
    t0 = time.perf_counter()
    p = L.p
    check_prime(p)
    require_laplacian(L)
    b = _rhs(b, L.n, p)
    U = L.copy()
    for (i, j), v in L.off_diagonal():
        if v == p - 1:
            continue
        w = -v % p
        R = build_resistance(inv_mod(w, p), p, method=method)
        _replace_inplace(U, i, j, R.matrix)
    c = b + [0] * (U.n - L.n)
    return _finish("unit", U, c, Truncate(L.n), p, L.nnz(), t0)


def _diag_split_weight(w, dii, djj, p):
    """w1 for splitting an edge of weight w so both endpoints keep nonzero diagonals."""
    cands = []
    for d in (djj - 1, djj + 1, djj + 2):
        if d % p:
            cands.append(inv_mod(d, p))
    cands += range(1, p)
    winv = inv_mod(w, p)
    for w1 in cands:
        w1 %= p
        if w1 == 0 or w1 == w:
            continue
        w2 = inv_mod(winv - inv_mod(w1, p), p)
        if (dii - w + w1) % p and (djj - w + w2) % p:
            return w1, w2
    raise AssertionError("no admissible split weight")  # impossible for p > 3


def ensure_nonzero_diagonal(L: SpSymMatrix, b=None) -> Reduction:
    """Make every diagonal entry nonzero while keeping sc(., [n]) = L.

    A zero diagonal with a nonzero edge (i, j, w) is fixed by splitting that
    edge into (i, k, w1), (k, j, w2) with 1/w1 + 1/w2 = 1/w. An empty row gets a
    pendant vertex through a unit edge, which leaves the Schur complement
    unchanged.
    """
    t0 = time.perf_counter()
    p = L.p
    check_prime(p)
    require_laplacian(L)
    b = _rhs(b, L.n, p)
    M = L.copy()
    for i in range(L.n):
        if M.get(i, i):
            continue
        nbrs = sorted(M.adjacency()[i])
        k = M.grow(1)
        if not nbrs:
            M.add_edge(i, k, 1)
            continue
        j = nbrs[0]
        w = M.edge_weight(i, j)
        w1, w2 = _diag_split_weight(w, M.get(i, i), M.get(j, j), p)
        M.remove_edge(i, j)
        M.add_edge(i, k, w1)
        M.add_edge(k, j, w2)
    c = b + [0] * (M.n - L.n)
    return _finish("nonzero_diagonal", M, c, Truncate(L.n), p, L.nnz(), t0)


def stretch(L: SpSymMatrix, b=None) -> Reduction:
    """Subdivide every edge (x, y, w) into (x, t, 2w), (t, y, 2w)."""
    t0 = time.perf_counter()
    p = L.p
    require_laplacian(L)
    b = _rhs(b, L.n, p)
    M = L.copy()
    for (x, y), v in L.off_diagonal():
        w = -v % p
        t = M.grow(1)
        M.remove_edge(x, y)
        M.add_edge(x, t, 2 * w)
        M.add_edge(t, y, 2 * w)
    c = b + [0] * (M.n - L.n)
    return _finish("stretch", M, c, Truncate(L.n), p, L.nnz(), t0)


def _split_pair(M, x, v1, w1, v2, w2):
    """Replace edges (x, v1, w1), (x, v2, w2) by a new vertex t; returns t."""
    p = M.p
    s = (w1 + w2) % p
    if s:
        a, bb, c = 2 * s, 2 * w1, 2 * w2
        d = -w1 * w2 * inv_mod(s, p)
    else:
        a, bb, c, d = 1, w1, w2, -w1 * w2
    M.remove_edge(x, v1)
    M.remove_edge(x, v2)
    t = M.grow(1)
    M.add_edge(t, x, a)
    M.add_edge(t, v1, bb)
    M.add_edge(t, v2, c)
    M.add_edge(v1, v2, d)
    return t, a % p


def decrease_combinatorial_degree(L: SpSymMatrix, b=None) -> Reduction:
    """Stretch, then split original vertices until every degree is at most 4."""
    t0 = time.perf_counter()
    p = L.p
    check_prime(p)
    st = stretch(L, b)
    M = st.output.A
    adj = M.adjacency()
    for x in range(L.n):
        nbrs = adj[x]
        edges = sorted((u, -v % p) for u, v in nbrs.items())
        while len(edges) > 2:
            nxt = []
            for k in range(0, len(edges) - 1, 2):
                (v1, w1), (v2, w2) = edges[k], edges[k + 1]
                nxt.append(_split_pair(M, x, v1, w1, v2, w2))
            if len(edges) % 2:
                nxt.append(edges[-1])
            edges = sorted(nxt)
    c = st.output.b + [0] * (M.n - len(st.output.b))
    return _finish("lowdeg_combinatorial", M, c, Truncate(L.n), p, L.nnz(), t0)


def laplacian_to_lowdegree(L: SpSymMatrix, b, method="auto") -> Reduction:
    """Degree decrease followed by the unit-weight reduction."""
    t0 = time.perf_counter()
    dd = decrease_combinatorial_degree(L, b)
    uw = laplacian_to_unitweight(dd.output.A, dd.output.b, method=method)
    return _finish("lowdeg", uw.output.A, uw.output.b, Truncate(L.n), L.p, L.nnz(), t0)


def laplacian_to_normalized_walk(L: SpSymMatrix, b) -> Reduction:
    """W = D^{-1/2} L D^{-1/2} over Z_p[sqrt t] and c = D^{-1/2} b.

    With x = D^{-1/2} y, W y = c is equivalent to L x = b; the rational part
    of x is then a Z_p solution.
    """
    t0 = time.perf_counter()
    p = L.p
    check_prime(p)
    nz = ensure_nonzero_diagonal(L, b)
    M, b1 = nz.output.A, nz.output.b
    F = ExtField(p)
    dinv = [sqrt_ext(M.get(i, i), p, F.t).inverse() for i in range(M.n)]
    W = SpSymMatrix(M.n, p, field=F)
    for (i, j), v in M._d.items():
        W.set(i, j, dinv[i] * v * dinv[j])
    c = [dinv[i] * b1[i] for i in range(M.n)]
    return _finish("normwalk", W, c, ExtExtract(dinv, L.n), p, L.nnz(), t0, field=F)


REDUCTIONS = {
    "laplacian": general_to_laplacian,
    "walk": general_to_walk,
    "unit": laplacian_to_unitweight,
    "lowdeg": laplacian_to_lowdegree,
    "normwalk": laplacian_to_normalized_walk,
}
