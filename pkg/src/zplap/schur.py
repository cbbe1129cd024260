"""Schur complements and the rewriting tools built on them."""
from __future__ import annotations

import heapq

from .matrix import SpSymMatrix, require_laplacian


class SingularBlock(ValueError):
    pass


class WeightMismatch(ValueError):
    pass


class SingularCenter(ValueError):
    pass


def _adjacency_with_diag(M):
    adj = [dict() for _ in range(M.n)]
    for (i, j), v in M._d.items():
        adj[i][j] = v
        adj[j][i] = v
    return adj


def _eliminate(adj, s, F):
    """Gaussian-eliminate vertex s in place (its diagonal must be nonzero)."""
    row = adj[s]
    d = F.inv(row[s])
    nbrs = [(u, v) for u, v in row.items() if u != s]
    for u, _ in nbrs:
        del adj[u][s]
    for a in range(len(nbrs)):
        u, vu = nbrs[a]
        f = F.mul(vu, d)
        au = adj[u]
        for b in range(a, len(nbrs)):
            w, vw = nbrs[b]
            nv = F.sub(au.get(w, F.zero), F.mul(f, vw))
            if F.is_zero(nv):
                au.pop(w, None)
                if w != u:
                    adj[w].pop(u, None)
            else:
                au[w] = nv
                if w != u:
                    adj[w][u] = nv
    adj[s] = {}
    return [u for u, _ in nbrs]


def _dense_schur(adj, S, T, F):
    """A_TT - A_TS A_SS^{-1} A_ST with row pivoting; adj is symmetric."""
    S, T = list(S), list(T)
    k = len(S)
    # augmented rows [A_SS | A_ST]
    rows = [[adj[s].get(c, F.zero) for c in S] + [adj[s].get(t, F.zero) for t in T] for s in S]
    for col in range(k):
        piv = next((r for r in range(col, k) if not F.is_zero(rows[r][col])), None)
        if piv is None:
            raise SingularBlock("eliminated block is singular mod p")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = F.inv(rows[col][col])
        prow = [F.mul(inv, a) for a in rows[col]]
        rows[col] = prow
        for r in range(k):
            if r != col and not F.is_zero(rows[r][col]):
                f = rows[r][col]
                rows[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[r], prow)]
    # rows[:, k:] now holds X = A_SS^{-1} A_ST
    out = {}
    for a, ta in enumerate(T):
        for b in range(a, len(T)):
            tb = T[b]
            v = adj[ta].get(tb, F.zero)
            for r, s in enumerate(S):
                ats = adj[ta].get(s)
                if ats is not None:
                    v = F.sub(v, F.mul(ats, rows[r][k + b]))
            out[(a, b)] = v
    return out


def schur(M: SpSymMatrix, T) -> SpSymMatrix:
    """Schur complement onto the index set T (returned in sorted order of T).

    Vertices outside T are eliminated one at a time, smallest degree first,
    skipping zero pivots; if only zero pivots remain the rest of the block is
    handled by dense elimination with pivoting. The result is independent of
    the order whenever A_SS is invertible.
    """
    T = sorted(set(T))
    if not T:
        raise ValueError("terminal set must be nonempty")
    if T[0] < 0 or T[-1] >= M.n:
        raise IndexError("terminal index out of range")
    F = M.field
    Tset = set(T)
    adj = _adjacency_with_diag(M)
    remaining = set(range(M.n)) - Tset
    heap = [(len(adj[s]), s) for s in remaining]
    heapq.heapify(heap)
    while heap:
        deg, s = heapq.heappop(heap)
        if s not in remaining or deg != len(adj[s]):
            continue
        if F.is_zero(adj[s].get(s, F.zero)):
            continue  # re-queued if a later elimination touches s
        remaining.discard(s)
        for u in _eliminate(adj, s, F):
            if u in remaining:
                heapq.heappush(heap, (len(adj[u]), u))
    pos = {t: k for k, t in enumerate(T)}
    out = SpSymMatrix(len(T), M.p, field=F)
    if remaining:
        for (a, b), v in _dense_schur(adj, sorted(remaining), T, F).items():
            out.set(a, b, v)
        return out
    for t in T:
        for u, v in adj[t].items():
            if u >= t and u in Tset:
                out.set(pos[t], pos[u], v)
    return out


def solve_block(M: SpSymMatrix, S, rhs_cols):
    """Solve A_SS X = R for a dense list of right-hand-side columns."""
    F = M.field
    S = list(S)
    k = len(S)
    rows = [[M.get(s, c) for c in S] + [col[r] for col in rhs_cols] for r, s in enumerate(S)]
    for col in range(k):
        piv = next((r for r in range(col, k) if not F.is_zero(rows[r][col])), None)
        if piv is None:
            raise SingularBlock("eliminated block is singular mod p")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = F.inv(rows[col][col])
        rows[col] = [F.mul(inv, a) for a in rows[col]]
        for r in range(k):
            if r != col and not F.is_zero(rows[r][col]):
                f = rows[r][col]
                rows[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[r], rows[col])]
    return [[rows[r][k + c] for r in range(k)] for c in range(len(rhs_cols))]


def extend_solution(M: SpSymMatrix, T, x_T):
    """Lift x_T to a full vector with x_S = -A_SS^{-1} A_ST x_T."""
    F = M.field
    T = sorted(T)
    S = [i for i in range(M.n) if i not in set(T)]
    rhs = []
    for s in S:
        v = F.zero
        for t, xt in zip(T, x_T):
            v = F.sub(v, F.mul(M.get(s, t), xt))
        rhs.append(v)
    xs = solve_block(M, S, [rhs])[0] if S else []
    x = [F.zero] * M.n
    for t, v in zip(T, x_T):
        x[t] = v
    for s, v in zip(S, xs):
        x[s] = v
    return x


def circuit_weight(M: SpSymMatrix):
    """w with sc(M, {0, 1}) = w * chi chi^T; raises if M is not a circuit."""
    sc = schur(M, [0, 1])
    F = M.field
    w = sc.get(0, 0)
    if sc.get(1, 1) != w or sc.get(0, 1) != F.neg(w):
        raise ValueError("terminal Schur complement is not of the form w chi chi^T")
    return w


def replace_edge(L: SpSymMatrix, i0, j0, R):
    """Replace edge (i0, j0) of L by the circuit R.

    R's terminal 0 lands on i0, terminal 1 on j0 and its internal vertices are
    appended at L.n, L.n+1, ... Returns (U, projection) with sc(U, projection) = L.
    """
    require_laplacian(L)
    if i0 == j0 or L.get(i0, j0) == L.field.zero:
        raise ValueError("(i0, j0) must be a nonzero off-diagonal entry")
    F = L.field
    if F.coerce(R.weight) != L.edge_weight(i0, j0):
        raise WeightMismatch(f"circuit weight {R.weight} != edge weight {L.edge_weight(i0, j0)}")
    U = L.copy()
    _replace_inplace(U, i0, j0, R.matrix)
    return U, list(range(L.n))


def _replace_inplace(U, i0, j0, Rm):
    U.remove_edge(i0, j0)
    first = U.grow(Rm.n - 2)
    emb = [i0, j0] + list(range(first, first + Rm.n - 2))
    for (a, b), v in Rm._d.items():
        U.add(emb[a], emb[b], v)


def star_mesh(L: SpSymMatrix, center):
    """Eliminate `center` by the star-mesh rule; vertices above center shift down."""
    require_laplacian(L)
    F = L.field
    adj = L.adjacency()
    leaves = sorted(adj[center].items())
    total = F.zero
    for _, v in leaves:
        total = F.sub(total, v)
    if F.is_zero(total):
        raise SingularCenter("sum of star weights is 0 mod p")
    tinv = F.inv(total)
    keep = [i for i in range(L.n) if i != center]
    out = L.principal(keep)
    pos = {v: k for k, v in enumerate(keep)}
    for u, _ in leaves:
        # star edges disappear with the center: restore leaf diagonals
        out.add(pos[u], pos[u], F.neg(L.edge_weight(center, u)))
    for a in range(len(leaves)):
        u, vu = leaves[a]
        for b in range(a + 1, len(leaves)):
            w, vw = leaves[b]
            out.add_edge(pos[u], pos[w], F.mul(F.mul(F.neg(vu), F.neg(vw)), tinv))
    return out


def check_commutativity(L: SpSymMatrix, T1, T2) -> bool:
    """sc(L, T1) == sc(sc(L, T2), T1) for T1 a subset of T2."""
    T1, T2 = sorted(set(T1)), sorted(set(T2))
    if not set(T1) <= set(T2):
        raise ValueError("T1 must be a subset of T2")
    inner = schur(L, T2)
    pos = {t: k for k, t in enumerate(T2)}
    return schur(L, T1) == schur(inner, [pos[t] for t in T1])
