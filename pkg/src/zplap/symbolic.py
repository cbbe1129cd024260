"""Symbolic matrices with polynomial entries over a prime field.

Used to reduce "is det(A) = 0" for a scalar matrix A to the same question for
a symbolic matrix whose entries are degree-1 monomials and in which each
variable occurs at most three times.
"""
from __future__ import annotations

import random

from .field import inv_mod, is_prime


class ZeroRow(ValueError):
    pass


class TooLarge(ValueError):
    pass


class FieldTooSmall(ValueError):
    pass


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class Poly:
    """Sparse polynomial: {monomial: coeff}, monomial = sorted ((var, exp), ...)."""

    __slots__ = ("terms", "q")

    def __init__(self, terms, q):
        self.q = q
        self.terms = {}
        for m, c in terms.items():
            c %= q
            if c:
                self.terms[m] = c

    @classmethod
    def const(cls, c, q):
        return cls({(): c}, q)

    @classmethod
    def var(cls, i, q, coeff=1):
        return cls({((i, 1),): coeff}, q)

    def is_zero(self):
        return not self.terms

    def __add__(self, o):
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = (t.get(m, 0) + c) % self.q
        return Poly(t, self.q)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.q)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return Poly({m: c * o for m, c in self.terms.items()}, self.q)
        t = {}
        q = self.q
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = (t.get(m, 0) + c1 * c2) % q
        return Poly(t, q)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, Poly) and self.q == o.q and self.terms == o.terms

    def total_degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def multiplicity(self, v):
        return sum(e for m in self.terms for var, e in m if var == v)

    def variables(self):
        return {v for m in self.terms for v, _ in m}

    def evaluate(self, point):
        q = self.q
        s = 0
        for m, c in self.terms.items():
            for v, e in m:
                c = c * pow(point[v], e, q) % q
            s += c
        return s % q

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"x{v}" + (f"^{e}" if e > 1 else "") for v, e in m)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


class SymMatrix:
    """n x n matrix of Poly entries; absent entries are zero."""

    def __init__(self, n, q, entries=None, names=None):
        self.n = n
        self.q = q
        self.entries = {}
        self.names = names or {}
        for (i, j), f in (entries or {}).items():
            self[i, j] = f

    def __getitem__(self, ij):
        return self.entries.get(ij, Poly({}, self.q))

    def __setitem__(self, ij, f):
        if f.is_zero():
            self.entries.pop(ij, None)
        else:
            self.entries[ij] = f

    def variables(self):
        out = set()
        for f in self.entries.values():
            out |= f.variables()
        return out

    def pdeg(self):
        return max((f.total_degree() for f in self.entries.values()), default=0)

    def multiplicity(self, v):
        return sum(f.multiplicity(v) for f in self.entries.values())

    def maxm(self):
        return max((self.multiplicity(v) for v in self.variables()), default=0)

    def nnz(self):
        """Symbolic nnz: total variable multiplicity over all entries."""
        return sum(self.multiplicity(v) for v in self.variables())

    def evaluate(self, point):
        rows = [[0] * self.n for _ in range(self.n)]
        for (i, j), f in self.entries.items():
            rows[i][j] = f.evaluate(point)
        return rows


def edmonds(edges, n, q) -> SymMatrix:
    """Edmonds matrix: edge (i, j) from the left side to the right side gets x_e."""
    M = SymMatrix(n, q)
    for k, (i, j) in enumerate(edges):
        if (i, j) in M.entries:
            raise ValueError(f"repeated edge {(i, j)}")
        M[i, j] = Poly.var(k, q)
        M.names[k] = f"x{k}"
    return M


def tutte(edges, n, q) -> SymMatrix:
    """Tutte matrix: A[i, j] = x_e, A[j, i] = -x_e for i < j."""
    M = SymMatrix(n, q)
    for k, (i, j) in enumerate(edges):
        if i == j:
            raise ValueError("self loop")
        i, j = min(i, j), max(i, j)
        if (i, j) in M.entries:
            raise ValueError(f"repeated edge {(i, j)}")
        M[i, j] = Poly.var(k, q)
        M[j, i] = Poly.var(k, q, -1)
        M.names[k] = f"x{k}"
    return M


def mult3_core(A, q):
    """Scalar matrix A_hat with at most three nonzeros in every row and column
    and det(A_hat) = 0 iff det(A) = 0.

    Row i with nonzeros at p_1..p_k becomes the chain
        a_1 y_p1 + a_2 y_p2 - z_1 = 0,  z_{l-1} + a_{l+1} y_p(l+1) - z_l = 0,  z_{k-1} = 0
    and a row with one nonzero stays the single equation a_1 y_p1 = 0. A column
    used more than three times is split into copies tied by equations y - y' = 0.
    """
    n = len(A)
    A = [[int(v) % q for v in r] for r in A]
    if any(len(r) != n for r in A):
        raise ValueError("matrix must be square")
    for i, r in enumerate(A):
        if not any(r):
            raise ZeroRow(f"row {i} is all zero")
    eqs = []  # each equation: list of (var, coeff)
    nvar = n
    for r in A:
        nz = [(j, v) for j, v in enumerate(r) if v]
        if len(nz) == 1:
            eqs.append([nz[0]])
            continue
        z = nvar
        nvar += 1
        eqs.append([nz[0], nz[1], (z, -1)])
        for j, v in nz[2:]:
            eqs.append([(z, 1), (j, v), (z + 1, -1)])
            z += 1
            nvar += 1
        eqs.append([(z, 1)])
    # split over-used original columns
    uses = {}
    for e, eq in enumerate(eqs):
        for k, (var, _) in enumerate(eq):
            if var < n:
                uses.setdefault(var, []).append((e, k))
    for var in range(n):
        occ = uses.get(var, [])
        if len(occ) <= 3:
            continue
        # var keeps two uses, each middle copy one, the last copy two
        rest = occ[2:]
        cur = var
        while rest:
            new = nvar
            nvar += 1
            eqs.append([(cur, 1), (new, -1)])
            take = rest[:2] if len(rest) <= 2 else rest[:1]
            rest = rest[len(take):]
            for e, k in take:
                eqs[e][k] = (new, eqs[e][k][1])
            cur = new
    size = len(eqs)
    assert size == nvar
    rows = [[0] * size for _ in range(size)]
    for e, eq in enumerate(eqs):
        for var, c in eq:
            rows[e][var] = (rows[e][var] + c) % q
    return rows


def reduce_to_mult3(A, q) -> SymMatrix:
    """B = A_hat * diag(b_1..b_N) with fresh variables b_j."""
    core = mult3_core(A, q)
    N = len(core)
    B = SymMatrix(N, q, names={j: f"b{j}" for j in range(N)})
    for i in range(N):
        for j in range(N):
            if core[i][j]:
                B[i, j] = Poly.var(j, q, core[i][j])
    B.core = core
    return B


def det_poly(M: SymMatrix, limit=12) -> Poly:
    """Exact determinant by dynamic programming over used-column subsets."""
    n, q = M.n, M.q
    if n > limit:
        raise TooLarge(f"exact symbolic determinant limited to n <= {limit}")
    if n == 0:
        return Poly.const(1, q)
    rows = [[(j, M.entries[(i, j)]) for j in range(n) if (i, j) in M.entries] for i in range(n)]
    dp = {0: Poly.const(1, q)}
    for i in range(n):
        nxt = {}
        for mask, f in dp.items():
            for j, a in rows[i]:
                bit = 1 << j
                if mask & bit:
                    continue
                above = bin(mask >> (j + 1)).count("1")
                term = f * a
                if above % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        dp = {k: v for k, v in nxt.items() if not v.is_zero()}
        if not dp:
            return Poly({}, q)
    return dp.get((1 << n) - 1, Poly({}, q))


def det_zero_exact(M: SymMatrix, limit=12) -> bool:
    return det_poly(M, limit).is_zero()


def scalar_det(rows, q):
    rows = [list(r) for r in rows]
    n = len(rows)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] % q), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c] % q
        inv = inv_mod(rows[c][c], q)
        for r in range(c + 1, n):
            f = rows[r][c] * inv % q
            if f:
                rows[r] = [(a - f * b) % q for a, b in zip(rows[r], rows[c])]
    return det % q


def det_zero_randomized(M: SymMatrix, trials=20, rng=None) -> bool:
    """One-sided Schwartz-Zippel test; False means det is certainly nonzero."""
    q = M.q
    if not is_prime(q):
        raise ValueError("coefficient modulus must be prime")
    d = M.n * max(M.pdeg(), 1)
    if q < 2 * d:
        raise FieldTooSmall(f"field of size {q} is below 2 * deg = {2 * d}")
    rng = rng or random.Random()
    vars_ = sorted(M.variables())
    for _ in range(trials):
        point = {v: rng.randrange(q) for v in vars_}
        if scalar_det(M.evaluate(point), q):
            return False
    return True
