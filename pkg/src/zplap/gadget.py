"""Unit-weight circuits with a prescribed effective resistance mod p.

A circuit is a Laplacian with terminals at indices 0 and 1 whose Schur
complement onto the terminals is weight * chi chi^T; resistance = 1/weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .field import inv_mod, is_prime
from .matrix import SpSymMatrix, degrees
from .schur import circuit_weight


class ZeroWeight(ValueError):
    pass


class Circuit:
    def __init__(self, matrix: SpSymMatrix, resistance):
        self.matrix = matrix
        self.p = matrix.p
        self.resistance = resistance % self.p
        if self.resistance == 0:
            raise ZeroWeight("a circuit needs a nonzero resistance")
        self.weight = inv_mod(self.resistance, self.p)

    @property
    def n(self):
        return self.matrix.n

    def nnz(self):
        return self.matrix.nnz()

    def degrees(self):
        return degrees(self.matrix)

    def has_direct_edge(self):
        return self.matrix.get(0, 1) != 0

    def verify(self):
        """Check the stated weight against an independent Schur complement."""
        return circuit_weight(self.matrix) == self.weight

    def __repr__(self):
        return f"Circuit(n={self.n}, p={self.p}, resistance={self.resistance}, nnz={self.nnz()})"


def unit(p) -> Circuit:
    return Circuit(SpSymMatrix.from_edges(2, p, [(0, 1, 1)]), 1)


def rhombus(p, w=1) -> Circuit:
    """4-cycle 0-2-1-3-0; with edge weights w its weight is w."""
    m = SpSymMatrix.from_edges(4, p, [(0, 2, w), (2, 1, w), (0, 3, w), (3, 1, w)])
    return Circuit(m, inv_mod(w, p))


def seri(C1: Circuit, C2: Circuit) -> Circuit:
    """Series: C1's terminal 1 is glued to C2's terminal 1.

    Layout: 0 = C1[0], 1 = C2[0], 2 = junction, then C1 internals, C2 internals.
    """
    if C1.p != C2.p:
        raise ValueError("circuits over different primes")
    p = C1.p
    r = (C1.resistance + C2.resistance) % p
    if r == 0:
        raise ZeroWeight("series resistance is 0 mod p")
    n1, n2 = C1.n, C2.n
    emb1 = [0, 2] + list(range(3, n1 + 1))
    emb2 = [1, 2] + list(range(n1 + 1, n1 + n2 - 1))
    m = SpSymMatrix(n1 + n2 - 1, p)
    for emb, C in ((emb1, C1), (emb2, C2)):
        for (i, j), v in C.matrix._d.items():
            m.add(emb[i], emb[j], v)
    return Circuit(m, r)


def para(C1: Circuit, C2: Circuit) -> Circuit:
    """Parallel: both terminals shared, internals appended (C1 then C2).

    If both carry a direct terminal edge, C2's is first swapped for a rhombus of
    the same weight so no parallel edge forms.
    """
    if C1.p != C2.p:
        raise ValueError("circuits over different primes")
    p = C1.p
    w = (C1.weight + C2.weight) % p
    if w == 0:
        raise ZeroWeight("parallel weight is 0 mod p")
    m2 = C2.matrix
    if C1.has_direct_edge() and C2.has_direct_edge():
        m2 = m2.copy()
        ew = m2.remove_edge(0, 1)
        rh = rhombus(p, ew).matrix
        first = m2.grow(2)
        emb = [0, 1, first, first + 1]
        for (i, j), v in rh._d.items():
            m2.add(emb[i], emb[j], v)
    n1, n2 = C1.n, m2.n
    emb2 = [0, 1] + list(range(n1, n1 + n2 - 2))
    m = C1.matrix.copy()
    m.grow(n2 - 2)
    for (i, j), v in m2._d.items():
        m.add(emb2[i], emb2[j], v)
    return Circuit(m, inv_mod(w, p))


# ---------------------------------------------------------------------------
# Fast builder: unit-weight edge lists with moving terminals s, t.
# ---------------------------------------------------------------------------

class _Builder:
    __slots__ = ("n", "edges", "s", "t", "direct")

    def __init__(self):
        self.n = 2
        self.edges = [(0, 1)]
        self.s, self.t = 0, 1
        self.direct = True  # is there an s-t edge

    @classmethod
    def point(cls):
        b = cls()
        b.n, b.edges, b.s, b.t, b.direct = 1, [], 0, 0, False
        return b

    def series_unit(self):
        v = self.n
        self.n += 1
        self.edges.append((self.t, v))
        self.t = v
        self.direct = False

    def parallel_unit(self):
        s, t = self.s, self.t
        if self.direct:
            u, v = self.n, self.n + 1
            self.n += 2
            self.edges += [(s, u), (u, t), (s, v), (v, t)]
        else:
            self.edges.append((s, t))
        self.direct = True

    def series(self, other):
        """Append another builder in series (other.s glued to self.t)."""
        off = self.n
        relabel = {}
        nxt = off
        for v in range(other.n):
            if v == other.s:
                relabel[v] = self.t
            else:
                relabel[v] = nxt
                nxt += 1
        self.n = nxt
        self.edges += [(relabel[a], relabel[b]) for a, b in other.edges]
        self.t = relabel[other.t]
        self.direct = False

    def path(self, y):
        for _ in range(y):
            self.series_unit()

    def to_circuit(self, p, resistance):
        order = [self.s, self.t] + [v for v in range(self.n) if v != self.s and v != self.t]
        pos = [0] * self.n
        for k, v in enumerate(order):
            pos[v] = k
        deg = [0] * self.n
        d = {}
        neg1 = p - 1
        for a, b in self.edges:
            a, b = pos[a], pos[b]
            deg[a] += 1
            deg[b] += 1
            d[(a, b) if a < b else (b, a)] = neg1
        for v in range(self.n):
            if deg[v]:
                d[(v, v)] = deg[v] % p
        m = SpSymMatrix(self.n, p)
        m._d = {k: v for k, v in d.items() if v}
        return Circuit(m, resistance)


def _ratio_builder(a, b):
    ops = []
    while a != b:
        if a > b:
            ops.append("S")
            a -= b
        else:
            ops.append("P")
            b -= a
    bld = _Builder()
    for op in reversed(ops):
        if op == "S":
            bld.series_unit()
        else:
            bld.parallel_unit()
    return bld


def build_ratio(a, b, p, M=None) -> Circuit:
    """Unit-weight circuit of resistance a/b mod p by Euclid-style recursion."""
    if M is None:
        M = max(a, b)
    if not (1 <= a <= M and 1 <= b <= M):
        raise ValueError("need 1 <= a, b <= M")
    if a % p == 0 or b % p == 0:
        raise ZeroWeight("a and b must be nonzero mod p")
    return _ratio_builder(a, b).to_circuit(p, a * inv_mod(b, p))


def _near_fraction(i, j, p):
    """Builder and integer resistance representative for a fraction i/j."""
    w = -((-p * i) // j)  # ceil(p i / j)
    num = w * j - p * i
    if num == 0:
        # p i / j is a multiple of p, so the unit circuit has resistance w + 1
        return _Builder(), w + 1
    return _ratio_builder(num, j), w


def build_near_fraction(i, j, p, k=None):
    """Circuit with resistance w mod p, w an integer in [pi/j, pi/j + 1].

    Returns (circuit, w) where w is the exact integer representative of the
    circuit's resistance (ceil(pi/j), or that plus one when pi/j is integral).
    """
    if k is None:
        k = j
    if not (1 <= j <= k <= p - 1 and -j <= i <= j):
        raise ValueError("need 1 <= j <= k <= p-1 and -j <= i <= j")
    bld, w = _near_fraction(i, j, p)
    return bld.to_circuit(p, w), w


@dataclass(frozen=True)
class CrtPlan:
    primes: tuple
    coeffs: tuple
    i: int
    j: int

    def exact(self):
        return sum((Fraction(a, q) for a, q in zip(self.coeffs, self.primes)), Fraction(0)) == Fraction(self.i, self.j)


def rev_crt(i, primes) -> CrtPlan:
    """Write i/j as sum a_s/j_s with a_s in [-j_s, j_s] (j = product of primes)."""
    primes = tuple(primes)
    if len(set(primes)) != len(primes) or not primes:
        raise ValueError("primes must be distinct and nonempty")
    j = 1
    for q in primes:
        j *= q
    if not -j <= i <= j:
        raise ValueError("need -j <= i <= j")
    coeffs = []
    cur, J = i, j
    for q in reversed(primes[1:]):
        m = J // q
        a = cur * inv_mod(m % q, q) % q
        rest = (cur - a * m) // q
        if rest < -m:
            a -= q
            rest += m
        coeffs.append(a)
        cur, J = rest, m
    coeffs.append(cur)
    plan = CrtPlan(primes, tuple(reversed(coeffs)), i, j)
    if not plan.exact() or any(abs(a) > q for a, q in zip(plan.coeffs, primes)):
        raise AssertionError("reverse CRT produced an invalid plan")
    return plan


@lru_cache(maxsize=None)
def crt_primes(p):
    """Smallest prefix of the primes whose product is at least p."""
    out, prod, q = [], 1, 2
    while prod < p:
        if is_prime(q):
            out.append(q)
            prod *= q
        q += 1
    return tuple(out), prod


def _anchor(i, primes, p):
    plan = rev_crt(i, primes)
    parts = [_near_fraction(a, q, p) for a, q in zip(plan.coeffs, plan.primes)]
    return sum(w for _, w in parts), parts


def build_resistance(r, p, method="auto") -> Circuit:
    """Unit-weight circuit of resistance r mod p with polylog size.

    method: "crt" (the prime-fraction construction), "naive" (a path of length
    r) or "auto" (crt, except for p <= 13 where the smaller of the two wins).
    """
    if not 1 <= r <= p - 1:
        raise ValueError("need 1 <= r <= p-1")
    if method == "naive":
        return build_resistance_naive(r, p)
    if r == 1:
        return unit(p)
    C = _build_crt(r, p)
    if method == "auto" and p <= 13 and r + 1 < C.n:
        return build_resistance_naive(r, p)
    return C


def _build_crt(r, p):
    primes, J = crt_primes(p)

    def x(i):
        if i == 0:
            return 0
        if i == J + 1:
            return p
        return _anchor(i, primes, p)[0]

    lo, hi = 0, J + 1  # invariant: x(lo) <= r < x(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if x(mid) <= r:
            lo = mid
        else:
            hi = mid
    chain = _Builder.point()
    base = 0
    if lo > 0:
        base, parts = _anchor(lo, primes, p)
        for bld, _ in parts:
            chain.series(bld)
    chain.path(r - base)
    return chain.to_circuit(p, r)


def build_resistance_naive(r, p) -> Circuit:
    """Unit path of length r."""
    if not 1 <= r <= p - 1:
        raise ValueError("need 1 <= r <= p-1")
    b = _Builder()
    b.path(r - 1)
    return b.to_circuit(p, r)
