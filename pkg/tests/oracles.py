"""Independent reference computations used to derive expected values.

Nothing here calls into zplap's elimination code: inverses and square roots
are found by scanning, Schur complements go through sympy's modular inverse.
"""
import itertools

import sympy


def brute_inverse(x, p):
    return next(y for y in range(1, p) if x * y % p == 1)


def brute_nonresidue(p):
    squares = {y * y % p for y in range(p)}
    return next(x for x in range(1, p) if x not in squares)


def brute_sqrt_pairs(p, t):
    """Map x -> all (a, b) with (a + b sqrt t)^2 = x (small p only)."""
    out = {}
    for a in range(p):
        for b in range(p):
            x0 = (a * a + b * b * t) % p
            x1 = 2 * a * b % p
            if x1 == 0:
                out.setdefault(x0, set()).add((a, b))
    return out


def sympy_schur(dense, T, p):
    """A_TT - A_TS A_SS^{-1} A_ST via sympy's inverse mod p (dense lists)."""
    n = len(dense)
    T = sorted(T)
    S = [i for i in range(n) if i not in T]
    M = sympy.Matrix(dense)
    ATT = M.extract(T, T)
    if not S:
        return [[int(v) % p for v in ATT.row(i)] for i in range(len(T))]
    ASS = M.extract(S, S)
    inv = ASS.inv_mod(p)
    R = (ATT - M.extract(T, S) * inv * M.extract(S, T)).applyfunc(lambda v: v % p)
    return [[int(R[i, j]) for j in range(len(T))] for i in range(len(T))]


def sympy_singular(dense, p):
    if not dense:
        return False
    return sympy.Matrix(dense).det() % p == 0


def brute_solutions(A, b, p):
    """All x in Z_p^n with A x = b by direct scanning (no numpy)."""
    n = len(A[0])
    out = set()
    for x in itertools.product(range(p), repeat=n):
        if all(sum(a * v for a, v in zip(row, x)) % p == bi % p for row, bi in zip(A, b)):
            out.add(x)
    return out


def resistance_from_dense(dense, p):
    """Effective resistance between vertices 0 and 1 via sympy."""
    sc = sympy_schur(dense, [0, 1], p)
    return brute_inverse(sc[0][0], p)
