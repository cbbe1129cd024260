"""Sparse symmetric matrices over Z_p (or its quadratic extension) and the
text formats shared with the command line."""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field as dc_field

from .field import PrimeField, ExtField, ExtElement


class IndexCollision(ValueError):
    pass


class NotLaplacian(ValueError):
    pass


class FormatError(ValueError):
    pass


def _key(i, j):
    return (i, j) if i <= j else (j, i)


class SpSymMatrix:
    """Symmetric n x n matrix stored as {(i, j): value} with i <= j.

    Indices are 0-based. Zeros are never stored. Entries are ints mod p unless
    the matrix lives over an ExtField, in which case they are ExtElements.
    """

    def __init__(self, n, p, entries=None, field=None):
        self.n = n
        self.p = p
        self.field = field if field is not None else PrimeField(p)
        self._d = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (i, j), v in items:
                self.add(i, j, v)

    # -- construction -------------------------------------------------
    @classmethod
    def from_dense(cls, rows, p, field=None):
        n = len(rows)
        m = cls(n, p, field=field)
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix is not square")
            for j in range(i, n):
                a, b = m.field.coerce(rows[i][j]), m.field.coerce(rows[j][i])
                if a != b:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
                m.set(i, j, a)
        return m

    @classmethod
    def from_edges(cls, n, p, edges):
        """Laplacian of a weighted graph; edges are (u, v, weight)."""
        m = cls(n, p)
        for u, v, w in edges:
            m.add_edge(u, v, w)
        return m

    def copy(self):
        m = SpSymMatrix(self.n, self.p, field=self.field)
        m._d = dict(self._d)
        return m

    # -- element access -----------------------------------------------
    def _check(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"({i}, {j}) outside {self.n}x{self.n}")

    def __getitem__(self, ij):
        i, j = ij
        self._check(i, j)
        return self._d.get(_key(i, j), self.field.zero)

    def get(self, i, j):
        return self._d.get(_key(i, j), self.field.zero)

    def set(self, i, j, v):
        self._check(i, j)
        k = _key(i, j)
        v = self.field.coerce(v)
        if self.field.is_zero(v):
            self._d.pop(k, None)
        else:
            self._d[k] = v

    def add(self, i, j, v):
        """Add v at (i, j) (and (j, i)); merged zeros are deleted."""
        self._check(i, j)
        k = _key(i, j)
        F = self.field
        s = F.add(self._d.get(k, F.zero), F.coerce(v))
        if F.is_zero(s):
            self._d.pop(k, None)
        else:
            self._d[k] = s

    def add_edge(self, u, v, w):
        """Add an edge of weight w to a Laplacian (parallel edges merge)."""
        if u == v:
            raise ValueError("self loops are not edges")
        F = self.field
        w = F.coerce(w)
        self.add(u, u, w)
        self.add(v, v, w)
        self.add(u, v, F.neg(w))

    def edge_weight(self, u, v):
        return self.field.neg(self.get(u, v))

    def remove_edge(self, u, v):
        w = self.edge_weight(u, v)
        self.add_edge(u, v, self.field.neg(w))
        return w

    def grow(self, extra):
        """Append `extra` empty rows/columns; returns the first new index."""
        first = self.n
        self.n += extra
        return first

    # -- views ----------------------------------------------------------
    def items(self):
        """Stored (i <= j) entries in row-major order."""
        return sorted(self._d.items())

    def off_diagonal(self):
        """Upper off-diagonal entries (i < j) in row-major order."""
        return [((i, j), v) for (i, j), v in sorted(self._d.items()) if i != j]

    def nnz(self):
        return sum(1 if i == j else 2 for (i, j) in self._d)

    def nnz_stored(self):
        """Nonzeros in the upper triangle including the diagonal."""
        return len(self._d)

    def adjacency(self):
        adj = [dict() for _ in range(self.n)]
        for (i, j), v in self._d.items():
            if i != j:
                adj[i][j] = v
                adj[j][i] = v
        return adj

    def diagonal(self):
        return [self.get(i, i) for i in range(self.n)]

    def to_dense(self):
        F = self.field
        rows = [[F.zero] * self.n for _ in range(self.n)]
        for (i, j), v in self._d.items():
            rows[i][j] = v
            rows[j][i] = v
        return rows

    def row_sums(self):
        F = self.field
        s = [F.zero] * self.n
        for (i, j), v in self._d.items():
            s[i] = F.add(s[i], v)
            if i != j:
                s[j] = F.add(s[j], v)
        return s

    def matvec(self, x):
        F = self.field
        y = [F.zero] * self.n
        for (i, j), v in self._d.items():
            y[i] = F.add(y[i], F.mul(v, x[j]))
            if i != j:
                y[j] = F.add(y[j], F.mul(v, x[i]))
        return y

    def principal(self, idx):
        """Principal submatrix on the index list idx (relabelled 0..k-1)."""
        pos = {v: k for k, v in enumerate(idx)}
        m = SpSymMatrix(len(idx), self.p, field=self.field)
        for (i, j), v in self._d.items():
            if i in pos and j in pos:
                m.set(pos[i], pos[j], v)
        return m

    def __eq__(self, other):
        if not isinstance(other, SpSymMatrix):
            return NotImplemented
        return (self.n, self.p, self.field, self._d) == (other.n, other.p, other.field, other._d)

    def __repr__(self):
        return f"SpSymMatrix(n={self.n}, p={self.p}, nnz={self.nnz()})"


def is_laplacian(M: SpSymMatrix) -> bool:
    F = M.field
    return all(F.is_zero(s) for s in M.row_sums())


def require_laplacian(M):
    if not is_laplacian(M):
        raise NotLaplacian("row sums are not all zero mod p")
    return M


def edge_abs(v, p):
    """Integer weight of an off-diagonal entry v, i.e. (p - v) mod p."""
    return (p - v) % p


def degrees(L: SpSymMatrix):
    """(max combinatorial degree, max weighted degree) of a Laplacian."""
    if isinstance(L.field, ExtField):
        raise TypeError("degrees are defined for matrices over Z_p")
    comb = [0] * L.n
    wdeg = [0] * L.n
    for (i, j), v in L._d.items():
        if i == j:
            continue
        w = edge_abs(v, L.p)
        comb[i] += 1
        comb[j] += 1
        wdeg[i] += w
        wdeg[j] += w
    return (max(comb, default=0), max(wdeg, default=0))


def is_unit_weight(L: SpSymMatrix) -> bool:
    return all(v == L.p - 1 for (i, j), v in L._d.items() if i != j)


def add_padded(A: SpSymMatrix, B: SpSymMatrix, embedA, embedB, n=None):
    """Entrywise sum after embedding A and B into a common index space.

    embedA[k] is the result index of A's row k (likewise for B).
    """
    if A.field != B.field:
        raise ValueError("matrices over different fields")
    for emb, M in ((embedA, A), (embedB, B)):
        if len(emb) != M.n:
            raise ValueError("index map length differs from matrix dimension")
        if len(set(emb)) != len(emb):
            raise IndexCollision("index map is not injective")
    if n is None:
        n = max(list(embedA) + list(embedB), default=-1) + 1
    out = SpSymMatrix(n, A.p, field=A.field)
    for emb, M in ((embedA, A), (embedB, B)):
        for (i, j), v in M._d.items():
            out.add(emb[i], emb[j], v)
    return out


def indicator(n, i, j=None, p=None):
    """e_i, or chi_{i,j} = e_i - e_j when j is given (entries mod p if p given)."""
    x = [0] * n
    x[i] = 1
    if j is not None:
        x[j] = -1 if p is None else p - 1
    return x


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

@dataclass
class MatrixFile:
    """Parsed %%ZpMatrix: 0-based triplets as given in the file."""

    p: int
    rows: int
    cols: int
    entries: dict = dc_field(default_factory=dict)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def to_sym(self):
        """Symmetric matrix; an upper-triangle-only listing is mirrored."""
        if self.rows != self.cols:
            raise FormatError("symmetric matrix must be square")
        m = SpSymMatrix(self.rows, self.p)
        for (i, j), v in self.entries.items():
            other = self.entries.get((j, i))
            if other is not None and other != v:
                raise FormatError(f"entries ({i+1},{j+1}) and ({j+1},{i+1}) disagree")
            m.set(i, j, v)
        return m


def _lines(src):
    if isinstance(src, (str, os.PathLike)) and os.path.exists(src):
        with open(src) as fh:
            text = fh.read()
    elif isinstance(src, str):
        text = src
    else:
        text = src.read()
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def _header(lines, magic):
    if not lines or lines[0] != magic:
        raise FormatError(f"missing {magic} header")
    try:
        key, val = lines[1].split()
        assert key == "p"
        return int(val)
    except Exception:
        raise FormatError("second line must be 'p <prime>'") from None


def read_matrix(src) -> MatrixFile:
    lines = _lines(src)
    p = _header(lines, "%%ZpMatrix")
    try:
        tok = lines[2].split()
        assert tok[0] == "rows" and tok[2] == "cols"
        m, n = int(tok[1]), int(tok[3])
    except Exception:
        raise FormatError("third line must be 'rows <m> cols <n>'") from None
    mf = MatrixFile(p, m, n)
    for ln in lines[3:]:
        try:
            i, j, v = (int(x) for x in ln.split())
        except ValueError:
            raise FormatError(f"bad triplet line: {ln!r}") from None
        if not (1 <= i <= m and 1 <= j <= n):
            raise FormatError(f"index out of range: {ln!r}")
        if not 0 <= v < p:
            raise FormatError(f"value not in [0, p-1]: {ln!r}")
        if (i - 1, j - 1) in mf.entries:
            raise FormatError(f"duplicate entry: {ln!r}")
        if v:
            mf.entries[(i - 1, j - 1)] = v
    return mf


def read_vector(src):
    """Returns (p, list of ints)."""
    lines = _lines(src)
    p = _header(lines, "%%ZpVector")
    try:
        key, n = lines[2].split()
        assert key == "len"
        n = int(n)
    except Exception:
        raise FormatError("third line must be 'len <n>'") from None
    x = [0] * n
    for ln in lines[3:]:
        try:
            i, v = (int(t) for t in ln.split())
        except ValueError:
            raise FormatError(f"bad vector line: {ln!r}") from None
        if not 1 <= i <= n or not 0 <= v < p:
            raise FormatError(f"bad vector line: {ln!r}")
        x[i - 1] = v
    return p, x


def format_matrix(M, p=None) -> str:
    """Serialize an SpSymMatrix (i <= j only) or a dense list of rows."""
    out = io.StringIO()
    if isinstance(M, SpSymMatrix):
        if isinstance(M.field, ExtField):
            return format_ext_matrix(M)
        out.write(f"%%ZpMatrix\np {M.p}\nrows {M.n} cols {M.n}\n")
        for (i, j), v in M.items():
            out.write(f"{i+1} {j+1} {v}\n")
    else:
        rows = [list(r) for r in M]
        out.write(f"%%ZpMatrix\np {p}\nrows {len(rows)} cols {len(rows[0]) if rows else 0}\n")
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v % p:
                    out.write(f"{i+1} {j+1} {v % p}\n")
    return out.getvalue()


def format_ext_matrix(M: SpSymMatrix) -> str:
    """Extension-field matrices: 'i j a b' meaning a + b*sqrt(t)."""
    out = io.StringIO()
    out.write(f"%%ZpExtMatrix\np {M.p}\nt {M.field.t}\nrows {M.n} cols {M.n}\n")
    for (i, j), v in M.items():
        out.write(f"{i+1} {j+1} {v.a} {v.b}\n")
    return out.getvalue()


def format_vector(x, p) -> str:
    out = io.StringIO()
    ext = any(isinstance(v, ExtElement) for v in x)
    if ext:
        t = next(v.t for v in x if isinstance(v, ExtElement))
        out.write(f"%%ZpExtVector\np {p}\nt {t}\nlen {len(x)}\n")
        for i, v in enumerate(x):
            a, b = (v.a, v.b) if isinstance(v, ExtElement) else (v % p, 0)
            if a or b:
                out.write(f"{i+1} {a} {b}\n")
    else:
        out.write(f"%%ZpVector\np {p}\nlen {len(x)}\n")
        for i, v in enumerate(x):
            if v % p:
                out.write(f"{i+1} {v % p}\n")
    return out.getvalue()
