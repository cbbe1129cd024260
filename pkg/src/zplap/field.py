"""Arithmetic in Z_p and in the quadratic extension Z_p[sqrt(t)].

Values are plain Python ints internally; FieldElement and ExtElement are thin
immutable wrappers for callers who want operator syntax.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class ZeroInverse(ZeroDivisionError):
    pass


class NotPrime(ValueError):
    pass


# Deterministic for every n < 3.3e24, so in particular below 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n):
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p, minimum=5):
    """Validate a modulus: prime, p >= minimum and p < 2^62."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise NotPrime(f"modulus must be an int, got {p!r}")
    if p < minimum or p >= 1 << 62 or not is_prime(p):
        raise NotPrime(f"{p} is not a prime in [{minimum}, 2^62)")
    return p


def prev_prime(n):
    """Largest prime <= n."""
    while n >= 2:
        if is_prime(n):
            return n
        n -= 1
    raise ValueError("no prime below 2")


def inv_mod(x, p):
    x %= p
    if x == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


def is_residue(x, p):
    x %= p
    return x == 0 or pow(x, (p - 1) // 2, p) == 1


@lru_cache(maxsize=None)
def find_nonresidue(p):
    """Smallest quadratic non-residue mod p (Euler's criterion)."""
    if p <= 2:
        raise ValueError("no non-residue mod 2")
    x = 2
    while pow(x, (p - 1) // 2, p) != p - 1:
        x += 1
    return x


def sqrt_mod(x, p):
    """Smaller of the two square roots of a residue x (Tonelli-Shanks)."""
    x %= p
    if x == 0:
        return 0
    if not is_residue(x, p):
        raise ValueError(f"{x} is not a square mod {p}")
    if p % 4 == 3:
        r = pow(x, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = find_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(x, q, p), pow(x, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


class PrimeField:
    """Field operations on ints mod p; shares an interface with ExtField."""

    def __init__(self, p):
        self.p = p
        self.zero = 0
        self.one = 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Zp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def coerce(self, x):
        return int(x) % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return x * y % self.p

    def neg(self, x):
        return -x % self.p

    def inv(self, x):
        return inv_mod(x, self.p)

    def is_zero(self, x):
        return x == 0

    def basis_scalars(self):
        # scalars s such that F = span_{Z_p}{s * 1}
        return [1]

    def real_part(self, x):
        return x


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, o):
        if isinstance(o, FieldElement):
            if o.p != self.p:
                raise ValueError("mixed moduli")
            return o.value
        return o

    def __add__(self, o):
        return FieldElement(self.value + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.value - self._other(o), self.p)

    def __rsub__(self, o):
        return FieldElement(self._other(o) - self.value, self.p)

    def __mul__(self, o):
        return FieldElement(self.value * self._other(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __int__(self):
        return self.value


def inv(x: FieldElement) -> FieldElement:
    return FieldElement(inv_mod(x.value, x.p), x.p)


def neg(x: FieldElement) -> FieldElement:
    return FieldElement(-x.value, x.p)


@dataclass(frozen=True)
class ExtElement:
    """a + b*sqrt(t) mod p."""

    a: int
    b: int
    t: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    def _other(self, o):
        if isinstance(o, ExtElement):
            if (o.t, o.p) != (self.t, self.p):
                raise ValueError("mixed extensions")
            return o.a, o.b
        if isinstance(o, FieldElement):
            return o.value, 0
        return o, 0

    def __add__(self, o):
        c, d = self._other(o)
        return ExtElement(self.a + c, self.b + d, self.t, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        c, d = self._other(o)
        return ExtElement(self.a - c, self.b - d, self.t, self.p)

    def __rsub__(self, o):
        c, d = self._other(o)
        return ExtElement(c - self.a, d - self.b, self.t, self.p)

    def __mul__(self, o):
        c, d = self._other(o)
        a, b, p = self.a, self.b, self.p
        return ExtElement(a * c + b * d * self.t, a * d + b * c, self.t, p)

    __rmul__ = __mul__

    def __neg__(self):
        return ExtElement(-self.a, -self.b, self.t, self.p)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def norm(self):
        return (self.a * self.a - self.t * self.b * self.b) % self.p

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroInverse("0 has no inverse in the extension")
        ni = pow(n, -1, self.p)
        return ExtElement(self.a * ni, -self.b * ni, self.t, self.p)


def conjugate(y: ExtElement) -> ExtElement:
    return ExtElement(y.a, -y.b, y.t, y.p)


class ExtField:
    """Z_p[sqrt(t)] with t a non-residue; elements are ExtElement."""

    def __init__(self, p, t=None):
        self.p = p
        self.t = find_nonresidue(p) if t is None else t % p
        if is_residue(self.t, p):
            raise ValueError(f"{self.t} is a square mod {p}; not a field extension")
        self.zero = ExtElement(0, 0, self.t, p)
        self.one = ExtElement(1, 0, self.t, p)
        self.root = ExtElement(0, 1, self.t, p)

    def __eq__(self, other):
        return isinstance(other, ExtField) and (other.p, other.t) == (self.p, self.t)

    def __hash__(self):
        return hash(("Ext", self.p, self.t))

    def __repr__(self):
        return f"ExtField({self.p}, t={self.t})"

    def __call__(self, a, b=0):
        return ExtElement(a, b, self.t, self.p)

    def coerce(self, x):
        if isinstance(x, ExtElement):
            return x
        if isinstance(x, tuple):
            return ExtElement(x[0], x[1], self.t, self.p)
        return ExtElement(int(x), 0, self.t, self.p)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        return x.inverse()

    def is_zero(self, x):
        return x.a == 0 and x.b == 0

    def basis_scalars(self):
        return [self.one, self.root]

    def real_part(self, x):
        return x.a

    def sqrt(self, x):
        return sqrt_ext(x, self.p, self.t)


def sqrt_ext(x, p, t=None):
    """Square root of x in Z_p[sqrt(t)]; x may be an int or FieldElement."""
    if isinstance(x, FieldElement):
        x = x.value
    if t is None:
        t = find_nonresidue(p)
    x %= p
    if is_residue(x, p):
        return ExtElement(sqrt_mod(x, p), 0, t, p)
    # x = t * (x/t) and x/t is a residue since both x and t are not
    return ExtElement(0, sqrt_mod(x * inv_mod(t, p), p), t, p)
