"""Prime fields F_p and their quadratic extensions F_{p^2} = F_p(w), w^2 = d.

Residues are plain ints reduced mod p.  The non-residue ``d`` is the
smallest positive quadratic non-residue, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_MODULUS = 1 << 61

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not 2 <= p < MAX_MODULUS:
        raise ValueError(f"modulus {p} outside [2, 2^61)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} by Euler's criterion."""
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=256)
def smallest_nonresidue(p: int) -> int:
    if p == 2:
        raise ValueError("F_2 has no quadratic non-residue")
    return next(d for d in range(2, p) if legendre(d, p) == -1)


def sqrt_mod(a: int, p: int) -> int | None:
    """A root of x^2 = a (mod p), the smaller of r and p - r; None if none."""
    if p == 2:
        raise ValueError("sqrt_mod needs an odd prime")
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        r = _tonelli_shanks(a, p)
    return min(r, p - r)


def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def nonresidue(self) -> int:
        return smallest_nonresidue(self.p)

    def elements(self) -> range:
        return range(self.p)

    def ext(self, a: int, b: int = 0, d: int | None = None) -> Fp2Elem:
        """a + b*w in F_{p^2}, with w^2 = d (default: smallest non-residue)."""
        return Fp2Elem(a % self.p, b % self.p, self.p, self.nonresidue if d is None else d % self.p)


@dataclass(frozen=True)
class Fp2Elem:
    """a + b*w with w^2 = d, d a fixed non-residue mod p."""

    a: int
    b: int
    p: int
    d: int

    def _lift(self, other) -> Fp2Elem:
        if isinstance(other, Fp2Elem):
            if (other.p, other.d) != (self.p, self.d):
                raise ValueError("elements of different fields")
            return other
        return Fp2Elem(int(other) % self.p, 0, self.p, self.d)

    def __add__(self, other) -> Fp2Elem:
        o = self._lift(other)
        return Fp2Elem((self.a + o.a) % self.p, (self.b + o.b) % self.p, self.p, self.d)

    __radd__ = __add__

    def __neg__(self) -> Fp2Elem:
        return Fp2Elem(-self.a % self.p, -self.b % self.p, self.p, self.d)

    def __sub__(self, other) -> Fp2Elem:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Fp2Elem:
        return self._lift(other) - self

    def __mul__(self, other) -> Fp2Elem:
        o = self._lift(other)
        p = self.p
        return Fp2Elem(
            (self.a * o.a + self.d * self.b * o.b) % p,
            (self.a * o.b + self.b * o.a) % p,
            p,
            self.d,
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Fp2Elem:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Fp2Elem(1, 0, self.p, self.d), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Fp2Elem:
        """Frobenius image x^p = a - b*w."""
        return Fp2Elem(self.a, -self.b % self.p, self.p, self.d)

    def norm(self) -> int:
        return (self.a * self.a - self.d * self.b * self.b) % self.p

    def trace(self) -> int:
        return 2 * self.a % self.p

    def inverse(self) -> Fp2Elem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse")
        ni = inv_mod(n, self.p)
        c = self.conjugate()
        return Fp2Elem(c.a * ni % self.p, c.b * ni % self.p, self.p, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def in_base_field(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}w" if self.a else f"{self.b}w"


def fp2_is_square(x: Fp2Elem) -> bool:
    """Euler's criterion in F_{p^2}: x = 0 or x^((p^2-1)/2) = 1."""
    if x.is_zero():
        return True
    r = x ** ((x.p * x.p - 1) // 2)
    return (r.a, r.b) == (1, 0)


def fp2_sqrt(x: Fp2Elem) -> Fp2Elem | None:
    """A y with y^2 = x, normalised to the lexicographically smaller of +-y.

    Uses the norm: if y = u + v*w then N(x) = N(y)^2, and u^2 is one of
    (a +- sqrt(N(x))) / 2.
    """
    p, d = x.p, x.d
    a, b = x.a, x.b
    if b == 0:
        r = sqrt_mod(a, p)
        if r is not None:
            y = Fp2Elem(r, 0, p, d)
        else:
            y = Fp2Elem(0, sqrt_mod(a * inv_mod(d, p), p), p, d)
    else:
        n = sqrt_mod(x.norm(), p)
        if n is None:
            return None
        half = inv_mod(2, p)
        u = sqrt_mod((a + n) * half, p)
        if u is None:
            u = sqrt_mod((a - n) * half, p)
        v = b * inv_mod(2 * u, p) % p
        y = Fp2Elem(u, v, p, d)
    ny = -y
    return min(y, ny, key=lambda e: (e.a, e.b))
