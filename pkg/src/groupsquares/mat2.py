"""Square roots of 2x2 matrices in GL2, SL2 and PSL2 over a prime field.

A non-scalar A is cyclic, so anything commuting with it, in particular any
root, lies in the algebra F_p[A] = {uE + vA}.  Using A^2 = tr*A - det*E,

    (uE + vA)^2 = A  <=>  u^2 = v^2 det  and  v^2 (tr + 2 s r) = 1,

where r^2 = det, s = +-1 and u = s v r.  Such a root has determinant s*r.
A scalar matrix is a square of sqrt(l)*E or of the companion [[0,1],[l,0]].
Characteristic 2 is decided by enumerating GL2(F_2).
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ffield import Fp2Elem, PrimeField, check_prime, fp2_is_square, fp2_sqrt, inv_mod, legendre, sqrt_mod

BRUTE_FORCE_MAX_PRIME = 17


class MatrixParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class MatGroup(enum.Enum):
    GL2 = "gl2"
    SL2 = "sl2"
    PSL2 = "psl2"


@dataclass(frozen=True)
class Mat2:
    """[[a, b], [c, d]] over F_p."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        p = self.p
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % p)

    @classmethod
    def of(cls, rows, p: int) -> Mat2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d, check_prime(p))

    @classmethod
    def identity(cls, p: int) -> Mat2:
        return cls(1, 0, 0, 1, p)

    @classmethod
    def scalar(cls, lam: int, p: int) -> Mat2:
        return cls(lam, 0, 0, lam, p)

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> Mat2:
        return parse_matrix(text, p)

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.p

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def charpoly(self) -> tuple[int, int, int]:
        """Coefficients of x^2 - tr x + det."""
        return 1, -self.trace % self.p, self.det

    def __mul__(self, o: Mat2) -> Mat2:
        if o.p != self.p:
            raise ValueError("matrices over different fields")
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
            self.p,
        )

    def __add__(self, o: Mat2) -> Mat2:
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.p)

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d, self.p)

    def scale(self, k: int) -> Mat2:
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d, self.p)

    def __pow__(self, k: int) -> Mat2:
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Mat2.identity(self.p), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> Mat2:
        di = inv_mod(self.det, self.p)
        return Mat2(self.d * di, -self.b * di, -self.c * di, self.a * di, self.p)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def canonical_sign(self) -> Mat2:
        """Representative of {A, -A}: first nonzero entry lies in 1..(p-1)/2."""
        if self.p == 2:
            return self
        first = next(x for x in (self.a, self.b, self.c, self.d) if x)
        return self if first <= (self.p - 1) // 2 else -self

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


_MATRIX = re.compile(
    r"\s*\[\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*\]"
    r"\s*(?:mod\s+(\d+))?\s*$"
)


def parse_matrix(text: str, p: int | None = None) -> Mat2:
    """Parse ``[[a,b],[c,d]]`` optionally followed by ``mod p``."""
    t = text.replace("−", "-")
    m = _MATRIX.match(t)
    if not m:
        raise MatrixParseError("expected [[a,b],[c,d]] [mod p]", text, _first_bad(t))
    entries = [int(x) for x in m.group(1, 2, 3, 4)]
    modulus = int(m.group(5)) if m.group(5) else None
    if modulus is not None and p is not None and modulus != p:
        raise MatrixParseError(f"modulus {modulus} conflicts with prime {p}", text, m.start(5))
    prime = modulus if modulus is not None else p
    if prime is None:
        raise MatrixParseError("no prime given", text, len(text))
    return Mat2(*entries, check_prime(prime))


def _first_bad(t: str) -> int:
    # longest prefix accepted by the grammar, as a column
    pattern = "[[n,n],[n,n]]"
    i = j = 0
    while i < len(t) and j < len(pattern):
        ch = t[i]
        if ch.isspace():
            i += 1
            continue
        want = pattern[j]
        if want == "n":
            k = i + (1 if ch == "-" else 0)
            if k < len(t) and t[k].isdigit():
                while k < len(t) and t[k].isdigit():
                    k += 1
                i, j = k, j + 1
                continue
            return i
        if ch != want:
            return i
        i, j = i + 1, j + 1
    return i


class ClassKind(enum.Enum):
    SCALAR = "scalar"
    SPLIT = "split"
    JORDAN = "jordan"
    IRREDUCIBLE = "irreducible"


@dataclass(frozen=True)
class MatrixClass:
    kind: ClassKind
    eigenvalues: tuple

    def __str__(self) -> str:
        vals = ", ".join(str(e) for e in self.eigenvalues)
        return f"{self.kind.value}({vals})"


def classify(A: Mat2) -> MatrixClass:
    p = A.p
    if A.det == 0:
        raise ValueError(f"{A} is singular mod {p}")
    if A.is_scalar():
        return MatrixClass(ClassKind.SCALAR, (A.a,))
    tr, det = A.trace, A.det
    if p == 2:
        roots = [x for x in range(2) if (x * x - tr * x + det) % 2 == 0]
        if not roots:
            return MatrixClass(ClassKind.IRREDUCIBLE, ())
        return MatrixClass(ClassKind.JORDAN, (roots[0],))
    half = inv_mod(2, p)
    disc = (tr * tr - 4 * det) % p
    if disc == 0:
        return MatrixClass(ClassKind.JORDAN, (tr * half % p,))
    r = sqrt_mod(disc, p)
    if r is not None:
        l1, l2 = sorted(((tr + r) * half % p, (tr - r) * half % p))
        return MatrixClass(ClassKind.SPLIT, (l1, l2))
    field = PrimeField(p)
    root_disc = fp2_sqrt(field.ext(disc))
    lam = (root_disc + tr) * half
    return MatrixClass(ClassKind.IRREDUCIBLE, (lam, lam.conjugate()))


def in_group(A: Mat2, group: MatGroup) -> bool:
    if group is MatGroup.GL2:
        return A.det != 0
    return A.det == 1


def _check_member(A: Mat2, group: MatGroup) -> None:
    if not in_group(A, group):
        raise ValueError(f"{A} is not in {group.value.upper()}(F_{A.p}) (det {A.det})")


def _sl2_has_sqrt(A: Mat2, cls: MatrixClass) -> bool:
    p = A.p
    if cls.kind is ClassKind.SCALAR:
        return True
    if cls.kind is ClassKind.SPLIT:
        return legendre(cls.eigenvalues[0], p) == 1
    if cls.kind is ClassKind.JORDAN:
        # a root beta*E + N has det beta^2 = lambda, so lambda = -1 never works
        return cls.eigenvalues[0] == 1
    return legendre(A.trace + 2, p) == 1


def has_sqrt(A: Mat2, group: MatGroup) -> bool:
    """Whether X^2 = A (X^2 = +-A for PSL2) has a solution X in the group."""
    _check_member(A, group)
    p = A.p
    if p == 2:
        return bool(brute_force_roots(A, group))
    cls = classify(A)
    if group is MatGroup.SL2:
        return _sl2_has_sqrt(A, cls)
    if group is MatGroup.PSL2:
        return _sl2_has_sqrt(A, cls) or _sl2_has_sqrt(-A, classify(-A))
    if cls.kind is ClassKind.SCALAR:
        return True
    if cls.kind is ClassKind.SPLIT:
        return all(legendre(l, p) == 1 for l in cls.eigenvalues)
    if cls.kind is ClassKind.JORDAN:
        return legendre(cls.eigenvalues[0], p) == 1
    return fp2_is_square(cls.eigenvalues[0])


def _jordan_root(A: Mat2, lam: int, group: MatGroup) -> Mat2 | None:
    """Conjugate A to [[l,1],[0,l]], take [[b, 1/(2b)],[0, b]], conjugate back."""
    p = A.p
    beta = sqrt_mod(lam, p)
    if beta is None:
        return None
    N = A + Mat2.scalar(-lam, p)
    for e in ((1, 0), (0, 1)):
        v1 = (N.a * e[0] + N.b * e[1], N.c * e[0] + N.d * e[1])
        if any(v1):
            break
    U = Mat2(v1[0], e[0], v1[1], e[1], p)
    upper = Mat2(beta, inv_mod(2 * beta, p), 0, beta, p)
    B = U * upper * U.inverse()
    return B if in_group(B, group) else None


def _algebra_roots(A: Mat2):
    p = A.p
    r = sqrt_mod(A.det, p)
    if r is None:
        return
    for s in (1, -1):
        w = (A.trace + 2 * s * r) % p
        if w == 0:
            continue
        v = sqrt_mod(inv_mod(w, p), p)
        if v is None:
            continue
        u = s * v * r
        yield Mat2.scalar(u, p) + A.scale(v)


def _sqrt_in(A: Mat2, group: MatGroup) -> Mat2 | None:
    p = A.p
    cls = classify(A)
    if cls.kind is ClassKind.SCALAR:
        lam = cls.eigenvalues[0]
        cands = []
        r = sqrt_mod(lam, p)
        if r is not None:
            cands.append(Mat2.scalar(r, p))
        cands.append(Mat2(0, 1, lam, 0, p))
        return next((B for B in cands if in_group(B, group)), None)
    if cls.kind is ClassKind.JORDAN:
        return _jordan_root(A, cls.eigenvalues[0], group)
    return next((B for B in _algebra_roots(A) if in_group(B, group)), None)


def sqrt(A: Mat2, group: MatGroup) -> Mat2 | None:
    """A root of A in the group, or None; for PSL2 the canonical sign."""
    _check_member(A, group)
    if A.p == 2:
        roots = sorted(brute_force_roots(A, group), key=lambda m: m.rows)
        return roots[0] if roots else None
    if group is MatGroup.PSL2:
        for target in (A, -A):
            B = _sqrt_in(target, MatGroup.SL2)
            if B is not None:
                return B.canonical_sign()
        return None
    return _sqrt_in(A, group)


@lru_cache(maxsize=32)
def group_elements(p: int, group: MatGroup) -> np.ndarray:
    """All elements as rows (a, b, c, d); PSL2 uses canonical signs."""
    check_prime(p)
    if p > BRUTE_FORCE_MAX_PRIME:
        raise ValueError(f"enumeration limited to p <= {BRUTE_FORCE_MAX_PRIME}")
    grid = np.array(list(itertools.product(range(p), repeat=4)), dtype=np.int64)
    det = (grid[:, 0] * grid[:, 3] - grid[:, 1] * grid[:, 2]) % p
    if group is MatGroup.GL2:
        return grid[det != 0]
    sl = grid[det == 1]
    if group is MatGroup.SL2:
        return sl
    return sl[_canonical_mask(sl, p)]


def _canonical_mask(rows: np.ndarray, p: int) -> np.ndarray:
    if p == 2:
        return np.ones(len(rows), dtype=bool)
    nz = rows != 0
    first = rows[np.arange(len(rows)), nz.argmax(axis=1)]
    return first <= (p - 1) // 2


def _square_rows(m: np.ndarray, p: int) -> np.ndarray:
    a, b, c, d = m.T
    return np.stack([a * a + b * c, a * b + b * d, c * a + d * c, c * b + d * d], axis=1) % p


@lru_cache(maxsize=32)
def _group_squares(p: int, group: MatGroup) -> tuple[np.ndarray, np.ndarray]:
    elems = group_elements(p, group)
    return elems, _square_rows(elems, p)


def brute_force_roots(A: Mat2, group: MatGroup) -> set[Mat2]:
    """{B in G : B^2 = A} by enumeration; modulo sign for PSL2."""
    p = A.p
    elems, sq = _group_squares(p, group)
    targets = [A]
    if group is MatGroup.PSL2:
        targets.append(-A)
    hit = np.zeros(len(elems), dtype=bool)
    for T in targets:
        hit |= (sq == np.array([T.a, T.b, T.c, T.d])).all(axis=1)
    return {Mat2(*map(int, row), p) for row in elems[hit]}


def eigenvalues(A: Mat2) -> tuple[Fp2Elem, Fp2Elem]:
    """Roots of the characteristic polynomial in F_{p^2} (p odd)."""
    p = A.p
    field = PrimeField(p)
    disc = field.ext(A.trace * A.trace - 4 * A.det)
    root = fp2_sqrt(disc)
    half = inv_mod(2, p)
    return (root + A.trace) * half, (-root + A.trace) * half


def commutator_three_squares_matrix(a: Mat2, b: Mat2) -> tuple[Mat2, Mat2, Mat2]:
    """x, y, z with x^2 y^2 z^2 = a b a^-1 b^-1."""
    if a.p != b.p:
        raise ValueError("matrices over different fields")
    if a.det == 0 or b.det == 0:
        raise ValueError("commutator needs invertible matrices")
    ai, bi = a.inverse(), b.inverse()
    return a, ai * b * a, ai * bi


def criterion_values(A: Mat2) -> dict:
    p = A.p
    odd = p != 2
    return {
        "trace": A.trace,
        "det": A.det,
        "tr_plus_2_legendre": legendre(A.trace + 2, p) if odd else None,
        "tr_minus_2_legendre": legendre(A.trace - 2, p) if odd else None,
    }


def matrix_report(A: Mat2, group: MatGroup) -> dict:
    root = sqrt(A, group)
    return {
        "p": A.p,
        "group": group.value,
        "matrix": str(A),
        "class": str(classify(A)),
        "has_sqrt": has_sqrt(A, group),
        "witness": None if root is None else str(root),
        "criterion_values": criterion_values(A),
    }
