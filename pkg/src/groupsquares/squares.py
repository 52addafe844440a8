"""Square roots and products of two squares in S_n and A_n.

A cycle of odd length k squares to a k-cycle; a cycle of length 2l squares
to two interleaved l-cycles.  Every root of g is therefore assembled from
roots of single odd cycles and from interleavings of two equal-length
cycles of g, and all decisions below are statements about cycle types.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .perm import CycleType, Parity, Permutation, cycle_type, parity

Cycle = tuple[int, ...]

BRUTE_FORCE_MAX_DEGREE = 10


class Ambient(enum.Enum):
    SN = "sn"
    AN = "an"


class Obstruction(enum.Enum):
    """Why no root exists in the requested ambient group."""

    ODD_EVEN_CYCLE_MULTIPLICITY = "odd_even_cycle_multiplicity"
    NO_EVEN_ROOT = "no_even_root"


@dataclass(frozen=True)
class RootReport:
    permutation: Permutation
    ambient: Ambient
    exists_in_sn: bool
    exists_in_an: bool
    witness: Permutation | None
    obstruction: Obstruction | None

    @property
    def witness_parity(self) -> Parity | None:
        return None if self.witness is None else parity(self.witness)

    def to_json(self) -> dict:
        return {
            "degree": self.permutation.degree,
            "cycle_type": {str(l): m for l, m in cycle_type(self.permutation).counts},
            "square_in_sn": self.exists_in_sn,
            "square_in_an": self.exists_in_an,
            "witness": None if self.witness is None else str(self.witness),
            "obstruction": None if self.obstruction is None else self.obstruction.value,
        }


@dataclass(frozen=True)
class TwoSquareDecomposition:
    """``g = h^2 * t^2`` with h, t even."""

    h: Permutation
    t: Permutation

    @property
    def first_square(self) -> Permutation:
        return self.h * self.h

    @property
    def second_square(self) -> Permutation:
        return self.t * self.t

    def product(self) -> Permutation:
        return self.first_square * self.second_square


def even_cycle_obstruction(ct: CycleType) -> bool:
    """True when some even length occurs an odd number of times."""
    return any(l % 2 == 0 and m % 2 for l, m in ct.counts)


def is_square_in_sn(ct: CycleType) -> bool:
    return not even_cycle_obstruction(ct)


def _has_repeated_odd_length(ct: CycleType) -> bool:
    # fixed points count: two of them square-root to a transposition
    return any(l % 2 and m >= 2 for l, m in ct.counts)


def is_square_in_an(ct: CycleType) -> bool:
    if ct.parity is Parity.ODD or even_cycle_obstruction(ct):
        return False
    even_pairs = sum(ct.pairs(l) for l, _ in ct.counts if l % 2 == 0)
    return even_pairs % 2 == 0 or _has_repeated_odd_length(ct)


def sqrt_odd_cycle(c: Sequence[int]) -> Cycle:
    """Root of an odd cycle: its (k+1)/2-th power, again a k-cycle."""
    k = len(c)
    if k % 2 == 0:
        raise ValueError(f"cycle length {k} is even")
    step = (k + 1) // 2
    return tuple(c[(i * step) % k] for i in range(k))


def interleave_pair(c1: Sequence[int], c2: Sequence[int], shift: int = 0) -> Cycle:
    """The 2l-cycle (a1 b_{1+s} a2 b_{2+s} ...) whose square is c1*c2."""
    l = len(c1)
    if len(c2) != l:
        raise ValueError(f"cycle lengths differ: {l} != {len(c2)}")
    if set(c1) & set(c2):
        raise ValueError("cycles overlap")
    if not 0 <= shift < l:
        raise ValueError(f"shift must lie in [0, {l})")
    out: list[int] = []
    for i in range(l):
        out += [c1[i], c2[(i + shift) % l]]
    return tuple(out)


def _assemble(degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    return Permutation.from_cycles(cycles, degree)


def _cycles_by_length(g: Permutation) -> dict[int, list[Cycle]]:
    by_len: dict[int, list[Cycle]] = {}
    for c in g.cycles(include_fixed=True):
        by_len.setdefault(len(c), []).append(c)
    return by_len


def _constructive_root(g: Permutation, want_even: bool) -> Permutation | None:
    ct = cycle_type(g)
    if even_cycle_obstruction(ct):
        return None
    by_len = _cycles_by_length(g)
    parts: list[Cycle] = []
    odd_parts = 0
    for l in sorted(by_len):
        cs = by_len[l]
        if l % 2 == 0:
            for a, b in zip(cs[::2], cs[1::2]):
                parts.append(interleave_pair(a, b))
                odd_parts += 1
    fix_pair: tuple[Cycle, Cycle] | None = None
    if want_even and odd_parts % 2:
        for l in sorted(by_len):
            if l % 2 and len(by_len[l]) >= 2:
                fix_pair = (by_len[l][0], by_len[l][1])
                break
        if fix_pair is None:
            return None
        parts.append(interleave_pair(*fix_pair))
    for l in sorted(by_len):
        if l % 2:
            for c in by_len[l]:
                if fix_pair is None or c not in fix_pair:
                    parts.append(sqrt_odd_cycle(c))
    return _assemble(g.degree, parts)


def sqrt_permutation(g: Permutation, ambient: Ambient = Ambient.AN) -> RootReport:
    ct = cycle_type(g)
    in_sn = is_square_in_sn(ct)
    in_an = is_square_in_an(ct)
    exists = in_an if ambient is Ambient.AN else in_sn
    witness = _constructive_root(g, want_even=ambient is Ambient.AN) if exists else None
    if exists:
        obstruction = None
    elif even_cycle_obstruction(ct):
        obstruction = Obstruction.ODD_EVEN_CYCLE_MULTIPLICITY
    else:
        obstruction = Obstruction.NO_EVEN_ROOT
    return RootReport(g, ambient, in_sn, in_an, witness, obstruction)


def _matchings(items: list, perfect: bool) -> Iterator[tuple[list[tuple], list]]:
    """Yield (pairs, singles) over all (perfect or partial) matchings."""
    if not items:
        yield [], []
        return
    first, rest = items[0], items[1:]
    if not perfect:
        for pairs, singles in _matchings(rest, perfect):
            yield pairs, [first] + singles
    for i, partner in enumerate(rest):
        for pairs, singles in _matchings(rest[:i] + rest[i + 1 :], perfect):
            yield [(first, partner)] + pairs, singles


def _roots_for_length(l: int, cycles: list[Cycle]) -> list[list[Cycle]]:
    """All ways to cover the given l-cycles by cycles of a root."""
    options: list[list[Cycle]] = []
    for pairs, singles in _matchings(cycles, perfect=l % 2 == 0):
        base = [sqrt_odd_cycle(c) for c in singles]
        for shifts in itertools.product(range(l), repeat=len(pairs)):
            options.append(base + [interleave_pair(a, b, s) for (a, b), s in zip(pairs, shifts)])
    return options


def _constructive_roots(g: Permutation) -> set[Permutation]:
    if even_cycle_obstruction(cycle_type(g)):
        return set()
    by_len = _cycles_by_length(g)
    per_length = [_roots_for_length(l, by_len[l]) for l in sorted(by_len)]
    return {
        _assemble(g.degree, [c for part in combo for c in part])
        for combo in itertools.product(*per_length)
    }


@lru_cache(maxsize=12)
def _symmetric_squares(n: int) -> tuple[np.ndarray, np.ndarray]:
    elems = kernels.all_permutations(n)
    sq = np.take_along_axis(elems, elems.astype(np.intp), axis=1)
    return elems, sq


def _brute_force_roots(g: Permutation) -> set[Permutation]:
    if g.degree > BRUTE_FORCE_MAX_DEGREE:
        raise ValueError(f"brute force limited to degree <= {BRUTE_FORCE_MAX_DEGREE}")
    elems, sq = _symmetric_squares(g.degree)
    target = np.asarray(g.images, dtype=np.uint8)
    hits = np.flatnonzero((sq == target).all(axis=1))
    return {Permutation(elems[i].tolist()) for i in hits}


def enumerate_roots(g: Permutation, mode: str = "constructive") -> set[Permutation]:
    """All h in S_n with h^2 = g."""
    if mode == "constructive":
        return _constructive_roots(g)
    if mode == "brute_force":
        return _brute_force_roots(g)
    raise ValueError(f"unknown mode {mode!r}")


def joint_cycle_factors(c: Sequence[int], d: Sequence[int], degree: int, shift: int = 0):
    """Two odd cycles g1, g2 sharing two points with g1*g2 = c*d.

    ``c`` and ``d`` are disjoint cycles of even lengths 2r and 2k.  Write
    c = (b1 .. b2r) and d = (t a1 .. a_{2k-1}); then for 1 <= m <= 2r and
    0 <= j <= 2k-1 with m + j even,

        g1 = (b1 .. bm, t, a1 .. aj)
        g2 = (b1, a_{j+1} .. a_{2k-1}, t, b_{m+1} .. b2r)

    multiply to c*d.  ``shift`` walks the boundary of the (m, j) grid, which
    has 2r + 2k - 2 points, starting from (m, j) = (2r, 0); that corner is
    g1 = (c, t), g2 = (b1, a1 .. a_{2k-1}, t).
    """
    two_r, two_k = len(c), len(d)
    if two_r % 2 or two_k % 2:
        raise ValueError("both cycles must have even length")
    if set(c) & set(d):
        raise ValueError("cycles overlap")
    boundary = _boundary_walk(two_r, two_k)
    m, j = boundary[shift % len(boundary)]
    b, t, a = list(c), d[0], list(d[1:])
    g1 = b[:m] + [t] + a[:j]
    g2 = [b[0]] + a[j:] + [t] + b[m:]
    return Permutation.from_cycles([g1], degree), Permutation.from_cycles([g2], degree)


def _boundary_walk(two_r: int, two_k: int) -> list[tuple[int, int]]:
    walk = [(two_r, j) for j in range(0, two_k, 2)]
    walk += [(m, two_k - 1) for m in range(two_r - 1, 0, -2)]
    walk += [(1, j) for j in range(two_k - 3, 0, -2)]
    walk += [(m, 0) for m in range(2, two_r, 2)]
    return walk


def two_square_count(len1: int, len2: int) -> int:
    """Number of distinct factor pairs reachable through ``shift``."""
    return len(_boundary_walk(len1, len2))


def _odd_cycles_root(degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    return _assemble(degree, [sqrt_odd_cycle(c) for c in cycles])


def decompose_two_squares(g: Permutation, shift: int = 0) -> TwoSquareDecomposition:
    """Write an even permutation as h^2 * t^2 with h, t in A_n.

    Squares in A_n are returned as (root, identity).  Otherwise the even
    cycles are paired in canonical order and each pair is split into two
    odd cycles sharing two points (see ``joint_cycle_factors``); the odd
    cycles of g go to the first factor.
    """
    if parity(g) is Parity.ODD:
        raise ValueError(f"{g} is odd; products of squares are even")
    n = g.degree
    report = sqrt_permutation(g, Ambient.AN)
    if report.witness is not None:
        return TwoSquareDecomposition(report.witness, Permutation.identity(n))
    cycles = g.cycles(include_fixed=False)
    even = [c for c in cycles if len(c) % 2 == 0]
    first = [c for c in cycles if len(c) % 2]
    second: list[Cycle] = []
    for c, d in zip(even[::2], even[1::2]):
        g1, g2 = joint_cycle_factors(c, d, n, shift)
        first += g1.cycles()
        second += g2.cycles()
    return TwoSquareDecomposition(_odd_cycles_root(n, first), _odd_cycles_root(n, second))


def commutator_three_squares(a: Permutation, b: Permutation):
    """x, y, z with x^2 y^2 z^2 = a b a^-1 b^-1."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")
    ai, bi = a.inverse(), b.inverse()
    return a, ai * b * a, ai * bi


def squares_not_closed_witness(n: int) -> tuple[Permutation, Permutation]:
    """Two squares of A_n whose product is not a square of A_n."""
    if n < 4:
        raise ValueError("S(A_n) is a subgroup for n < 4")
    if n <= 5:
        pair = ("(1,2,3)", "(2,3,4)")
    elif n < 10:
        pair = ("(1,2,3)", "(1,4,5,6,3)")
    else:
        pair = ("(1,3,5)(4,6)(7,8)", "(6,7)(9,10)")
    return Permutation.parse(pair[0], n), Permutation.parse(pair[1], n)
