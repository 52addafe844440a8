"""Permutations of {1..n}, cycle decomposition and cycle types.

Products are read left to right: ``p * q`` applies ``p`` first, then ``q``,
so ``(p * q)(i) == q(p(i))``.  Points are 1-based at every public surface
and stored 0-based internally.

Text format
-----------
A permutation is written as a product of cycles::

    (1,2,3)(4,5)      commas separate points
    (1 2 3)(4 5)      whitespace also separates points
    ()   or   e       identity

Cycles that share points are multiplied left to right, so ``(1,2,3)(2,3,4)``
parses to ``(1,3)(2,4)``.  The degree is given explicitly or inferred as the
largest point mentioned.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Mapping, Sequence

MAX_DEGREE = 64


class PermutationParseError(ValueError):
    """Malformed permutation text; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    def __xor__(self, other: Parity) -> Parity:
        return Parity.EVEN if self is other else Parity.ODD

    def __str__(self) -> str:
        return self.value


class Permutation:
    """Immutable bijection of {1..degree}."""

    __slots__ = ("_images", "_hash", "__dict__")

    def __init__(self, images: Iterable[int], *, zero_based: bool = True):
        imgs = tuple(int(i) for i in images)
        if not zero_based:
            imgs = tuple(i - 1 for i in imgs)
        n = len(imgs)
        if n == 0:
            raise ValueError("degree must be positive")
        if n > MAX_DEGREE:
            raise ValueError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
        if sorted(imgs) != list(range(n)):
            raise ValueError(f"images do not form a bijection: {imgs}")
        self._images = imgs
        self._hash = hash(imgs)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> Permutation:
        """Product (left to right) of 1-based cycles, which may overlap."""
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=1)
        n = top if degree is None else degree
        if top > n:
            raise ValueError(f"point {top} exceeds degree {n}")
        result = list(range(n))
        for c in cycles:
            if any(x < 1 for x in c):
                raise ValueError(f"points are 1-based, got {c}")
            if len(set(c)) != len(c):
                raise ValueError(f"repeated point in cycle {c}")
            step = list(range(n))
            for i, x in enumerate(c):
                step[x - 1] = c[(i + 1) % len(c)] - 1
            result = [step[r] for r in result]
        return cls(result)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Permutation:
        return cls.from_cycles(parse_cycles(text), degree)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        """0-based image array."""
        return self._images

    def __call__(self, point: int) -> int:
        return self._images[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        return power(self, k)

    def __invert__(self) -> Permutation:
        return self.inverse()

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self._images):
            inv[j] = i
        return Permutation(inv)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other: Permutation) -> bool:
        return (self.degree, self._images) < (other.degree, other._images)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self.cycles())

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._images))

    @cached_property
    def _all_cycles(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self._images[x]
            out.append(tuple(cyc))
        return tuple(out)

    def cycles(self, include_fixed: bool = False) -> tuple[tuple[int, ...], ...]:
        """Canonical cycles: each starts at its least point, sorted by that point."""
        if include_fixed:
            return self._all_cycles
        return tuple(c for c in self._all_cycles if len(c) > 1)

    @cached_property
    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self._all_cycles), 1)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, j in enumerate(self._images) if i != j)


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    qi = q.images
    return Permutation(qi[i] for i in p.images)


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(p.inverse(), -k)
    out = list(range(p.degree))
    for cyc in p.cycles():
        m = len(cyc)
        s = k % m
        for i, x in enumerate(cyc):
            out[x - 1] = cyc[(i + s) % m] - 1
    return Permutation(out)


def conjugate(p: Permutation, q: Permutation) -> Permutation:
    """``q^-1 p q``."""
    return q.inverse() * p * q


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, fixed points counted as 1-cycles."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, mult: Mapping[int, int]) -> CycleType:
        if any(l < 1 or m < 0 for l, m in mult.items()):
            raise ValueError(f"invalid cycle type {dict(mult)}")
        return cls(tuple(sorted((int(l), int(m)) for l, m in mult.items() if m)))

    @classmethod
    def of(cls, p: Permutation) -> CycleType:
        mult: dict[int, int] = {}
        for c in p.cycles(include_fixed=True):
            mult[len(c)] = mult.get(len(c), 0) + 1
        return cls.from_mapping(mult)

    def multiplicity(self, length: int) -> int:
        return dict(self.counts).get(length, 0)

    def pairs(self, length: int) -> int:
        return self.multiplicity(length) // 2

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def degree(self) -> int:
        return sum(l * m for l, m in self.counts)

    @property
    def fixed(self) -> int:
        return self.multiplicity(1)

    @property
    def num_cycles(self) -> int:
        return sum(m for _, m in self.counts)

    @property
    def decrement(self) -> int:
        return self.degree - self.num_cycles

    @property
    def parity(self) -> Parity:
        odd = sum(m for l, m in self.counts if l % 2 == 0) % 2
        return Parity.ODD if odd else Parity.EVEN

    def __str__(self) -> str:
        parts = [f"{l}^{m}" if m > 1 else str(l) for l, m in sorted(self.counts, reverse=True)]
        return "[" + ", ".join(parts) + "]"


def cycle_type(p: Permutation) -> CycleType:
    return CycleType.of(p)


def parity(p: Permutation) -> Parity:
    return Parity.ODD if decrement(p) % 2 else Parity.EVEN


def decrement(p: Permutation) -> int:
    """n minus the number of cycles; the minimal number of transpositions."""
    return p.degree - len(p.cycles(include_fixed=True))


def format_cycles(cycles: Iterable[Sequence[int]]) -> str:
    text = "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycles if len(c) > 1)
    return text or "()"


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(\d+)|(e)\b)")


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Split cycle notation into 1-based tuples, reporting the failing column."""
    stripped = text.strip()
    if stripped == "e":
        return []
    cycles: list[tuple[int, ...]] = []
    current: list[int] | None = None
    expect_point = False
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PermutationParseError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            if current is not None:
                raise PermutationParseError("nested '('", text, start)
            current = []
            expect_point = True
        elif m.group(2):
            if current is None:
                raise PermutationParseError("unmatched ')'", text, start)
            if expect_point and current:
                raise PermutationParseError("missing point before ')'", text, start)
            cycles.append(tuple(current))
            current = None
        elif m.group(3):
            if current is None or expect_point:
                raise PermutationParseError("unexpected ','", text, start)
            expect_point = True
        elif m.group(4):
            if current is None:
                raise PermutationParseError("point outside a cycle", text, start)
            value = int(m.group(4))
            if value < 1:
                raise PermutationParseError("points are 1-based", text, start)
            if value in current:
                raise PermutationParseError(f"repeated point {value}", text, start)
            current.append(value)
            expect_point = False
        else:
            raise PermutationParseError("'e' must stand alone", text, start)
        pos = m.end()
    if current is not None:
        raise PermutationParseError("unclosed '('", text, len(text))
    return cycles
