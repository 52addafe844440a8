"""Exhaustive enumeration of permutation groups and verbal width by squares.

S(G) is closed under conjugation, so every product set S^m is a union of
conjugacy classes.  The width computation therefore only tests one
representative per class: x lies in S^(m+1) iff x*s^-1 lies in S^m for some
s in S.  Since S contains e and is closed under inverses, S^m grows until it
equals <S(G)>, and the first m where it stops growing is the width.
"""

from __future__ import annotations

import math
import re
import time
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .perm import Permutation, PermutationParseError

DEFAULT_LIMIT = 10**6
LARGE_GROUPS = ("M23", "M24")
MATHIEU = ("M8", "M9", "M10", "M11", "M12", "M20", "M21", "M22", "M23", "M24")


class GroupLimitExceeded(OverflowError):
    pass


@dataclass(frozen=True)
class GeneratorFile:
    name: str
    order: int
    degree: int
    generators: tuple[Permutation, ...]


_HEADER = re.compile(r"#\s*(\S+)\s+(\d+)\s+(\d+)\s*$")


def parse_generator_file(text: str, source: str = "<string>") -> GeneratorFile:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError(f"{source}: empty generator file")
    head = _HEADER.match(lines[0])
    if not head:
        raise ValueError(f"{source}: first line must be '# name order degree'")
    name, order, degree = head.group(1), int(head.group(2)), int(head.group(3))
    gens = []
    for lineno, ln in enumerate(lines[1:], start=2):
        if ln.startswith("#"):
            continue
        try:
            gens.append(Permutation.parse(ln, degree))
        except PermutationParseError as exc:
            raise ValueError(f"{source}:{lineno}: {exc}") from exc
    if not gens:
        raise ValueError(f"{source}: no generators")
    return GeneratorFile(name, order, degree, tuple(gens))


def load_generators(path: str | Path) -> GeneratorFile:
    path = Path(path)
    return parse_generator_file(path.read_text(encoding="utf-8"), str(path))


def mathieu_data(name: str) -> GeneratorFile:
    ref = resources.files("groupsquares") / "data" / f"{name}.txt"
    return parse_generator_file(ref.read_text(encoding="utf-8"), f"{name}.txt")


def _alternating_gens(n: int) -> list[Permutation]:
    t = Permutation.from_cycles([(1, 2, 3)], n)
    if n % 2:
        s = Permutation.from_cycles([tuple(range(3, n + 1))], n)
    else:
        s = Permutation.from_cycles([(1, 2), tuple(range(3, n + 1))], n)
    return [t, s]


def _symmetric_gens(n: int) -> list[Permutation]:
    return [Permutation.from_cycles([(1, 2)], n), Permutation.from_cycles([tuple(range(1, n + 1))], n)]


def builtin_names(include_large: bool = False) -> list[str]:
    names = [f"A{n}" for n in range(4, 11)] + [f"S{n}" for n in range(3, 11)]
    names += [m for m in MATHIEU if include_large or m not in LARGE_GROUPS]
    return names


def builtin_order(name: str) -> int:
    kind, n = _split_name(name)
    if kind == "A":
        return math.factorial(n) // 2
    if kind == "S":
        return math.factorial(n)
    return mathieu_data(name).order


def _split_name(name: str) -> tuple[str, int]:
    m = re.fullmatch(r"([ASM])(\d+)", name.strip().upper())
    if not m:
        raise ValueError(f"unknown group {name!r}")
    kind, n = m.group(1), int(m.group(2))
    ok = (
        (kind == "A" and 4 <= n <= 10)
        or (kind == "S" and 3 <= n <= 10)
        or (kind == "M" and f"M{n}" in MATHIEU)
    )
    if not ok:
        raise ValueError(f"unknown group {name!r}; known: {', '.join(builtin_names(True))}")
    return kind, n


def builtin_group(name: str, allow_large: bool = False) -> list[Permutation]:
    """Generators of A4..A10 (Carmichael), S3..S10, or a shipped Mathieu group."""
    kind, n = _split_name(name)
    if kind == "A":
        return _alternating_gens(n)
    if kind == "S":
        return _symmetric_gens(n)
    label = f"M{n}"
    if label in LARGE_GROUPS and not allow_large:
        raise ValueError(f"{label} is opt-in (allow_large=True / --large)")
    return list(mathieu_data(label).generators)


@dataclass
class GroupTable:
    """All elements of a permutation group as uint8 rows, in closure order."""

    generators: tuple[Permutation, ...]
    elements: np.ndarray
    name: str = ""
    index: kernels.ElementIndex = field(init=False, repr=False)

    def __post_init__(self):
        self.index = kernels.ElementIndex(self.elements)

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    @property
    def degree(self) -> int:
        return self.elements.shape[1]

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: Permutation) -> bool:
        return self.index_of(g) >= 0

    def index_of(self, g: Permutation) -> int:
        row = np.array([g.images], dtype=np.uint8)
        return int(self.index.lookup(row)[0])

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        idx = self.index.lookup(rows)
        if (idx < 0).any():
            raise AssertionError("product left the group; element table is not closed")
        return idx

    def element(self, i: int) -> Permutation:
        return Permutation(self.elements[i].tolist())

    def permutations(self, indices=None) -> list[Permutation]:
        rows = self.elements if indices is None else self.elements[np.asarray(indices)]
        return [Permutation(r) for r in rows.tolist()]

    @cached_property
    def square_map(self) -> np.ndarray:
        """i -> index of element_i squared."""
        return self.lookup(kernels.compose_rows(self.elements, self.elements))

    @cached_property
    def inverse_map(self) -> np.ndarray:
        return self.lookup(kernels.invert_rows(self.elements))

    @cached_property
    def class_labels(self) -> np.ndarray:
        """Conjugacy class label per element (components of x -> g^-1 x g)."""
        rows, cols = [], []
        for g in self.generators:
            gi = np.array(g.inverse().images, dtype=np.uint8)
            gr = np.array(g.images, dtype=np.uint8)
            conj = kernels.compose_rows(kernels.compose_rows(gi[None, :], self.elements), gr[None, :])
            rows.append(np.arange(self.order))
            cols.append(self.lookup(conj))
        r, c = np.concatenate(rows), np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(self.order, self.order))
        _, labels = connected_components(graph, directed=True, connection="weak")
        return labels


def enumerate_group(gens, limit: int = DEFAULT_LIMIT, name: str = "") -> GroupTable:
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    degrees = {g.degree for g in gens}
    if len(degrees) != 1:
        raise ValueError(f"generators have mixed degrees {sorted(degrees)}")
    if max(degrees) > 255:
        raise ValueError("degree above 255 not supported by the byte encoding")
    rows = np.array([g.images for g in gens], dtype=np.uint8)
    try:
        elements = kernels.closure(rows, limit)
    except OverflowError as exc:
        raise GroupLimitExceeded(f"group {name or '<gens>'} has more than {limit} elements") from exc
    return GroupTable(gens, elements, name)


def enumerate_builtin(name: str, limit: int = DEFAULT_LIMIT, allow_large: bool = False) -> GroupTable:
    return enumerate_group(builtin_group(name, allow_large), limit, name.strip().upper())


def squares_set(G: GroupTable) -> np.ndarray:
    """Sorted element indices of S(G) = {g^2}."""
    return np.unique(G.square_map)


def squaring_chain(G: GroupTable) -> list[int]:
    """Sizes of G, s(G), s(s(G)), ... up to the first repeat."""
    current = np.arange(G.order)
    sizes = [G.order]
    while True:
        current = np.unique(G.square_map[current])
        if len(current) == sizes[-1]:
            return sizes
        sizes.append(len(current))


@dataclass(frozen=True)
class WidthReport:
    name: str
    order: int
    squares_count: int
    squares_order: int
    generates: bool
    width: int
    diameter: float
    runtime_ms: float

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "squares_order": self.squares_order,
            "generates": self.generates,
            "width": self.width,
            "diameter": "inf" if math.isinf(self.diameter) else int(self.diameter),
            "runtime_ms": round(self.runtime_ms, 3),
        }


def product_layers(G: GroupTable, subset: np.ndarray | None = None) -> list[np.ndarray]:
    """Boolean masks of S^0 = {e}, S^1, ..., up to the fixpoint <S>.

    ``subset`` defaults to S(G) and must be a conjugation-closed set of
    indices that is closed under inverses.
    """
    S = squares_set(G) if subset is None else np.asarray(subset)
    labels = G.class_labels
    n_classes = labels.max() + 1
    reps = np.full(n_classes, -1, dtype=np.int64)
    reps[labels[::-1]] = np.arange(G.order)[::-1]
    s_inv_rows = G.elements[G.inverse_map[S]]

    e = G.index_of(Permutation.identity(G.degree))
    in_class = np.zeros(n_classes, dtype=bool)
    in_class[labels[e]] = True
    layers = [labels == labels[e]]
    while True:
        nxt = in_class.copy()
        for c in np.flatnonzero(~in_class):
            x = G.elements[reps[c]]
            prods = G.lookup(kernels.compose_rows(x[None, :], s_inv_rows))
            if in_class[labels[prods]].any():
                nxt[c] = True
        if (nxt == in_class).all():
            return layers
        in_class = nxt
        layers.append(in_class[labels])


def width_by_squares(G: GroupTable) -> WidthReport:
    t0 = time.perf_counter()
    S = squares_set(G)
    layers = product_layers(G, S)
    span = int(layers[-1].sum())
    width = len(layers) - 1
    generates = span == G.order
    if not generates:
        diameter = math.inf
    else:
        diameter = width
    return WidthReport(
        name=G.name,
        order=G.order,
        squares_count=len(S),
        squares_order=span,
        generates=generates,
        width=width,
        diameter=diameter,
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )


def cayley_diameter(G: GroupTable, connection: np.ndarray) -> float:
    """Eccentricity of e in the Cayley graph with the given connection set."""
    dist = np.full(G.order, -1, dtype=np.int64)
    e = G.index_of(Permutation.identity(G.degree))
    dist[e] = 0
    frontier = np.array([e])
    conn_rows = G.elements[np.asarray(connection)]
    d = 0
    while len(frontier):
        d += 1
        prods = kernels.compose_rows(G.elements[frontier][:, None, :], conn_rows[None, :, :])
        idx = np.unique(G.lookup(prods.reshape(-1, G.degree)))
        new = idx[dist[idx] < 0]
        dist[new] = d
        frontier = new
    if (dist < 0).any():
        return math.inf
    return float(dist.max())


def naive_width_report(G: GroupTable) -> WidthReport:
    """Reference computation by full product sets and a Cayley-graph BFS."""
    t0 = time.perf_counter()
    S = squares_set(G)
    current = np.zeros(G.order, dtype=bool)
    current[G.index_of(Permutation.identity(G.degree))] = True
    s_rows = G.elements[S]
    width = 0
    while True:
        members = G.elements[current]
        prods = kernels.compose_rows(members[:, None, :], s_rows[None, :, :]).reshape(-1, G.degree)
        nxt = np.zeros_like(current)
        nxt[G.lookup(prods)] = True
        if (nxt == current).all():
            break
        current = nxt
        width += 1
    span = int(current.sum())
    nonid = S[S != G.index_of(Permutation.identity(G.degree))]
    diameter = cayley_diameter(G, nonid) if len(nonid) else (0.0 if G.order == 1 else math.inf)
    return WidthReport(
        name=G.name,
        order=G.order,
        squares_count=len(S),
        squares_order=span,
        generates=span == G.order,
        width=width,
        diameter=diameter,
        runtime_ms=(time.perf_counter() - t0) * 1000,
    )
