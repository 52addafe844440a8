"""Pure-Python versions of the compiled kernels, same signatures and output."""

from __future__ import annotations

import itertools
import math

import numpy as np

BACKEND = "python"


class ElementIndex:
    def __init__(self, elements):
        arr = np.ascontiguousarray(elements, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("elements must be a 2-D array")
        self.elements = arr
        self._index: dict[bytes, int] = {}
        for i, row in enumerate(arr):
            self._index.setdefault(row.tobytes(), i)

    def __len__(self) -> int:
        return self.elements.shape[0]

    def lookup(self, queries) -> np.ndarray:
        q = np.ascontiguousarray(queries, dtype=np.uint8)
        if q.ndim != 2 or q.shape[1] != self.elements.shape[1]:
            raise ValueError("query rows must match the element degree")
        get = self._index.get
        n = q.shape[1]
        raw = q.tobytes()
        return np.fromiter(
            (get(raw[i : i + n], -1) for i in range(0, len(raw), n)),
            dtype=np.int64,
            count=q.shape[0],
        )


def closure(gens, limit: int) -> np.ndarray:
    g = np.ascontiguousarray(gens, dtype=np.uint8)
    if g.ndim != 2 or g.shape[0] == 0:
        raise ValueError("need at least one generator row")
    n = g.shape[1]
    gen_rows = [bytes(r) for r in g]
    start = bytes(range(n))
    seen = {start: 0}
    order = [start]
    head = 0
    while head < len(order):
        x = order[head]
        for gr in gen_rows:
            y = bytes(gr[i] for i in x)
            if y not in seen:
                if len(order) >= limit:
                    raise OverflowError(f"closure exceeds limit {limit}")
                seen[y] = len(order)
                order.append(y)
        head += 1
    return np.frombuffer(b"".join(order), dtype=np.uint8).reshape(len(order), n).copy()


def all_permutations(n: int) -> np.ndarray:
    if n < 1 or n > 12:
        raise ValueError("degree must lie in [1, 12]")
    out = np.fromiter(
        itertools.chain.from_iterable(itertools.permutations(range(n))),
        dtype=np.uint8,
        count=math.factorial(n) * n,
    )
    return out.reshape(-1, n)
