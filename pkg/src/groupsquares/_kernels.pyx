# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: permutation hashing, group closure, S_n enumeration.

Elements are rows of a C-contiguous uint8 array holding 0-based images.
Products are left to right: row (x * g)[i] = g[x[i]].
"""

import numpy as np
cimport numpy as cnp
from libc.string cimport memcmp, memcpy
from libc.stdint cimport uint8_t, uint64_t, int64_t

cnp.import_array()

BACKEND = "cython"

cdef inline uint64_t _hash_row(const uint8_t* row, Py_ssize_t n) noexcept nogil:
    cdef uint64_t h = 1469598103934665603ULL
    cdef Py_ssize_t i
    for i in range(n):
        h ^= row[i]
        h *= 1099511628211ULL
    return h ^ (h >> 29)


cdef Py_ssize_t _table_size(Py_ssize_t count):
    cdef Py_ssize_t size = 16
    while size < 2 * count:
        size <<= 1
    return size


cdef class ElementIndex:
    """Open-addressing hash from element rows to their row numbers."""

    cdef readonly object elements
    cdef const uint8_t[:, ::1] _rows
    cdef int64_t[::1] _table
    cdef Py_ssize_t _mask
    cdef Py_ssize_t _n

    def __init__(self, elements):
        arr = np.ascontiguousarray(elements, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("elements must be a 2-D array")
        self.elements = arr
        self._rows = arr
        self._n = arr.shape[1]
        cdef Py_ssize_t size = _table_size(arr.shape[0])
        table = np.full(size, -1, dtype=np.int64)
        self._table = table
        self._mask = size - 1
        cdef Py_ssize_t i, slot
        cdef int64_t j
        with nogil:
            for i in range(self._rows.shape[0]):
                slot = <Py_ssize_t>(_hash_row(&self._rows[i, 0], self._n) & <uint64_t>self._mask)
                while True:
                    j = self._table[slot]
                    if j < 0:
                        self._table[slot] = i
                        break
                    if memcmp(&self._rows[j, 0], &self._rows[i, 0], self._n) == 0:
                        break
                    slot = (slot + 1) & self._mask

    def __len__(self):
        return self._rows.shape[0]

    def lookup(self, queries):
        q = np.ascontiguousarray(queries, dtype=np.uint8)
        if q.ndim != 2 or q.shape[1] != self._n:
            raise ValueError("query rows must match the element degree")
        cdef const uint8_t[:, ::1] qv = q
        out = np.empty(q.shape[0], dtype=np.int64)
        cdef int64_t[::1] ov = out
        cdef Py_ssize_t i, slot
        cdef int64_t j
        with nogil:
            for i in range(qv.shape[0]):
                slot = <Py_ssize_t>(_hash_row(&qv[i, 0], self._n) & <uint64_t>self._mask)
                while True:
                    j = self._table[slot]
                    if j < 0 or memcmp(&self._rows[j, 0], &qv[i, 0], self._n) == 0:
                        ov[i] = j
                        break
                    slot = (slot + 1) & self._mask
        return out


def closure(gens, Py_ssize_t limit):
    """Breadth-first closure of the identity under right multiplication."""
    g = np.ascontiguousarray(gens, dtype=np.uint8)
    if g.ndim != 2 or g.shape[0] == 0:
        raise ValueError("need at least one generator row")
    cdef Py_ssize_t n = g.shape[1], k = g.shape[0]
    cdef const uint8_t[:, ::1] gv = g
    cdef Py_ssize_t cap = 1024
    while cap < min(limit + 1, 1 << 16):
        cap <<= 1
    elems = np.empty((cap, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] ev = elems
    cdef Py_ssize_t size = _table_size(cap)
    table = np.full(size, -1, dtype=np.int64)
    cdef int64_t[::1] tv = table
    cdef Py_ssize_t mask = size - 1
    cdef Py_ssize_t count = 1, head = 0, i, r, slot, a
    cdef int64_t j
    cdef uint8_t[64] buf
    cdef bint found
    for i in range(n):
        ev[0, i] = <uint8_t>i
    tv[_hash_row(&ev[0, 0], n) & <uint64_t>mask] = 0
    while head < count:
        for r in range(k):
            for i in range(n):
                buf[i] = gv[r, ev[head, i]]
            slot = <Py_ssize_t>(_hash_row(buf, n) & <uint64_t>mask)
            found = False
            while True:
                j = tv[slot]
                if j < 0:
                    break
                if memcmp(&ev[j, 0], buf, n) == 0:
                    found = True
                    break
                slot = (slot + 1) & mask
            if found:
                continue
            if count >= limit:
                raise OverflowError(f"closure exceeds limit {limit}")
            if count == cap:
                cap *= 2
                grown = np.empty((cap, n), dtype=np.uint8)
                grown[:count] = elems[:count]
                elems = grown
                ev = elems
                size = _table_size(cap)
                table = np.full(size, -1, dtype=np.int64)
                tv = table
                mask = size - 1
                for a in range(count):
                    slot = <Py_ssize_t>(_hash_row(&ev[a, 0], n) & <uint64_t>mask)
                    while tv[slot] >= 0:
                        slot = (slot + 1) & mask
                    tv[slot] = a
                slot = <Py_ssize_t>(_hash_row(buf, n) & <uint64_t>mask)
                while tv[slot] >= 0:
                    slot = (slot + 1) & mask
            memcpy(&ev[count, 0], buf, n)
            tv[slot] = count
            count += 1
        head += 1
    return elems[:count].copy()


def all_permutations(int n):
    """All permutations of range(n) in lexicographic order."""
    if n < 1 or n > 12:
        raise ValueError("degree must lie in [1, 12]")
    cdef Py_ssize_t total = 1, r, i, j, lo, hi
    for i in range(2, n + 1):
        total *= i
    out = np.empty((total, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] ov = out
    cdef uint8_t[12] cur
    cdef uint8_t tmp
    for i in range(n):
        cur[i] = <uint8_t>i
    with nogil:
        for r in range(total):
            memcpy(&ov[r, 0], cur, n)
            i = n - 2
            while i >= 0 and cur[i] > cur[i + 1]:
                i -= 1
            if i < 0:
                break
            j = n - 1
            while cur[j] < cur[i]:
                j -= 1
            tmp = cur[i]; cur[i] = cur[j]; cur[j] = tmp
            lo = i + 1
            hi = n - 1
            while lo < hi:
                tmp = cur[lo]; cur[lo] = cur[hi]; cur[hi] = tmp
                lo += 1
                hi -= 1
    return out
