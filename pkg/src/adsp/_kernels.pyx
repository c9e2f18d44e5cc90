# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice kernels: root classification over a box and the
unbounded-knapsack maximisation used for decomposition defects.

Results are identical to ``adsp._fallback``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int8_t, int32_t, int64_t

cnp.import_array()

cdef int64_t NEG = -(2**62)


cdef int8_t _classify(int64_t* b, int64_t* cb, Py_ssize_t V,
                      const int64_t* tail, const int64_t* head, Py_ssize_t E) noexcept nogil:
    cdef Py_ssize_t v, e, piv
    cdef int64_t s, nv, ne
    while True:
        s = 0
        for v in range(V):
            s += b[v]
        if s == 0:
            return 0
        if s == 1:
            return 1
        for v in range(V):
            cb[v] = 2 * b[v]
        for e in range(E):
            cb[tail[e]] -= b[head[e]]
            cb[head[e]] -= b[tail[e]]
        piv = -1
        for v in range(V):
            if b[v] > 0 and cb[v] > 0:
                piv = v
                break
        if piv < 0:
            nv = 0
            for v in range(V):
                if b[v] > 0:
                    nv += 1
            ne = 0
            for e in range(E):
                if b[tail[e]] > 0 and b[head[e]] > 0:
                    ne += 1
            # support inside a tree: connected iff #V - #E == 1
            return 2 if nv - ne == 1 else 0
        b[piv] -= cb[piv]
        if b[piv] < 0:
            return 0


def classify_box(alpha, edges):
    cdef cnp.ndarray[int64_t, ndim=1] a = np.ascontiguousarray(alpha, dtype=np.int64)
    cdef Py_ssize_t V = a.shape[0]
    cdef Py_ssize_t E = len(edges)
    cdef cnp.ndarray[int64_t, ndim=1] tail = np.array([t for t, _ in edges] or [0], dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] head = np.array([h for _, h in edges] or [0], dtype=np.int64)
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t v
    for v in range(V):
        total *= a[v] + 1
    cdef cnp.ndarray[int8_t, ndim=1] out = np.empty(total, dtype=np.int8)
    cdef cnp.ndarray[int64_t, ndim=1] coord = np.zeros(V, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] work = np.zeros(V, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] cb = np.zeros(V, dtype=np.int64)
    cdef int64_t* pc = &coord[0]
    cdef int64_t* pw = &work[0]
    cdef int64_t* pb = &cb[0]
    cdef int64_t* pa = &a[0]
    cdef Py_ssize_t idx
    with nogil:
        for idx in range(total):
            for v in range(V):
                pw[v] = pc[v]
            out[idx] = _classify(pw, pb, V, &tail[0], &head[0], E)
            v = V - 1
            while v >= 0:
                pc[v] += 1
                if pc[v] <= pa[v]:
                    break
                pc[v] = 0
                v -= 1
    return out


def knapsack(alpha, parts, values):
    cdef cnp.ndarray[int64_t, ndim=1] a = np.ascontiguousarray(alpha, dtype=np.int64)
    cdef Py_ssize_t V = a.shape[0]
    cdef cnp.ndarray[int64_t, ndim=2] P = np.ascontiguousarray(
        np.asarray(parts, dtype=np.int64).reshape(-1, V))
    cdef cnp.ndarray[int64_t, ndim=1] vals = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t m = P.shape[0]
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t v, k
    for v in range(V):
        total *= a[v] + 1
    cdef cnp.ndarray[int64_t, ndim=1] stride = np.ones(V, dtype=np.int64)
    for v in range(V - 2, -1, -1):
        stride[v] = stride[v + 1] * (a[v + 1] + 1)
    cdef cnp.ndarray[int64_t, ndim=1] best = np.full(total, NEG, dtype=np.int64)
    cdef cnp.ndarray[int32_t, ndim=1] choice = np.full(total, -1, dtype=np.int32)
    cdef cnp.ndarray[int64_t, ndim=1] coord = np.zeros(V, dtype=np.int64)
    cdef int64_t* pa = &a[0]
    cdef int64_t* ps = &stride[0]
    cdef int64_t* pc = &coord[0]
    cdef int64_t* pbest = &best[0]
    cdef int32_t* pch = &choice[0]
    cdef int64_t off, idx, src, cand, val
    cdef bint fits
    best[0] = 0
    with nogil:
        for k in range(m):
            fits = True
            off = 0
            for v in range(V):
                if P[k, v] > pa[v]:
                    fits = False
                off += P[k, v] * ps[v]
            if not fits:
                continue
            val = vals[k]
            for v in range(V):
                pc[v] = P[k, v]
            idx = off
            while True:
                src = pbest[idx - off]
                if src != NEG:
                    cand = src + val
                    if cand > pbest[idx]:
                        pbest[idx] = cand
                        pch[idx] = <int32_t>k
                # odometer over the sub-box [part, alpha], last coordinate fastest
                v = V - 1
                while v >= 0:
                    pc[v] += 1
                    idx += ps[v]
                    if pc[v] <= pa[v]:
                        break
                    idx -= (pc[v] - P[k, v]) * ps[v]
                    pc[v] = P[k, v]
                    v -= 1
                if v < 0:
                    break
    return best, choice
