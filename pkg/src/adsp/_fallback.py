"""Vectorised numpy versions of the lattice kernels.

Same signatures and bit-identical results as the compiled ``_kernels``
module; selected automatically when the extension is unavailable.
"""

from __future__ import annotations

import numpy as np

NEG = np.int64(-(2**62))
CHUNK = 1 << 16


def _cartan(size, edges):
    C = 2 * np.eye(size, dtype=np.int64)
    for t, h in edges:
        C[t, h] = C[h, t] = -1
    return C


def _classify_rows(B, C, edges):
    """Classify each row of ``B`` (modified in place): 0 none, 1 real, 2 imaginary."""
    m = B.shape[0]
    out = np.zeros(m, dtype=np.int8)
    live = np.arange(m)
    tail = np.array([t for t, _ in edges], dtype=np.int64)
    head = np.array([h for _, h in edges], dtype=np.int64)
    while live.size:
        b = B[live]
        s = b.sum(axis=1)
        zero = s == 0
        real = s == 1
        Cb = b @ C
        cand = (b > 0) & (Cb > 0)
        has = cand.any(axis=1)
        stuck = ~has & ~zero & ~real
        if stuck.any():
            bs = b[stuck] > 0
            nv = bs.sum(axis=1)
            ne = (bs[:, tail] & bs[:, head]).sum(axis=1) if len(edges) else 0
            # the support lies in a tree, so it is connected iff #V - #E == 1
            out[live[stuck]] = np.where(nv - ne == 1, 2, 0)
        out[live[real]] = 1
        move = has & ~real & ~zero
        rows = np.flatnonzero(move)
        piv = np.argmax(cand[rows], axis=1)
        newval = b[rows, piv] - Cb[rows, piv]
        idx = live[rows]
        B[idx, piv] = newval
        ok = newval >= 0
        live = idx[ok]
    return out


def classify_box(alpha, edges):
    alpha = np.asarray(alpha, dtype=np.int64)
    V = alpha.size
    C = _cartan(V, edges)
    total = int(np.prod(alpha + 1))
    out = np.empty(total, dtype=np.int8)
    shape = tuple(int(a) + 1 for a in alpha)
    for start in range(0, total, CHUNK):
        stop = min(total, start + CHUNK)
        B = np.stack(np.unravel_index(np.arange(start, stop), shape), axis=1).astype(np.int64)
        out[start:stop] = _classify_rows(B, C, edges)
    return out


def knapsack(alpha, parts, values):
    """Max total value over multisets of ``parts`` summing to each box point.

    Returns ``(best, choice)`` over the flattened box: ``best[g]`` is the
    optimum (``NEG`` when ``g`` has no decomposition, 0 at the origin) and
    ``choice[g]`` the index of a part usable for backtracking (-1 if none).
    Parts are processed in order; within a part the update is the same as a
    sequential sweep over the box in increasing index.
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    shape = tuple(int(a) + 1 for a in alpha)
    best = np.full(shape, NEG, dtype=np.int64)
    choice = np.full(shape, -1, dtype=np.int32)
    best[(0,) * len(shape)] = 0
    for k, (beta, val) in enumerate(zip(parts, values)):
        beta = [int(b) for b in beta]
        if any(b >= s for b, s in zip(beta, shape)):
            continue
        hi = tuple(slice(b, None) for b in beta)
        lo = tuple(slice(0, s - b) for s, b in zip(shape, beta))
        bh = best[hi]
        ch = choice[hi]
        val = np.int64(val)
        while True:
            src = best[lo]
            cand = np.where(src == NEG, NEG, src + val)
            better = cand > bh
            if not better.any():
                break
            bh[better] = cand[better]
            ch[better] = k
    return best.reshape(-1), choice.reshape(-1)
