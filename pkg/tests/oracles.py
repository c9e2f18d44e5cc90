"""Independent reference computations used to freeze expected values.

Nothing here calls the code under test except for plain data types.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy


def star_cartan(arm_lengths):
    size = 1 + sum(arm_lengths)
    C = [[0] * size for _ in range(size)]
    for v in range(size):
        C[v][v] = 2
    v = 1
    for length in arm_lengths:
        prev = 0
        for _ in range(length):
            C[v][prev] = C[prev][v] = -1
            prev = v
            v += 1
    return C


def _apply(C, b):
    return [sum(c * x for c, x in zip(row, b)) for row in C]


def _connected(C, b):
    supp = [v for v, x in enumerate(b) if x]
    if not supp:
        return False
    seen, todo = {supp[0]}, [supp[0]]
    while todo:
        v = todo.pop()
        for w in supp:
            if C[v][w] == -1 and w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(supp)


def roots_by_orbit(arm_lengths, bound):
    """Positive roots ``<= bound`` by closing simple roots and fundamental-region
    vectors under upward reflections.  Maps root -> "real" | "imaginary"."""
    C = star_cartan(arm_lengths)
    size = len(C)
    found = {}
    todo = []
    for v in range(size):
        if bound[v] >= 1:
            e = tuple(1 if w == v else 0 for w in range(size))
            found[e] = "real"
            todo.append(e)
    for b in itertools.product(*(range(x + 1) for x in bound)):
        if any(b) and _connected(C, b) and all(c <= 0 for c in _apply(C, b)):
            found[b] = "imaginary"
            todo.append(b)
    while todo:
        b = todo.pop()
        cb = _apply(C, b)
        for v in range(size):
            if cb[v] < 0:
                up = list(b)
                up[v] -= cb[v]
                up = tuple(up)
                if all(x <= y for x, y in zip(up, bound)) and up not in found:
                    found[up] = found[b]
                    todo.append(up)
    return found


def generic_by_enumeration(classes):
    """``classes``: list of [(eigenvalue, multiplicity)], trace already zero."""
    n = sum(m for _, m in classes[0])
    per = []
    for spectrum in classes:
        options = {}
        for pick in itertools.product(*(range(m + 1) for _, m in spectrum)):
            options.setdefault(sum(pick), []).append(sum(Fraction(v) * p for (v, _), p in zip(spectrum, pick)))
        per.append(options)
    for c in range(1, n):
        for combo in itertools.product(*(opts.get(c, []) for opts in per)):
            if sum(combo) == 0:
                return False
    return True


def sympy_rank(rows):
    return sympy.Matrix(rows).rank() if rows and rows[0] else 0


def word_span_dimension(mats, n, max_len=None):
    """Dimension of the span of all words in ``mats`` of length <= max_len (default n*n)."""
    gens = [sympy.Matrix(m) for m in mats]
    max_len = n * n if max_len is None else max_len
    words = [sympy.eye(n)]
    layer = [sympy.eye(n)]
    for _ in range(max_len):
        layer = [g * w for w in layer for g in gens]
        words.extend(layer)
        if len(words) > 4000:
            break
    M = sympy.Matrix([list(w) for w in words])
    return M.rank()
