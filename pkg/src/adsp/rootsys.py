"""Star-shaped quivers and their Kac-Moody root systems.

Vertices are numbered in a fixed total order: the centre is 0, then arm 1
outward, then arm 2, and so on.  Dimension vectors and weights are plain
tuples in that order (ints and Fractions respectively).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Sequence

from . import kernels
from .classdata import XiSequence
from .errors import InputError, ResourceError
from .exactlinalg import format_rational, parse_rational

BOX_CAP = 5_000_000

DimVector = tuple  # of int
Weight = tuple  # of Fraction


class RootClass(str, enum.Enum):
    NOT_ROOT = "not_root"
    REAL = "real"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class StarQuiver:
    arm_lengths: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arm_lengths", tuple(int(x) for x in self.arm_lengths))
        if any(x < 0 for x in self.arm_lengths):
            raise InputError("arm lengths must be non-negative")

    @property
    def k(self) -> int:
        return len(self.arm_lengths)

    @cached_property
    def size(self) -> int:
        return 1 + sum(self.arm_lengths)

    def vertex(self, i: int, j: int) -> int:
        """Index of vertex ``[i, j]`` (both 1-based, as in the usual picture)."""
        if not (1 <= i <= self.k and 1 <= j <= self.arm_lengths[i - 1]):
            raise InputError(f"no vertex [{i},{j}] on arms {self.arm_lengths}")
        return 1 + sum(self.arm_lengths[: i - 1]) + (j - 1)

    @cached_property
    def labels(self) -> tuple[tuple[int, int] | None, ...]:
        out: list[tuple[int, int] | None] = [None]
        for i, length in enumerate(self.arm_lengths, start=1):
            out.extend((i, j) for j in range(1, length + 1))
        return tuple(out)

    def label(self, v: int) -> str:
        lab = self.labels[v]
        return "0" if lab is None else f"[{lab[0]},{lab[1]}]"

    def parse_vertex(self, text) -> int:
        if text in (0, "0"):
            return 0
        if isinstance(text, (list, tuple)) and len(text) == 2:
            return self.vertex(int(text[0]), int(text[1]))
        s = str(text).strip().strip("[]")
        try:
            i, j = (int(x) for x in s.split(","))
        except ValueError as exc:
            raise InputError(f"bad vertex {text!r}") from exc
        return self.vertex(i, j)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Arrows ``(tail, head)`` oriented towards the centre."""
        out = []
        v = 1
        for length in self.arm_lengths:
            prev = 0
            for _ in range(length):
                out.append((v, prev))
                prev = v
                v += 1
        return tuple(out)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.size)]
        for t, h in self.edges:
            nb[t].append(h)
            nb[h].append(t)
        return tuple(tuple(sorted(x)) for x in nb)

    def cartan_matrix(self) -> list[list[int]]:
        C = [[0] * self.size for _ in range(self.size)]
        for v in range(self.size):
            C[v][v] = 2
            for w in self.neighbors[v]:
                C[v][w] = -1
        return C

    def coordinate(self, v: int) -> DimVector:
        return tuple(1 if w == v else 0 for w in range(self.size))

    # JSON shape: {"center": x, "arms": [[...], ...]}
    def vector_to_json(self, vec: Sequence, rational: bool = False) -> dict:
        fmt = format_rational if rational else int
        arms, v = [], 1
        for length in self.arm_lengths:
            arms.append([fmt(vec[v + j]) for j in range(length)])
            v += length
        return {"center": fmt(vec[0]), "arms": arms}

    def vector_from_json(self, data, rational: bool = False) -> tuple:
        conv = parse_rational if rational else int
        try:
            arms = data["arms"]
            if [len(a) for a in arms] != list(self.arm_lengths):
                raise InputError("arm lengths of vector do not match the quiver")
            return tuple([conv(data["center"])] + [conv(x) for a in arms for x in a])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed vector {data!r}") from exc


def _check_length(q: StarQuiver, vec: Sequence) -> None:
    if len(vec) != q.size:
        raise InputError(f"vector of length {len(vec)} on a quiver with {q.size} vertices")


def build_instance(xs: Sequence[XiSequence]) -> tuple[StarQuiver, DimVector, Weight]:
    if not xs:
        raise InputError("need at least one class")
    n = xs[0].n
    if any(x.n != n for x in xs):
        raise InputError("classes have different sizes")
    arms, alpha, lam = [], [n], [-sum((x.xi[0] for x in xs), Fraction(0))]
    for x in xs:
        # keep vertices [i,1..L] where r_{i,L} > 0; the rest would carry zero
        length = sum(1 for r in x.ranks[1:x.d] if r > 0)
        arms.append(length)
        for j in range(1, length + 1):
            alpha.append(x.ranks[j])
            lam.append(x.xi[j - 1] - x.xi[j])
    return StarQuiver(tuple(arms)), tuple(alpha), tuple(lam)


def dot(lam: Sequence, beta: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(lam, beta) if b), Fraction(0))


def cartan_apply(q: StarQuiver, beta: Sequence[int]) -> tuple[int, ...]:
    _check_length(q, beta)
    return tuple(2 * beta[v] - sum(beta[w] for w in q.neighbors[v]) for v in range(q.size))


def defect_p(q: StarQuiver, beta: Sequence[int]) -> int:
    quad = sum(b * c for b, c in zip(beta, cartan_apply(q, beta)))
    assert quad % 2 == 0
    return 1 - quad // 2


def reflect(q: StarQuiver, v: int, beta: Sequence[int]) -> DimVector:
    c = cartan_apply(q, beta)[v]
    return tuple(b - c if w == v else b for w, b in enumerate(beta))


def coreflect(q: StarQuiver, v: int, lam: Sequence) -> Weight:
    _check_length(q, lam)
    lv = Fraction(lam[v])
    nb = set(q.neighbors[v])
    return tuple(-lv if w == v else (Fraction(x) + lv if w in nb else Fraction(x)) for w, x in enumerate(lam))


def support_connected(q: StarQuiver, beta: Sequence[int]) -> bool:
    supp = [v for v, b in enumerate(beta) if b]
    if not supp:
        return False
    seen = {supp[0]}
    queue = deque([supp[0]])
    while queue:
        v = queue.popleft()
        for w in q.neighbors[v]:
            if beta[w] and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(supp)


def fundamental_region(q: StarQuiver, beta: Sequence[int]) -> bool:
    _check_length(q, beta)
    if any(b < 0 for b in beta) or not any(beta):
        return False
    return support_connected(q, beta) and all(c <= 0 for c in cartan_apply(q, beta))


def is_coordinate(beta: Sequence[int]) -> bool:
    return sum(beta) == 1 and all(b >= 0 for b in beta)


def classify_root(q: StarQuiver, beta: Sequence[int]) -> RootClass:
    """Decide whether a non-negative vector is a real root, an imaginary root,
    or not a root, by reflecting down to a coordinate vector or the
    fundamental region."""
    _check_length(q, beta)
    if any(b < 0 for b in beta):
        raise InputError("classify_root expects a non-negative vector")
    b = list(beta)
    while True:
        if not any(b):
            return RootClass.NOT_ROOT
        if is_coordinate(b):
            return RootClass.REAL
        if fundamental_region(q, b):
            return RootClass.IMAGINARY
        c = cartan_apply(q, b)
        v = next((v for v in range(q.size) if b[v] > 0 and c[v] > 0), None)
        if v is None:
            return RootClass.NOT_ROOT
        b[v] -= c[v]
        if b[v] < 0:
            return RootClass.NOT_ROOT


def box_size(alpha: Sequence[int]) -> int:
    return prod(a + 1 for a in alpha)


def box_strides(alpha: Sequence[int]) -> list[int]:
    """Mixed-radix strides, centre coordinate outermost (largest stride)."""
    strides = [1] * len(alpha)
    for v in range(len(alpha) - 2, -1, -1):
        strides[v] = strides[v + 1] * (alpha[v + 1] + 1)
    return strides


def box_decode(alpha: Sequence[int], idx: int) -> DimVector:
    out = []
    for a in reversed(alpha):
        idx, r = divmod(idx, a + 1)
        out.append(r)
    return tuple(reversed(out))


def box_encode(alpha: Sequence[int], beta: Sequence[int]) -> int:
    return sum(b * s for b, s in zip(beta, box_strides(alpha)))


def check_box(alpha: Sequence[int], cap: int) -> None:
    size = box_size(alpha)
    if size > cap:
        raise ResourceError(f"lattice box of {size} points exceeds the cap of {cap}")


def positive_roots_below(q: StarQuiver, alpha: Sequence[int], box_cap: int = BOX_CAP) -> list[tuple[DimVector, RootClass]]:
    """Every positive root ``beta <= alpha`` with its class, in box order."""
    _check_length(q, alpha)
    if any(a < 0 for a in alpha):
        raise InputError("alpha must be non-negative")
    check_box(alpha, box_cap)
    codes = kernels.classify_box(alpha, q.edges)
    found = kernels.nonzero(codes)
    classes = {1: RootClass.REAL, 2: RootClass.IMAGINARY}
    return [(box_decode(alpha, int(i)), classes[int(codes[i])]) for i in found]


def enumerate_Rlambda(
    q: StarQuiver, alpha: Sequence[int], lam: Sequence, box_cap: int = BOX_CAP
) -> list[DimVector]:
    """Positive roots ``0 < beta <= alpha`` with ``lam . beta == 0``, in box order."""
    _check_length(q, lam)
    return [beta for beta, _ in positive_roots_below(q, alpha, box_cap) if dot(lam, beta) == 0]
