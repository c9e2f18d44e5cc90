"""Membership deciders for the set of dimension vectors that carry simple
representations, with certificates.

``alpha`` is a member when it is a positive root with ``lam . alpha == 0``
whose defect ``p`` strictly beats the total defect of every decomposition
into two or more positive roots orthogonal to ``lam``.  :func:`decide` is
the general lattice dynamic program; the other deciders cover special
regimes or act as oracles.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from . import kernels
from .classdata import ClassTuple, is_generic, normalize
from .errors import InputError, InternalError
from .rootsys import (
    BOX_CAP,
    RootClass,
    StarQuiver,
    box_encode,
    box_strides,
    build_instance,
    cartan_apply,
    classify_root,
    defect_p,
    dot,
    enumerate_Rlambda,
    fundamental_region,
    is_coordinate,
    reflect,
    support_connected,
)
from .exactlinalg import format_rational

BRUTEFORCE_BOUND = 10


class SolutionCount(str, enum.Enum):
    NONE = "none"
    UNIQUE = "unique"
    INFINITE = "infinite"


@dataclass(frozen=True)
class TraceObstruction:
    pairing: Fraction

    def to_json(self, q):
        return {"kind": "trace_obstruction", "lambda_dot_alpha": format_rational(self.pairing)}


@dataclass(frozen=True)
class NotRoot:
    def to_json(self, q):
        return {"kind": "not_root"}


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[tuple[int, ...], ...]
    sum_p: int
    p_alpha: int

    def to_json(self, q):
        return {
            "kind": "decomposition",
            "parts": [q.vector_to_json(b) for b in self.parts],
            "sum_p": self.sum_p,
            "p_alpha": self.p_alpha,
        }


@dataclass(frozen=True)
class MemberOk:
    p_alpha: int
    max_sub_defect: int | None = None

    def to_json(self, q):
        return {"kind": "member_ok", "p_alpha": self.p_alpha, "max_sub_defect": self.max_sub_defect}


Certificate = Union[TraceObstruction, NotRoot, Decomposition, MemberOk]


@dataclass(frozen=True)
class Decision:
    member: bool
    root_class: RootClass
    solution_count: SolutionCount
    certificate: Certificate = field(compare=False)

    def __post_init__(self):
        if self.member != (self.solution_count is not SolutionCount.NONE):
            raise InternalError("member flag disagrees with solution count")
        if self.member:
            expected = SolutionCount.UNIQUE if self.root_class is RootClass.REAL else SolutionCount.INFINITE
            if self.solution_count is not expected:
                raise InternalError("solution count disagrees with root class")

    def to_json(self, q: StarQuiver) -> dict:
        return {
            "member": self.member,
            "root_class": self.root_class.value,
            "solution_count": self.solution_count.value,
            "certificate": self.certificate.to_json(q),
        }


def _member(rc: RootClass, cert: Certificate) -> Decision:
    count = SolutionCount.UNIQUE if rc is RootClass.REAL else SolutionCount.INFINITE
    return Decision(True, rc, count, cert)


def _non_member(rc: RootClass, cert: Certificate) -> Decision:
    return Decision(False, rc, SolutionCount.NONE, cert)


def _check_alpha(q: StarQuiver, alpha: Sequence[int], lam: Sequence | None = None) -> None:
    if len(alpha) != q.size or (lam is not None and len(lam) != q.size):
        raise InputError("vector length does not match the quiver")
    if any(a < 0 for a in alpha):
        raise InputError("alpha must be non-negative")
    if alpha[0] <= 0:
        raise InputError("alpha must be positive at the centre")


def check_certificate(q: StarQuiver, alpha, lam, decision: Decision) -> None:
    """Structural validation of a decision; raises :class:`InternalError`."""
    cert = decision.certificate
    if isinstance(cert, TraceObstruction):
        if decision.member or cert.pairing == 0 or cert.pairing != dot(lam, alpha):
            raise InternalError("bad trace obstruction")
    elif isinstance(cert, NotRoot):
        if decision.member or classify_root(q, alpha) is not RootClass.NOT_ROOT:
            raise InternalError("bad not-root certificate")
    elif isinstance(cert, Decomposition):
        parts = cert.parts
        if decision.member or len(parts) < 2:
            raise InternalError("decomposition needs two or more parts")
        if tuple(map(sum, zip(*parts))) != tuple(alpha):
            raise InternalError("decomposition parts do not sum to alpha")
        for b in parts:
            if dot(lam, b) != 0 or classify_root(q, b) is RootClass.NOT_ROOT:
                raise InternalError(f"part {b} is not a root orthogonal to the weight")
        if sum(defect_p(q, b) for b in parts) != cert.sum_p or cert.p_alpha != defect_p(q, alpha):
            raise InternalError("decomposition defects misreported")
        if cert.sum_p < cert.p_alpha:
            raise InternalError("decomposition does not violate the defect inequality")
    elif isinstance(cert, MemberOk):
        if not decision.member or cert.p_alpha != defect_p(q, alpha):
            raise InternalError("bad membership certificate")
        if cert.max_sub_defect is not None and cert.max_sub_defect >= cert.p_alpha:
            raise InternalError("sub-decomposition defect too large for membership")
    else:
        raise InternalError(f"unknown certificate {cert!r}")


def _preliminaries(q, alpha, lam) -> tuple[RootClass, Decision | None]:
    rc = classify_root(q, alpha)
    pairing = dot(lam, alpha)
    if pairing != 0:
        return rc, _non_member(rc, TraceObstruction(pairing))
    if rc is RootClass.NOT_ROOT:
        return rc, _non_member(rc, NotRoot())
    return rc, None


def decide(q: StarQuiver, alpha: Sequence[int], lam: Sequence, box_cap: int = BOX_CAP) -> Decision:
    _check_alpha(q, alpha, lam)
    alpha = tuple(alpha)
    rc, early = _preliminaries(q, alpha, lam)
    if early is not None:
        return early
    p_alpha = defect_p(q, alpha)
    parts = [b for b in enumerate_Rlambda(q, alpha, lam, box_cap) if b != alpha]
    if not parts:
        return _member(rc, MemberOk(p_alpha, None))
    values = [defect_p(q, b) for b in parts]
    best, choice = kernels.knapsack(alpha, parts, values)
    top = box_encode(alpha, alpha)
    best2 = int(best[top])
    if best2 == kernels.NEG:
        return _member(rc, MemberOk(p_alpha, None))
    if p_alpha > best2:
        return _member(rc, MemberOk(p_alpha, best2))
    strides = box_strides(alpha)
    chosen = []
    g = top
    while g:
        k = int(choice[g])
        chosen.append(parts[k])
        g -= sum(b * s for b, s in zip(parts[k], strides))
    decision = _non_member(rc, Decomposition(tuple(chosen), best2, p_alpha))
    check_certificate(q, alpha, lam, decision)
    return decision


def decide_bruteforce(q: StarQuiver, alpha: Sequence[int], lam: Sequence, bound: int = BRUTEFORCE_BOUND) -> Decision:
    """Same contract as :func:`decide`, by listing every multiset decomposition."""
    _check_alpha(q, alpha, lam)
    if sum(alpha) > bound:
        raise InputError(f"brute force limited to total dimension {bound}")
    alpha = tuple(alpha)
    rc, early = _preliminaries(q, alpha, lam)
    if early is not None:
        return early
    p_alpha = defect_p(q, alpha)
    roots = [
        b
        for b in itertools.product(*(range(a + 1) for a in alpha))
        if any(b) and b != alpha and dot(lam, b) == 0 and classify_root(q, b) is not RootClass.NOT_ROOT
    ]
    roots.sort(reverse=True)
    defects = [defect_p(q, b) for b in roots]
    best: list = [None, ()]

    def extend(rest, start, acc, total):
        if not any(rest):
            if best[0] is None or total > best[0]:
                best[0], best[1] = total, tuple(acc)
            return
        for k in range(start, len(roots)):
            b = roots[k]
            if all(x <= y for x, y in zip(b, rest)):
                acc.append(b)
                extend(tuple(y - x for x, y in zip(b, rest)), k, acc, total + defects[k])
                acc.pop()

    extend(alpha, 0, [], 0)
    if best[0] is None:
        return _member(rc, MemberOk(p_alpha, None))
    if p_alpha > best[0]:
        return _member(rc, MemberOk(p_alpha, best[0]))
    return _non_member(rc, Decomposition(best[1], best[0], p_alpha))


def is_rigid(q: StarQuiver, alpha: Sequence[int], lam: Sequence, box_cap: int = BOX_CAP) -> bool:
    _check_alpha(q, alpha, lam)
    if dot(lam, alpha) != 0 or classify_root(q, alpha) is not RootClass.REAL:
        return False
    return decide(q, alpha, lam, box_cap).member


def _support_null(q: StarQuiver, vec: Sequence[int]) -> bool:
    c = cartan_apply(q, vec)
    return all(c[v] == 0 for v in range(q.size) if vec[v])


def _vec_gcd(vec: Sequence[int]) -> int:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g


def _special_type(q: StarQuiver, alpha: tuple[int, ...]) -> Decomposition | None:
    """Decomposition witnessing special type (I) or (II), else ``None``.

    Assumes ``alpha`` lies in the fundamental region.
    """
    p_alpha = defect_p(q, alpha)
    if _support_null(q, alpha):
        m = _vec_gcd(alpha)
        if m >= 2:
            delta = tuple(a // m for a in alpha)
            return Decomposition((delta,) * m, m * defect_p(q, delta), p_alpha)
        return None
    for w in range(q.size):
        if alpha[w] != 1:
            continue
        inside = [u for u in q.neighbors[w] if alpha[u]]
        if len(inside) != 1:
            continue
        rest = tuple(0 if v == w else a for v, a in enumerate(alpha))
        if not support_connected(q, rest) or not _support_null(q, rest):
            continue
        m = _vec_gcd(rest)
        delta = tuple(a // m for a in rest)
        if m >= 2 and delta[inside[0]] == 1:
            first = tuple(d + (1 if v == w else 0) for v, d in enumerate(delta))
            parts = (first,) + (delta,) * (m - 1)
            return Decomposition(parts, sum(defect_p(q, b) for b in parts), p_alpha)
    return None


def classify_nilpotent(q: StarQuiver, alpha: Sequence[int], lam: Sequence | None = None) -> Decision:
    """Decider for the zero weight (nilpotent classes, up to scalar shifts).

    Members are the coordinate vectors and the fundamental-region vectors
    that are not of special type (I) (a proper multiple of the null root of
    an extended Dynkin support) or (II) (such a multiple plus a pendant 1
    attached where the null root is 1).  Needs no lattice enumeration.
    """
    _check_alpha(q, alpha, lam)
    if lam is not None and any(lam):
        raise InputError("nilpotent decider needs the zero weight")
    alpha = tuple(alpha)
    if is_coordinate(alpha):
        return _member(RootClass.REAL, MemberOk(0, None))
    rc = classify_root(q, alpha)
    if fundamental_region(q, alpha):
        witness = _special_type(q, alpha)
        if witness is not None:
            return _non_member(rc, witness)
        return _member(rc, MemberOk(defect_p(q, alpha), None))
    if rc is RootClass.NOT_ROOT:
        return _non_member(rc, NotRoot())
    # a root outside the fundamental region: alpha = s_v(alpha) + c*eps_v with p unchanged
    c = cartan_apply(q, alpha)
    v = next(v for v in range(q.size) if alpha[v] > 0 and c[v] > 0)
    parts = (reflect(q, v, alpha),) + (q.coordinate(v),) * c[v]
    return _non_member(rc, Decomposition(parts, sum(defect_p(q, b) for b in parts), defect_p(q, alpha)))


def decide_generic(q: StarQuiver, alpha: Sequence[int], lam: Sequence, t: ClassTuple) -> Decision:
    """With generic eigenvalues, membership is just "alpha is a root"."""
    _check_alpha(q, alpha, lam)
    if not is_generic(t):
        raise InputError("eigenvalues are not generic")
    if build_instance([normalize(c) for c in t]) != (q, tuple(alpha), tuple(Fraction(x) for x in lam)):
        raise InputError("instance was not built from this class tuple")
    rc = classify_root(q, alpha)
    if rc is RootClass.NOT_ROOT:
        return _non_member(rc, NotRoot())
    return _member(rc, MemberOk(defect_p(q, alpha), None))
