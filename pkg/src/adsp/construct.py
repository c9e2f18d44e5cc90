"""Matrix tuples versus representations of the deformed preprojective algebra.

A representation lives on the star quiver with every arrow ``a_{i,j}``
pointing from ``[i,j]`` towards the centre, plus the reverse arrows
``a*_{i,j}``.  Arrow ``e`` of ``StarQuiver.edges`` has tail vertex ``e + 1``.
At each vertex the relation is

    sum_{head(a)=v} a a*  -  sum_{tail(a)=v} a* a  =  lam_v * 1.

Reflection functors move between weights; running them backwards from a
one-dimensional representation builds the rigid solutions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classdata import ClassTuple, XiSequence, normalize
from .errors import InputError, InternalError
from .exactlinalg import (
    Matrix,
    algebra_dimension,
    column_space,
    determinant,
    hstack,
    kernel_basis,
    kernel_matrix,
    mat_rank,
    solve,
    vstack,
)
from .rootsys import (
    BOX_CAP,
    StarQuiver,
    build_instance,
    cartan_apply,
    coreflect,
    is_coordinate,
    reflect,
)
from .sigma import is_rigid


@dataclass(frozen=True)
class QuiverRep:
    quiver: StarQuiver
    dims: tuple[int, ...]
    a: tuple[Matrix, ...]
    astar: tuple[Matrix, ...]

    def __post_init__(self):
        q = self.quiver
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "astar", tuple(self.astar))
        if len(self.dims) != q.size or any(d < 0 for d in self.dims):
            raise InputError("dimension vector does not fit the quiver")
        if len(self.a) != len(q.edges) or len(self.astar) != len(q.edges):
            raise InputError("one matrix per arrow and reverse arrow is required")
        for e, (t, h) in enumerate(q.edges):
            if self.a[e].shape != (self.dims[h], self.dims[t]):
                raise InputError(f"a{self.arrow_label(e)} has shape {self.a[e].shape}")
            if self.astar[e].shape != (self.dims[t], self.dims[h]):
                raise InputError(f"astar{self.arrow_label(e)} has shape {self.astar[e].shape}")

    def arrow_label(self, e: int) -> str:
        i, j = self.quiver.labels[self.quiver.edges[e][0]]
        return f"[{i}][{j}]"

    @classmethod
    def zero(cls, q: StarQuiver, dims: Sequence[int]) -> QuiverRep:
        a = [Matrix.zeros(dims[h], dims[t]) for t, h in q.edges]
        astar = [Matrix.zeros(dims[t], dims[h]) for t, h in q.edges]
        return cls(q, tuple(dims), tuple(a), tuple(astar))

    def to_json(self) -> dict:
        out = {"arm_lengths": list(self.quiver.arm_lengths), "dims": self.quiver.vector_to_json(self.dims)}
        for e in range(len(self.quiver.edges)):
            out["a" + self.arrow_label(e)] = self.a[e].to_json()
            out["astar" + self.arrow_label(e)] = self.astar[e].to_json()
        return out

    @classmethod
    def from_json(cls, data) -> QuiverRep:
        try:
            q = StarQuiver(tuple(data["arm_lengths"]))
            dims = q.vector_from_json(data["dims"])
            a, astar = [], []
            for t, h in q.edges:
                i, j = q.labels[t]
                a.append(Matrix.from_json(data[f"a[{i}][{j}]"], dims[h], dims[t]))
                astar.append(Matrix.from_json(data[f"astar[{i}][{j}]"], dims[t], dims[h]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed representation: {exc}") from exc
        return cls(q, dims, tuple(a), tuple(astar))


@dataclass(frozen=True)
class MatrixSolution:
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))

    def to_json(self) -> dict:
        return {"matrices": [m.to_json() for m in self.matrices]}

    @classmethod
    def from_json(cls, data) -> MatrixSolution:
        if not isinstance(data, dict) or not isinstance(data.get("matrices"), list):
            raise InputError('solution must be an object with a "matrices" list')
        mats = []
        for m in data["matrices"]:
            M = Matrix.from_json(m)
            if not M.is_square():
                raise InputError("solution matrices must be square")
            mats.append(M)
        return cls(tuple(mats))


@dataclass(frozen=True)
class VerifyReport:
    classes_ok: bool
    sum_zero: bool
    irreducible: bool

    @property
    def ok(self) -> bool:
        return self.classes_ok and self.sum_zero and self.irreducible

    def to_json(self) -> dict:
        return {"classes_ok": self.classes_ok, "sum_zero": self.sum_zero, "irreducible": self.irreducible}


def relation_defects(rep: QuiverRep, lam: Sequence) -> list[Matrix]:
    """Per vertex, the relation's left side minus ``lam_v * 1``."""
    q = rep.quiver
    if len(lam) != q.size:
        raise InputError("weight does not fit the quiver")
    out = []
    for v in range(q.size):
        acc = Matrix.scalar(rep.dims[v], -Fraction(lam[v]))
        for e, (t, h) in enumerate(q.edges):
            if h == v:
                acc = acc + rep.a[e] @ rep.astar[e]
            elif t == v:
                acc = acc - rep.astar[e] @ rep.a[e]
        out.append(acc)
    return out


def check_relations(rep: QuiverRep, lam: Sequence) -> bool:
    return all(m.is_zero() for m in relation_defects(rep, lam))


def _total(mats: Sequence[Matrix], n: int) -> Matrix:
    acc = Matrix.zeros(n, n)
    for m in mats:
        acc = acc + m
    return acc


def _check_solution_shape(mats: Sequence[Matrix], k: int, n: int) -> None:
    if len(mats) != k:
        raise InputError(f"expected {k} matrices, got {len(mats)}")
    for m in mats:
        if m.shape != (n, n):
            raise InputError(f"expected {n}x{n} matrices, got {m.rows}x{m.cols}")


def partial_product_ranks(A: Matrix, xi: Sequence[Fraction]) -> list[int]:
    """Ranks of prod_{l<=j} (A - xi_l) for j = 0..len(xi)."""
    ranks = [A.rows]
    P = Matrix.identity(A.rows)
    for x in xi:
        P = P @ A.shift(x)
        ranks.append(mat_rank(P))
    return ranks


def matrices_to_rep(sol: MatrixSolution, xs: Sequence[XiSequence]) -> QuiverRep:
    q, alpha, lam = build_instance(xs)
    n = alpha[0]
    _check_solution_shape(sol.matrices, len(xs), n)
    if not _total(sol.matrices, n).is_zero():
        raise InputError("matrices do not sum to zero")
    a: list[Matrix] = []
    astar: list[Matrix] = []
    for i, (A, x) in enumerate(zip(sol.matrices, xs), start=1):
        basis = Matrix.identity(n)
        length = q.arm_lengths[i - 1]
        for j in range(1, length + 2):
            image = A.shift(x.xi[j - 1]) @ basis
            if j == length + 1:
                if not image.is_zero():
                    raise InputError(f"matrix {i} is not annihilated by its eigenvalue sequence")
                break
            new_basis = column_space(image)
            if new_basis.cols != x.ranks[j]:
                raise InputError(f"matrix {i}: partial product {j} has rank {new_basis.cols}, expected {x.ranks[j]}")
            a.append(solve(basis, new_basis))
            astar.append(solve(new_basis, image))
            basis = new_basis
    rep = QuiverRep(q, alpha, tuple(a), tuple(astar))
    if not check_relations(rep, lam):
        raise InternalError("representation built from a solution violates the relations")
    return rep


def rep_to_matrices(rep: QuiverRep, xs: Sequence[XiSequence]) -> MatrixSolution:
    q, alpha, lam = build_instance(xs)
    if rep.quiver != q or rep.dims != alpha:
        raise InputError("representation does not match the class data")
    if not check_relations(rep, lam):
        raise InputError("representation violates the preprojective relations")
    for e in range(len(q.edges)):
        if mat_rank(rep.a[e]) != rep.a[e].cols:
            raise InputError(f"arrow a{rep.arrow_label(e)} is not injective")
        if mat_rank(rep.astar[e]) != rep.astar[e].rows:
            raise InputError(f"arrow astar{rep.arrow_label(e)} is not surjective")
    n = alpha[0]
    mats = []
    for i, x in enumerate(xs, start=1):
        if q.arm_lengths[i - 1] == 0:
            mats.append(Matrix.scalar(n, x.xi[0]))
        else:
            e = q.vertex(i, 1) - 1
            mats.append((rep.a[e] @ rep.astar[e]).shift(-x.xi[0]))
    sol = MatrixSolution(tuple(mats))
    for A, x in zip(mats, xs):
        if partial_product_ranks(A, x.xi) != list(x.ranks):
            raise InternalError("reconstructed matrix lies in the wrong conjugacy class")
    if not _total(mats, n).is_zero():
        raise InternalError("reconstructed matrices do not sum to zero")
    return sol


def reflection_functor(rep: QuiverRep, v: int, lam: Sequence) -> QuiverRep:
    """Reflect ``rep`` (a representation for weight ``lam``) at vertex ``v``.

    The result is a representation for ``coreflect(v, lam)`` with dimension
    vector ``reflect(v, dims)``.
    """
    q = rep.quiver
    lv = Fraction(lam[v])
    if lv == 0:
        raise InputError(f"cannot reflect at {q.label(v)}: weight vanishes there")
    if reflect(q, v, rep.dims)[v] < 0:
        raise InputError(f"reflecting at {q.label(v)} would give a negative dimension")
    if not check_relations(rep, lam):
        raise InputError("input does not satisfy the relations for this weight")
    incident = [(e, t, h) for e, (t, h) in enumerate(q.edges) if v in (t, h)]
    dv = rep.dims[v]
    mu_blocks, nu_blocks, sizes = [], [], []
    for e, t, h in incident:
        if h == v:
            mu_blocks.append(rep.a[e])
            nu_blocks.append(rep.astar[e])
            sizes.append(rep.dims[t])
        else:
            mu_blocks.append(-rep.astar[e])
            nu_blocks.append(rep.a[e])
            sizes.append(rep.dims[h])
    m = sum(sizes)
    mu = hstack(mu_blocks, dv)
    nu = vstack(nu_blocks, dv)
    if mu @ nu != Matrix.scalar(dv, lv):
        raise InternalError("sign convention broken: mu nu != lam_v")
    K, free = kernel_matrix(mu)
    proj = Matrix.identity(m) - (nu @ mu) * (1 / lv)
    new_mu = proj.select_rows(free) * (-lv)
    new_nu = K
    d_new = K.cols
    dims = tuple(d_new if w == v else d for w, d in enumerate(rep.dims))
    if dims != reflect(q, v, rep.dims):
        raise InternalError("reflected dimension vector mismatch")
    a, astar = list(rep.a), list(rep.astar)
    offset = 0
    for (e, t, h), size in zip(incident, sizes):
        mu_w = new_mu.block(0, d_new, offset, offset + size)
        nu_w = new_nu.block(offset, offset + size, 0, d_new)
        if h == v:
            a[e], astar[e] = mu_w, nu_w
        else:
            a[e], astar[e] = nu_w, -mu_w
        offset += size
    out = QuiverRep(q, dims, tuple(a), tuple(astar))
    if not check_relations(out, coreflect(q, v, lam)):
        raise InternalError("reflected representation violates the relations")
    return out


def rep_homomorphisms(r1: QuiverRep, r2: QuiverRep) -> list[tuple[Matrix, ...]]:
    """Basis of the space of homomorphisms r1 -> r2 (one matrix per vertex)."""
    q = r1.quiver
    if r2.quiver != q:
        raise InputError("representations live on different quivers")
    offsets, total = [], 0
    for v in range(q.size):
        offsets.append(total)
        total += r2.dims[v] * r1.dims[v]

    def var(v, r, c):
        return offsets[v] + r * r1.dims[v] + c

    eqs = []

    def intertwine(src, dst, M1, M2):
        # X_dst M1 = M2 X_src with M1: r1[src] -> r1[dst], M2: r2[src] -> r2[dst]
        for r in range(r2.dims[dst]):
            for c in range(r1.dims[src]):
                row = [Fraction(0)] * total
                for s in range(r1.dims[dst]):
                    row[var(dst, r, s)] += M1[s, c]
                for s in range(r2.dims[src]):
                    row[var(src, s, c)] -= M2[r, s]
                eqs.append(row)

    for e, (t, h) in enumerate(q.edges):
        intertwine(t, h, r1.a[e], r2.a[e])
        intertwine(h, t, r1.astar[e], r2.astar[e])
    if eqs:
        basis = kernel_basis(Matrix.from_rows(eqs, total))
    else:
        basis = [tuple(Fraction(int(k == p)) for k in range(total)) for p in range(total)]
    return [
        tuple(Matrix(r2.dims[v], r1.dims[v], vec[offsets[v]:offsets[v] + r2.dims[v] * r1.dims[v]]) for v in range(q.size))
        for vec in basis
    ]


def rep_isomorphism(r1: QuiverRep, r2: QuiverRep, samples: int = 32, seed: int = 0) -> tuple[Matrix, ...] | None:
    """An isomorphism r1 -> r2 found among basis elements and random combinations, or ``None``."""
    if r1.dims != r2.dims:
        return None
    basis = rep_homomorphisms(r1, r2)
    if not basis:
        return None
    q = r1.quiver
    rng = random.Random(seed)
    candidates = itertools.chain(
        basis, ([rng.randint(-9, 9) for _ in basis] for _ in range(samples))
    )
    for cand in candidates:
        if isinstance(cand, tuple):
            X = cand
        else:
            X = tuple(
                sum((b[v] * c for b, c in zip(basis, cand)), Matrix.zeros(r1.dims[v], r1.dims[v]))
                for v in range(q.size)
            )
        if all(determinant(M) != 0 for M in X):
            return X
    return None


def admissible_vertices(q: StarQuiver, alpha: Sequence[int]) -> list[int]:
    c = cartan_apply(q, alpha)
    return [v for v in range(q.size) if alpha[v] > 0 and c[v] > 0]


def reduction_path(q: StarQuiver, alpha, lam, tie_break: str = "least") -> list[tuple[int, tuple]]:
    """Reflections taking a real root down to a coordinate vector.

    Returns ``(vertex, weight before the step)`` pairs; ``tie_break`` picks
    the least (``"least"``) or greatest (``"greatest"``) admissible vertex.
    """
    if tie_break not in ("least", "greatest"):
        raise InputError(f"unknown tie-break {tie_break!r}")
    path = []
    alpha, lam = tuple(alpha), tuple(Fraction(x) for x in lam)
    while not is_coordinate(alpha):
        cands = admissible_vertices(q, alpha)
        if not cands:
            raise InternalError("reduction stalled before reaching a coordinate vector")
        v = cands[0] if tie_break == "least" else cands[-1]
        if lam[v] == 0:
            raise InternalError(f"zero weight at admissible vertex {q.label(v)} of a rigid instance")
        path.append((v, lam))
        alpha, lam = reflect(q, v, alpha), coreflect(q, v, lam)
    w = alpha.index(1)
    if lam[w] != 0:
        raise InternalError("terminal coordinate vector has nonzero weight")
    return path


def verify_solution(t: ClassTuple, sol: MatrixSolution) -> VerifyReport:
    n = t.n
    _check_solution_shape(sol.matrices, t.k, n)
    classes_ok = all(
        partial_product_ranks(A, x.xi) == list(x.ranks)
        for A, x in zip(sol.matrices, (normalize(c) for c in t))
    )
    sum_zero = _total(sol.matrices, n).is_zero()
    irreducible = algebra_dimension(sol.matrices, n) == n * n
    return VerifyReport(classes_ok, sum_zero, irreducible)


def construct_rigid(t: ClassTuple, tie_break: str = "least", box_cap: int = BOX_CAP) -> MatrixSolution:
    """Build the (unique up to conjugacy) irreducible solution of a rigid instance."""
    xs = [normalize(c) for c in t]
    q, alpha, lam = build_instance(xs)
    if not is_rigid(q, alpha, lam, box_cap):
        raise InputError("instance is not rigid; no unique irreducible solution to construct")
    path = reduction_path(q, alpha, lam, tie_break)
    dims = alpha
    for v, _ in path:
        dims = reflect(q, v, dims)
    rep = QuiverRep.zero(q, dims)
    for v, before in reversed(path):
        rep = reflection_functor(rep, v, coreflect(q, v, before))
    if rep.dims != alpha:
        raise InternalError("replayed reflections did not return to alpha")
    sol = rep_to_matrices(rep, xs)
    if not verify_solution(t, sol).ok:
        raise InternalError("constructed solution failed verification")
    return sol
