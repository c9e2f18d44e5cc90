"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` throughout; nothing here ever touches
floating point.  Matrices are small immutable row-major tables, which is all
the representation-theoretic code needs (sizes stay in the tens).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Rational = Fraction


def parse_rational(value) -> Fraction:
    """Read a rational from ``"p/q"``, ``"p"`` or a JSON integer."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def format_rational(q) -> str:
    return str(Fraction(q))


class Matrix:
    """Immutable dense matrix with :class:`Fraction` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(Fraction(x) for x in entries)
        if len(entries) != rows * cols:
            raise InputError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise InputError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Matrix:
        if any(len(c) != rows for c in columns):
            raise InputError("ragged columns")
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, c) -> Matrix:
        c = Fraction(c)
        return cls(n, n, [c if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def block_diag(cls, blocks: Sequence[Matrix]) -> Matrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, m)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def select_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix(len(idx), self.cols, [x for i in idx for x in self.row(i)])

    def select_columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.rows, len(idx), [self[i, j] for i in range(self.rows) for j in idx])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        return Matrix(r1 - r0, c1 - c0, [self[i, j] for i in range(r0, r1) for j in range(c0, c1)])

    @property
    def T(self) -> Matrix:
        return Matrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # arithmetic
    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return self @ c
        c = Fraction(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return Matrix(self.rows, other.cols, out)

    def shift(self, c) -> Matrix:
        """Return ``self - c*1``."""
        if not self.is_square():
            raise InputError("shift needs a square matrix")
        c = Fraction(c)
        n = self.cols
        return Matrix(n, n, [a - c if k % (n + 1) == 0 else a for k, a in enumerate(self.entries)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # serialization
    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data, rows: int | None = None, cols: int | None = None) -> Matrix:
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise InputError("matrix must be a list of rows")
        if rows is not None and len(data) != rows:
            raise InputError(f"expected {rows} rows, got {len(data)}")
        if not data:
            return cls.zeros(0, cols or 0)
        return cls.from_rows([[parse_rational(x) for x in r] for r in data], cols)


def hstack(blocks: Sequence[Matrix], rows: int) -> Matrix:
    out = []
    for i in range(rows):
        for b in blocks:
            out.extend(b.row(i))
    return Matrix(rows, sum(b.cols for b in blocks), out)


def vstack(blocks: Sequence[Matrix], cols: int) -> Matrix:
    return Matrix(sum(b.rows for b in blocks), cols, [x for b in blocks for x in b.entries])


def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form by pivoted Gaussian elimination.

    Returns the nonzero rows and the pivot column of each.
    """
    a = M.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        p = next((i for i in range(r, M.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pr = a[r]
        for i in range(M.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def mat_rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space of ``M``.

    Vector ``k`` has a 1 in the ``k``-th free column and 0 in every other free
    column, so the basis matrix restricted to the free rows is the identity.
    """
    rows, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def kernel_matrix(M: Matrix) -> tuple[Matrix, list[int]]:
    """Kernel basis as the columns of a matrix, plus the free (identity) rows."""
    rows, pivots = rref(M)
    piv = set(pivots)
    free = [c for c in range(M.cols) if c not in piv]
    return Matrix.from_columns(kernel_basis(M), M.cols), free


def column_space(M: Matrix) -> Matrix:
    """Pivot columns of ``M``: a basis of its image, taken from its own columns."""
    _, pivots = rref(M)
    return M.select_columns(pivots)


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Solve ``A X = B`` exactly; ``None`` if inconsistent.

    When the solution is not unique the free variables are set to zero.
    """
    if A.rows != B.rows:
        raise InputError("solve: row counts differ")
    aug = hstack([A, B], A.rows)
    rows, pivots = rref(aug)
    if any(p >= A.cols for p in pivots):
        return None
    X = [[Fraction(0)] * B.cols for _ in range(A.cols)]
    for r, p in zip(rows, pivots):
        X[p] = list(r[A.cols:])
    return Matrix.from_rows(X, B.cols)


def determinant(M: Matrix) -> Fraction:
    if not M.is_square():
        raise InputError("determinant of a non-square matrix")
    a = M.to_rows()
    n = M.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(M: Matrix) -> Matrix:
    n = M.rows
    X = solve(M, Matrix.identity(n)) if M.is_square() else None
    if X is None or mat_rank(M) < n:
        raise InputError("matrix is singular")
    return X


class _EchelonSpan:
    """Incrementally maintained span of vectors, kept in reduced echelon form."""

    def __init__(self, length: int):
        self.length = length
        self.rows: dict[int, list[Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, vec: Sequence[Fraction]) -> bool:
        v = list(vec)
        for p, r in self.rows.items():
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, r)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv = 1 / v[lead]
        v = [x * inv for x in v]
        for p, r in self.rows.items():
            if r[lead]:
                f = r[lead]
                self.rows[p] = [x - f * y for x, y in zip(r, v)]
        self.rows[lead] = v
        return True


def _square_size(mats: Sequence[Matrix], n: int | None) -> int:
    if n is None:
        if not mats:
            raise InputError("matrix size unknown for an empty generator list")
        n = mats[0].rows
    for m in mats:
        if m.shape != (n, n):
            raise InputError(f"expected {n}x{n} matrices, got {m.rows}x{m.cols}")
    return n


def algebra_dimension(generators: Sequence[Matrix], n: int | None = None) -> int:
    """Dimension of the unital algebra generated by ``generators``.

    Grows the span of {1} ∪ generators by left multiplication with the
    generators until it stops growing.  The tuple acts irreducibly over every
    extension field exactly when the result is ``n**2``.
    """
    n = _square_size(generators, n)
    span = _EchelonSpan(n * n)
    frontier = []
    for m in [Matrix.identity(n), *generators]:
        if span.add(m.entries):
            frontier.append(m)
    while frontier and len(span) < n * n:
        new = []
        for b in frontier:
            for g in generators:
                m = g @ b
                if span.add(m.entries):
                    new.append(m)
        frontier = new
    return len(span)


class _Undetermined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDETERMINED"

    def __bool__(self) -> bool:
        return False


UNDETERMINED = _Undetermined()
"""Returned by :func:`simultaneous_conjugator` when no invertible intertwiner
was found by sampling but non-existence could not be proved."""


def intertwiner_space(As: Sequence[Matrix], Bs: Sequence[Matrix]) -> list[Matrix]:
    """Basis of {X : X A_i = B_i X for all i}."""
    if len(As) != len(Bs):
        raise InputError("tuples have different lengths")
    n = _square_size(list(As) + list(Bs), None if As else 0)
    # unknown X[p,q] sits at column p*n + q
    eqs = []
    for A, B in zip(As, Bs):
        for r in range(n):
            for c in range(n):
                row = [Fraction(0)] * (n * n)
                for s in range(n):
                    row[r * n + s] += A[s, c]
                    row[s * n + c] -= B[r, s]
                eqs.append(row)
    if not eqs:
        return [Matrix(n, n, [1 if k == p else 0 for k in range(n * n)]) for p in range(n * n)]
    return [Matrix(n, n, v) for v in kernel_basis(Matrix.from_rows(eqs, n * n))]


def _power_traces(M: Matrix, upto: int) -> list[Fraction]:
    out, P = [], M
    for _ in range(upto):
        out.append(sum(P[i, i] for i in range(P.rows)))
        P = P @ M
    return out


def _invariants_differ(As: Sequence[Matrix], Bs: Sequence[Matrix], n: int) -> bool:
    # traces of powers determine the characteristic polynomial in characteristic 0
    for A, B in zip(As, Bs):
        if _power_traces(A, n) != _power_traces(B, n):
            return True
    for (A1, B1), (A2, B2) in itertools.combinations(zip(As, Bs), 2):
        if _power_traces(A1 @ A2, 1) != _power_traces(B1 @ B2, 1):
            return True
    return False


def simultaneous_conjugator(
    As: Sequence[Matrix],
    Bs: Sequence[Matrix],
    samples: int = 32,
    grid_cap: int = 4096,
    seed: int = 0,
):
    """Find invertible ``X`` with ``X A_i = B_i X`` for every ``i``.

    Returns the matrix, ``None`` when no invertible intertwiner exists, or
    :data:`UNDETERMINED` when sampling failed to find one but could not rule
    it out either.

    Non-existence is only claimed with proof: an empty intertwiner space, a
    mismatch of conjugation invariants, or a determinant that vanishes on a
    full grid of size ``(n+1)**d`` (a nonzero polynomial of degree ``n`` in
    ``d`` variables cannot do that).
    """
    if len(As) != len(Bs):
        raise InputError("tuples have different lengths")
    if not As:
        raise InputError("need at least one matrix to fix the size")
    n = _square_size(list(As) + list(Bs), None)
    basis = intertwiner_space(As, Bs)
    if not basis:
        return None
    for X in basis:
        if determinant(X):
            return X
    if _invariants_differ(As, Bs, n):
        return None
    d = len(basis)

    def combo(coeffs):
        X = Matrix.zeros(n, n)
        for c, B in zip(coeffs, basis):
            if c:
                X = X + B * c
        return X

    if (n + 1) ** d <= grid_cap:
        for coeffs in itertools.product(range(n + 1), repeat=d):
            X = combo(coeffs)
            if determinant(X):
                return X
        return None
    rng = random.Random(seed)
    for _ in range(samples):
        X = combo([rng.randint(-9, 9) for _ in range(d)])
        if determinant(X):
            return X
    return UNDETERMINED
