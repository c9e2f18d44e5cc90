"""Conjugacy classes given by Jordan data, and their eigenvalue/rank encoding.

A class is stored as its spectrum: for every distinct eigenvalue, the list of
Jordan block sizes.  :func:`normalize` turns it into an annihilating
eigenvalue sequence ``xi`` together with the ranks of the partial products
``prod_{l<=j} (A - xi_l)``, which is what the root-system side consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InputError, ResourceError
from .exactlinalg import Matrix, format_rational, parse_rational

GENERIC_STATE_CAP = 10**7


@dataclass(frozen=True)
class JordanClass:
    """``spectrum`` is a tuple of ``(eigenvalue, blocks)`` pairs.

    The order of the pairs is kept: it decides which eigenvalue comes first
    in the normalized sequence when multiplicities tie.
    """

    spectrum: tuple[tuple[Fraction, tuple[int, ...]], ...]

    def __post_init__(self):
        pairs = []
        seen = set()
        for value, blocks in self.spectrum:
            value = parse_rational(value)
            blocks = tuple(sorted((int(b) for b in blocks), reverse=True))
            if not blocks:
                raise InputError(f"eigenvalue {value} has no Jordan blocks")
            if any(b < 1 for b in blocks):
                raise InputError(f"Jordan blocks must be positive, got {blocks}")
            if value in seen:
                raise InputError(f"eigenvalue {value} listed twice")
            seen.add(value)
            pairs.append((value, blocks))
        if not pairs:
            raise InputError("empty spectrum")
        object.__setattr__(self, "spectrum", tuple(pairs))

    @classmethod
    def of(cls, *pairs) -> JordanClass:
        """``JordanClass.of((1, [1]), (-1, [1]))``"""
        return cls(tuple((v, tuple(b)) for v, b in pairs))

    @property
    def n(self) -> int:
        return sum(sum(b) for _, b in self.spectrum)

    def eigenvalues(self) -> list[Fraction]:
        return [v for v, _ in self.spectrum]

    def matrix(self) -> Matrix:
        """A representative: block diagonal Jordan form (upper ones)."""
        n = self.n
        rows = [[Fraction(0)] * n for _ in range(n)]
        k = 0
        for value, blocks in self.spectrum:
            for b in blocks:
                for t in range(b):
                    rows[k + t][k + t] = value
                    if t + 1 < b:
                        rows[k + t][k + t + 1] = Fraction(1)
                k += b
        return Matrix.from_rows(rows, n)

    def to_json(self) -> dict:
        return {"spectrum": [{"value": format_rational(v), "blocks": list(b)} for v, b in self.spectrum]}

    @classmethod
    def from_json(cls, data) -> JordanClass:
        try:
            return cls(tuple((item["value"], tuple(item["blocks"])) for item in data["spectrum"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed class entry: {data!r}") from exc


@dataclass(frozen=True)
class ClassTuple:
    classes: tuple[JordanClass, ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if not self.classes:
            raise InputError("need at least one conjugacy class")
        sizes = {c.n for c in self.classes}
        if len(sizes) != 1:
            raise InputError(f"classes have different sizes {sorted(sizes)}")

    @property
    def n(self) -> int:
        return self.classes[0].n

    @property
    def k(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def to_json(self) -> dict:
        return {"classes": [c.to_json() for c in self.classes]}

    @classmethod
    def from_json(cls, data) -> ClassTuple:
        if not isinstance(data, dict) or not isinstance(data.get("classes"), list):
            raise InputError('instance must be an object with a "classes" list')
        return cls(tuple(JordanClass.from_json(c) for c in data["classes"]))


@dataclass(frozen=True)
class XiSequence:
    xi: tuple[Fraction, ...]
    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(Fraction(x) for x in self.xi))
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        check_xi_sequence(self.xi, self.ranks)

    @property
    def n(self) -> int:
        return self.ranks[0]

    @property
    def d(self) -> int:
        return len(self.xi)


def check_xi_sequence(xi: Sequence[Fraction], ranks: Sequence[int]) -> None:
    """Validate a raw eigenvalue/rank encoding, raising :class:`InputError`."""
    d = len(xi)
    if d < 2:
        raise InputError("need at least two annihilating eigenvalues")
    if len(ranks) != d + 1:
        raise InputError(f"expected {d + 1} ranks, got {len(ranks)}")
    if ranks[-1] != 0:
        raise InputError("last rank must be 0")
    if any(ranks[j] < ranks[j + 1] for j in range(d)) or ranks[-1] < 0:
        raise InputError(f"ranks must be non-increasing: {tuple(ranks)}")
    drops = [ranks[j - 1] - ranks[j] for j in range(1, d + 1)]
    for j in range(d):
        for l in range(j + 1, d):
            if xi[j] == xi[l] and drops[j] < drops[l]:
                raise InputError(
                    f"rank drops violate the repeated-eigenvalue condition at positions {j + 1}, {l + 1}"
                )


def xi_sequence_from_raw(xi: Sequence, ranks: Sequence[int]) -> XiSequence:
    """Secondary ingestion path for data already in (xi, r) form."""
    return XiSequence(tuple(parse_rational(x) for x in xi), tuple(ranks))


def multiplicities(c: JordanClass) -> list[tuple[Fraction, int]]:
    return [(v, sum(b)) for v, b in c.spectrum]


def _grouped(c: JordanClass) -> list[tuple[Fraction, tuple[int, ...]]]:
    # stable: ties in multiplicity keep the input order
    return sorted(c.spectrum, key=lambda vb: -sum(vb[1]))


def normalize(c: JordanClass) -> XiSequence:
    n = c.n
    xi: list[Fraction] = []
    ranks = [n]
    finished = 0
    for value, blocks in _grouped(c):
        for j in range(1, blocks[0] + 1):
            xi.append(value)
            ranks.append(n - finished - sum(min(b, j) for b in blocks))
        finished += sum(blocks)
    if len(xi) == 1:
        xi.append(xi[0])
        ranks.append(0)
    return XiSequence(tuple(xi), tuple(ranks))


def trace_of_class(c: JordanClass) -> Fraction:
    return sum((m * v for v, m in multiplicities(c)), Fraction(0))


def trace_condition(t: ClassTuple) -> bool:
    return sum((trace_of_class(c) for c in t), Fraction(0)) == 0


def is_nilpotent_shift(t: ClassTuple) -> bool:
    """Every class has a single eigenvalue and the eigenvalues sum to zero,
    i.e. subtracting scalars turns the tuple into nilpotent classes."""
    return all(len(c.spectrum) == 1 for c in t) and sum(c.spectrum[0][0] for c in t) == 0


def _partial_sums(c: JordanClass, cap: int) -> dict[int, set[Fraction]]:
    """All (count, weighted sum) pairs from choosing 0 <= m'_l <= m_l."""
    table: dict[int, set[Fraction]] = {0: {Fraction(0)}}
    states = 1
    for value, m in multiplicities(c):
        nxt: dict[int, set[Fraction]] = {}
        for count, sums in table.items():
            for take in range(m + 1):
                bucket = nxt.setdefault(count + take, set())
                before = len(bucket)
                bucket.update(s + take * value for s in sums)
                states += len(bucket) - before
                if states > cap:
                    raise ResourceError(f"genericity check exceeds {cap} states")
        table = nxt
    return table


def is_generic(t: ClassTuple, state_cap: int = GENERIC_STATE_CAP) -> bool:
    """True when no proper nonempty sub-multiset of eigenvalues, taking the
    same number from every class, sums to zero."""
    if not trace_condition(t):
        raise InputError("eigenvalue sum is nonzero; genericity is undefined")
    n = t.n
    per_class = [_partial_sums(c, state_cap) for c in t]
    states = sum(len(s) for tab in per_class for s in tab.values())
    for count in range(1, n):
        reach = {Fraction(0)}
        for tab in per_class:
            reach = {a + b for a in reach for b in tab.get(count, ())}
            states += len(reach)
            if states > state_cap:
                raise ResourceError(f"genericity check exceeds {state_cap} states")
            if not reach:
                break
        if Fraction(0) in reach:
            return False
    return True


def multiplicity_gcd(t: ClassTuple) -> int:
    g = 0
    for c in t:
        for _, m in multiplicities(c):
            g = gcd(g, m)
    return g
