import random
from fractions import Fraction

import pytest

from adsp.classdata import ClassTuple, JordanClass, normalize, xi_sequence_from_raw
from adsp.errors import InputError
from adsp.exactlinalg import UNDETERMINED, Matrix, determinant, inverse, simultaneous_conjugator
from adsp.rootsys import StarQuiver, build_instance, coreflect, reflect
from adsp.construct import (
    MatrixSolution,
    QuiverRep,
    check_relations,
    construct_rigid,
    matrices_to_rep,
    reduction_path,
    reflection_functor,
    rep_isomorphism,
    rep_to_matrices,
    verify_solution,
)
from adsp.sigma import is_rigid

J = JordanClass.of
D4 = StarQuiver((1, 1, 1))
PM = J((1, [1]), (-1, [1]))
TRIPLE = ClassTuple((PM, PM, PM))


def rigid_3x3(rng):
    """Random instance shaped like (3 distinct) x 2 + (double, simple), zero trace."""
    while True:
        vals = [Fraction(rng.randint(-20, 20), rng.choice((1, 2, 3))) for _ in range(7)]
        a, b = vals[0:3], vals[3:6]
        if len(set(a)) < 3 or len(set(b)) < 3:
            continue
        double = vals[6]
        simple = -(sum(a) + sum(b) + 2 * double)
        if simple == double:
            continue
        t = ClassTuple((
            J(*((v, [1]) for v in a)),
            J(*((v, [1]) for v in b)),
            J((double, [1, 1]), (simple, [1])),
        ))
        q, alpha, lam = build_instance([normalize(c) for c in t])
        if is_rigid(q, alpha, lam):
            return t


def unit_rep():
    one = Matrix.identity(1)
    return QuiverRep(D4, (1, 1, 1, 1), (one,) * 3, (one,) * 3)


def test_relations_examples():
    q = StarQuiver((1, 1))
    rep = QuiverRep.zero(q, (0, 1, 0))
    assert check_relations(rep, (5, 0, 7))
    assert check_relations(unit_rep(), (3, -1, -1, -1))
    assert not check_relations(unit_rep(), (4, -1, -1, -1))
    with pytest.raises(InputError):
        check_relations(unit_rep(), (3, -1))


def test_reflection_functor_example():
    lam = (3, -1, -1, -1)
    out = reflection_functor(unit_rep(), 1, lam)
    assert out.dims == (1, 0, 1, 1)
    assert check_relations(out, coreflect(D4, 1, lam))
    with pytest.raises(InputError):
        reflection_functor(unit_rep(), 1, (0, 0, 0, 0))
    lone = QuiverRep.zero(D4, (0, 1, 0, 0))
    with pytest.raises(InputError, match="negative dimension"):
        reflection_functor(lone, 1, (1, -1, 0, 0))


def test_reflection_functor_twice_is_isomorphic():
    lam = (3, -1, -1, -1)
    rep = unit_rep()
    for v in range(4):
        mid = reflection_functor(rep, v, lam)
        back = reflection_functor(mid, v, coreflect(D4, v, lam))
        assert back.dims == rep.dims
        X = rep_isomorphism(rep, back)
        assert X is not None and all(determinant(M) != 0 for M in X)


def test_functor_dimension_bookkeeping():
    t = rigid_3x3(random.Random(1))
    xs = [normalize(c) for c in t]
    q, alpha, lam = build_instance(xs)
    rep = matrices_to_rep(construct_rigid(t), xs)
    for v in range(q.size):
        if lam[v] == 0:
            continue
        new_dim = sum(rep.dims[w] for w in q.neighbors[v]) - rep.dims[v]
        if new_dim < 0:
            continue
        out = reflection_functor(rep, v, lam)
        assert out.dims[v] == new_dim and out.dims == reflect(q, v, rep.dims)
        back = reflection_functor(out, v, coreflect(q, v, lam))
        assert rep_isomorphism(rep, back) is not None


def test_construct_rigid_triple():
    sol = construct_rigid(TRIPLE)
    assert verify_solution(TRIPLE, sol).ok
    q, alpha, lam = build_instance([normalize(c) for c in TRIPLE])
    assert [v for v, _ in reduction_path(q, alpha, lam)] == [0, 1, 2, 0]
    for A in sol.matrices:
        assert A.shape == (2, 2) and determinant(A) == -1 and A[0, 0] + A[1, 1] == 0


def test_construct_scalar_pair():
    t = ClassTuple((J((3, [1])), J((-3, [1]))))
    sol = construct_rigid(t)
    assert sol.matrices == (Matrix.from_rows([[3]]), Matrix.from_rows([[-3]]))


def test_construct_rejects_non_rigid():
    nil = J((0, [3, 3, 3, 3]))
    with pytest.raises(InputError):
        construct_rigid(ClassTuple((nil, nil, nil)))


def test_verify_examples():
    t = ClassTuple((PM, PM, J((-2, [1]), (2, [1]))))
    d = Matrix.diag
    report = verify_solution(t, MatrixSolution((d([1, -1]), d([1, -1]), d([-2, 2]))))
    assert (report.classes_ok, report.sum_zero, report.irreducible) == (True, True, False)
    report = verify_solution(TRIPLE, MatrixSolution((d([1, -1]),) * 3))
    assert not report.sum_zero
    with pytest.raises(InputError):
        verify_solution(TRIPLE, MatrixSolution((d([1, -1]),) * 2))


def test_matrices_to_rep_examples():
    xs = [normalize(J((3, [1]))), normalize(J((-3, [1])))]
    sol = MatrixSolution((Matrix.from_rows([[3]]), Matrix.from_rows([[-3]])))
    rep = matrices_to_rep(sol, xs)
    assert rep.dims == (1,) and rep.quiver.arm_lengths == (0, 0)
    assert rep_to_matrices(rep, xs) == sol
    with pytest.raises(InputError):
        matrices_to_rep(MatrixSolution((Matrix.from_rows([[3]]), Matrix.from_rows([[-2]]))), xs)
    xs3 = [normalize(c) for c in TRIPLE]
    rep = matrices_to_rep(construct_rigid(TRIPLE), xs3)
    assert rep.dims == (2, 1, 1, 1) and check_relations(rep, build_instance(xs3)[2])


def test_rep_to_matrices_rejects_non_injective():
    xs = [normalize(J((0, [2])))]
    q, alpha, lam = build_instance(xs)
    rep = QuiverRep.zero(q, alpha)
    assert check_relations(rep, lam)
    with pytest.raises(InputError, match=r"a\[1\]\[1\] is not injective"):
        rep_to_matrices(rep, xs)


def test_rep_json_round_trip():
    rep = matrices_to_rep(construct_rigid(TRIPLE), [normalize(c) for c in TRIPLE])
    data = rep.to_json()
    assert "a[2][1]" in data and "astar[3][1]" in data
    assert QuiverRep.from_json(data) == rep


def test_round_trip_conjugate():
    rng = random.Random(4)
    for _ in range(4):
        t = rigid_3x3(rng)
        xs = [normalize(c) for c in t]
        sol = construct_rigid(t)
        while True:
            Y = Matrix(3, 3, [rng.randint(-3, 3) for _ in range(9)])
            if determinant(Y):
                break
        moved = MatrixSolution(tuple(Y @ A @ inverse(Y) for A in sol.matrices))
        assert verify_solution(t, moved).ok
        back = rep_to_matrices(matrices_to_rep(moved, xs), xs)
        X = simultaneous_conjugator(list(moved.matrices), list(back.matrices))
        assert X is not None and X is not UNDETERMINED


def test_path_independence():
    rng = random.Random(8)
    for t in [TRIPLE] + [rigid_3x3(rng) for _ in range(4)]:
        s1 = construct_rigid(t, tie_break="least")
        s2 = construct_rigid(t, tie_break="greatest")
        X = simultaneous_conjugator(list(s1.matrices), list(s2.matrices))
        assert X is not None and X is not UNDETERMINED
        assert all(X @ a == b @ X for a, b in zip(s1.matrices, s2.matrices))


def test_raw_sequence_path():
    xs = [xi_sequence_from_raw(["1", "-1"], [2, 1, 0])] * 3
    sol = construct_rigid(TRIPLE)
    assert matrices_to_rep(sol, xs).dims == (2, 1, 1, 1)
