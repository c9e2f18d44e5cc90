import random

import numpy as np
import pytest

from adsp import kernels
from adsp.rootsys import StarQuiver, box_decode, classify_root

BOXES = [
    ((1, 1, 1), (2, 1, 1, 1)),
    ((2, 2, 2), (6, 4, 2, 4, 2, 4, 2)),
    ((3, 1, 0), (4, 3, 2, 1, 2)),
    ((0,), (3,)),
]

needs_compiled = pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")


def test_backend_selected():
    assert kernels.BACKEND in kernels.BACKENDS


@pytest.mark.parametrize("arms, alpha", BOXES)
def test_fallback_classifier_matches_python(arms, alpha):
    q = StarQuiver(arms)
    codes = kernels.BACKENDS["python"].classify_box(np.asarray(alpha, dtype=np.int64), list(q.edges))
    names = {0: "not_root", 1: "real", 2: "imaginary"}
    for idx, code in enumerate(codes):
        assert names[int(code)] == classify_root(q, box_decode(alpha, idx)).value


@needs_compiled
@pytest.mark.parametrize("arms, alpha", BOXES)
def test_classifiers_agree(arms, alpha):
    edges = list(StarQuiver(arms).edges)
    a = np.asarray(alpha, dtype=np.int64)
    assert np.array_equal(
        kernels.BACKENDS["python"].classify_box(a, edges),
        kernels.BACKENDS["compiled"].classify_box(a, edges),
    )


@needs_compiled
def test_knapsack_agree():
    rng = random.Random(11)
    for _ in range(30):
        alpha = [rng.randint(0, 3) for _ in range(rng.randint(1, 5))]
        if not any(alpha):
            continue
        parts = []
        for _ in range(rng.randint(1, 6)):
            p = [rng.randint(0, a) for a in alpha]
            if any(p):
                parts.append(p)
        if not parts:
            continue
        values = [rng.randint(-2, 3) for _ in parts]
        a = np.asarray(alpha, dtype=np.int64)
        P = np.asarray(parts, dtype=np.int64)
        V = np.asarray(values, dtype=np.int64)
        b1, c1 = kernels.BACKENDS["python"].knapsack(a, P, V)
        b2, c2 = kernels.BACKENDS["compiled"].knapsack(a, P, V)
        assert np.array_equal(b1, b2) and np.array_equal(c1, c2)


def test_knapsack_semantics():
    # alpha = (2, 1); parts (1,0) worth 1 and (1,1) worth 5
    best, choice = kernels.knapsack((2, 1), [(1, 0), (1, 1)], [1, 5])
    assert list(best) == [0, kernels.NEG, 1, 5, 2, 6]
    assert choice[5] in (0, 1)
    with pytest.raises(ValueError):
        kernels.knapsack((1,), [(0,)], [1])
