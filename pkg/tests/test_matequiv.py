import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_equivalent
from symblocks.errors import InternalConsistencyError, ShapeError
from symblocks.exact import RationalMatrix
from symblocks.matequiv import (
    RECTANGULAR,
    SIMILARITY,
    apply_witness,
    classify,
    invariant_key,
    permutation_similarity,
    transforming_permutations,
)


def rm(rows, den=1):
    return RationalMatrix(rows, den)


def test_keys():
    eye = rm([[1, 0], [0, 1]])
    assert invariant_key(eye, SIMILARITY) == invariant_key(rm([[1, 0], [0, 1]]), SIMILARITY)
    a = rm([[1, 2, 3], [4, 5, 6]])
    assert invariant_key(a) == invariant_key(rm([[4, 5, 6], [1, 2, 3]]))
    assert invariant_key(rm([[1, 0], [0, 2]])) != invariant_key(rm([[1, 0], [0, 3]]))
    with pytest.raises(ShapeError):
        invariant_key(a, SIMILARITY)


def test_witness_examples():
    eye = rm([[1, 0], [0, 1]])
    wit = transforming_permutations(eye, eye)
    assert apply_witness(eye, wit) == eye
    a, b = rm([[1, 0], [0, 2]]), rm([[2, 0], [0, 1]])
    wit = transforming_permutations(a, b)
    assert wit.rows == (1, 0) and wit.cols == (1, 0)
    assert str(wit) == "rows: 1 0 | cols: 1 0"
    assert permutation_similarity(eye, eye).rows == (0, 1)
    assert permutation_similarity(rm([[1, 0], [0, 2]]), rm([[1, 0], [0, 3]])) is None
    with pytest.raises(ShapeError):
        transforming_permutations(eye, rm([[1, 0, 0], [0, 1, 0]]))
    with pytest.raises(ValueError):
        permutation_similarity(rm([[1, 2], [3, 4]]), rm([[1, 2], [3, 4]]))


def test_different_denominators_are_not_equivalent():
    assert transforming_permutations(rm([[1]], 2), rm([[1]], 3)) is None


def _random01(rng, m, n):
    return [[rng.randrange(2) for _ in range(n)] for _ in range(m)]


def test_against_brute_force():
    rng = random.Random(20240611)
    for _ in range(600):
        m, n = rng.randrange(1, 7), rng.randrange(1, 7)
        a = _random01(rng, m, n)
        if rng.random() < 0.5:
            rp, cp = list(range(m)), list(range(n))
            rng.shuffle(rp)
            rng.shuffle(cp)
            b = [[a[rp[i]][cp[j]] for j in range(n)] for i in range(m)]
            if rng.random() < 0.3:
                i, j = rng.randrange(m), rng.randrange(n)
                b[i][j] ^= 1
        else:
            b = _random01(rng, m, n)
        want = brute_equivalent(a, b)
        wit = transforming_permutations(rm(a), rm(b))
        assert (wit is not None) == want
        if wit is not None:
            assert apply_witness(rm(a), wit) == rm(b)
            assert invariant_key(rm(a)) == invariant_key(rm(b))


def _symmetric(rng, n, values=3):
    a = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(i, n):
            a[i, j] = a[j, i] = rng.randrange(values)
    return a


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_planted_similarity(n, seed):
    rng = random.Random(seed)
    a = _symmetric(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    b = np.zeros_like(a)
    for i in range(n):
        for j in range(n):
            b[perm[i], perm[j]] = a[i, j]
    wit = permutation_similarity(rm(a), rm(b))
    assert wit is not None and wit.rows == wit.cols
    assert apply_witness(rm(a), wit) == rm(b)


def test_similarity_brute_force_small():
    import itertools

    rng = random.Random(3)
    for _ in range(200):
        n = rng.randrange(1, 6)
        a, b = _symmetric(rng, n, 2), _symmetric(rng, n, 2)
        want = any(all(a[i, j] == b[p[i], p[j]] for i in range(n) for j in range(n))
                   for p in itertools.permutations(range(n)))
        assert (permutation_similarity(rm(a), rm(b)) is not None) == want


def test_regular_graphs_need_branching():
    # two 3-regular graphs on 6 vertices: the prism and K_{3,3}
    prism = np.zeros((6, 6), dtype=int)
    for i, j in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]:
        prism[i, j] = prism[j, i] = 1
    k33 = np.zeros((6, 6), dtype=int)
    for i in range(3):
        for j in range(3, 6):
            k33[i, j] = k33[j, i] = 1
    assert invariant_key(rm(prism), SIMILARITY) == invariant_key(rm(k33), SIMILARITY)
    assert permutation_similarity(rm(prism), rm(k33)) is None
    perm = [3, 5, 1, 0, 2, 4]
    shuffled = np.zeros_like(prism)
    for i in range(6):
        for j in range(6):
            shuffled[perm[i], perm[j]] = prism[i, j]
    assert permutation_similarity(rm(prism), rm(shuffled)) is not None


def test_classify_order_and_jobs():
    rng = random.Random(8)
    base = [_symmetric(rng, 5) for _ in range(4)]
    items = []
    for k in range(12):
        a = base[k % 4]
        perm = list(range(5))
        rng.shuffle(perm)
        b = a[np.ix_(perm, perm)]
        items.append((k, rm(b)))
    one = classify(items, SIMILARITY)
    shuffled = items[:]
    rng.shuffle(shuffled)
    two = classify(shuffled, SIMILARITY, jobs=2)
    assert one.classes == two.classes
    assert one.classes == tuple(tuple(range(r, 12, 4)) for r in range(4))
    assert classify([("x", rm([[1]]))], SIMILARITY).classes == (("x",),)
