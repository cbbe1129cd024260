import random

import pytest
from hypothesis import given, settings, strategies as st

from zplap.field import ExtField, PrimeField
from zplap.gadget import unit
from zplap.matrix import SpSymMatrix
from zplap.reduce import general_to_laplacian, laplacian_to_unitweight
from zplap.solve import (LinSystem, TooLarge, canonical_space, enumerate_solutions, solve_all,
                         spaces_equal_under_map)

from conftest import random_connected_laplacian, random_dense
from oracles import brute_solutions


def test_solve_all_examples():
    S = solve_all(LinSystem([[2]], [3], 5))
    assert S.particular == (4,) and S.null_basis == ()
    S = solve_all(LinSystem([[0]], [0], 5))
    assert S.particular == (0,) and S.null_basis == ((1,),)
    assert solve_all(LinSystem([[1, 1], [1, 1]], [1, 2], 7)).empty


def test_enumerate_examples():
    assert enumerate_solutions(LinSystem([[2]], [3], 5)) == {(4,)}
    assert enumerate_solutions(LinSystem([[1, -1], [-1, 1]], [0, 0], 3)) == {(0, 0), (1, 1), (2, 2)}
    assert enumerate_solutions(LinSystem([[1, 1], [1, 1]], [1, 2], 7)) == set()


def test_enumerate_too_large():
    with pytest.raises(TooLarge):
        enumerate_solutions(LinSystem([[1] * 8], [0], 7))


@pytest.mark.parametrize("seed", range(40))
def test_solve_matches_brute_force(seed):
    rng = random.Random(seed)
    p = rng.choice([5, 7, 13])
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    while p ** n > 20000:
        n -= 1
    A = random_dense(rng, m, n, p, density=rng.choice([0.3, 0.7, 1.0]))
    b = [rng.randrange(p) for _ in range(m)]
    sys = LinSystem(A, b, p)
    S = solve_all(sys)
    pts = brute_solutions(A, b, p)
    assert set(S.members()) == pts == enumerate_solutions(sys)
    for x in pts:
        assert S.contains(x)


def test_canonical_idempotent_and_order_free():
    F = PrimeField(7)
    S = canonical_space([1, 2, 3], [[1, 1, 0], [2, 2, 1]], F)
    S2 = canonical_space(list(S.particular), [list(v) for v in S.null_basis], F)
    assert S == S2
    # same space, different generators and base point
    S3 = canonical_space([3, 4, 4], [[0, 0, 5], [3, 3, 0]], F)
    assert S == S3


def test_spaces_equal_examples():
    S = solve_all(LinSystem([[2]], [3], 5))
    assert spaces_equal_under_map(S, S)
    red = general_to_laplacian([[2]], [3], 5)
    assert spaces_equal_under_map(S, solve_all(red.output), red.back_map)
    rng = random.Random(7)
    L = random_connected_laplacian(rng, 3, 7)
    b = L.matvec([1, 5, 2])
    red = laplacian_to_unitweight(L, b)
    assert spaces_equal_under_map(solve_all(LinSystem(L, b, 7)), solve_all(red.output), red.back_map)


def test_spaces_not_equal_detected():
    S1 = solve_all(LinSystem([[1, 0], [0, 1]], [1, 2], 7))
    S2 = solve_all(LinSystem([[1, 0], [0, 1]], [1, 3], 7))
    assert not spaces_equal_under_map(S1, S2)
    S3 = solve_all(LinSystem([[1, 0]], [1], 7))
    assert not spaces_equal_under_map(S1, S3)
    assert not spaces_equal_under_map(S1, solve_all(LinSystem([[0]], [1], 7)))


def test_extension_elimination():
    F = ExtField(7)
    M = SpSymMatrix(2, 7, field=F)
    M.set(0, 0, F(1, 1))
    M.set(0, 1, F(0, 2))
    M.set(1, 1, F(3, 0))
    x = [F(2, 5), F(6, 1)]
    b = M.matvec(x)
    S = solve_all(LinSystem(M, b, 7, field=F))
    det = F(1, 1) * F(3, 0) - F(0, 2) * F(0, 2)
    if det.is_zero():
        assert S.dim >= 1
    else:
        assert S.null_basis == () and list(S.particular) == x


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_spaces_equal_symmetric_for_invertible_maps(seed):
    rng = random.Random(seed)
    p = 7
    n = rng.randint(1, 3)
    A = random_dense(rng, n, n, p)
    b = [rng.randrange(p) for _ in range(n)]
    S = solve_all(LinSystem(A, b, p))
    perm = list(range(n))
    rng.shuffle(perm)
    inv_perm = [perm.index(k) for k in range(n)]
    # permuted system: x'_k = x_perm[k]
    A2 = [[row[perm[k]] for k in range(n)] for row in A]
    S2 = solve_all(LinSystem(A2, b, p))
    fwd = lambda y: [y[inv_perm[k]] for k in range(n)]
    back = lambda x: [x[perm[k]] for k in range(n)]
    assert spaces_equal_under_map(S, S2, fwd)
    assert spaces_equal_under_map(S2, S, back)
