import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zplap.field import prev_prime
from zplap.gadget import (Circuit, ZeroWeight, build_near_fraction, build_ratio, build_resistance,
                          build_resistance_naive, crt_primes, para, rev_crt, rhombus, seri, unit, _anchor)
from zplap.matrix import SpSymMatrix, is_laplacian, is_unit_weight

from oracles import resistance_from_dense


def oracle_r(C):
    return resistance_from_dense(C.matrix.to_dense(), C.p)


def connected(M):
    adj = M.adjacency()
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == M.n


def well_formed(C):
    return is_laplacian(C.matrix) and is_unit_weight(C.matrix) and connected(C.matrix)


def test_unit_examples():
    u = unit(7)
    assert u.matrix.to_dense() == [[1, 6], [6, 1]]
    assert u.degrees() == (1, 1)
    assert u.verify() and oracle_r(u) == 1
    assert seri(unit(7), unit(7)).resistance == 2


def test_seri_examples():
    s = seri(unit(7), unit(7))
    assert s.resistance == 2 and s.weight == 4 and oracle_r(s) == 2
    assert s.n == 3
    c = seri(build_ratio(2, 1, 7), build_ratio(3, 1, 7))
    assert c.resistance == 5 and oracle_r(c) == 5


def test_para_examples():
    c = para(unit(7), unit(7))
    assert c.weight == 2 and c.resistance == 4 and oracle_r(c) == 4
    assert is_unit_weight(c.matrix)  # rhombus avoided a doubled edge
    s = seri(unit(7), unit(7))
    cyc = para(s, s)
    assert cyc.resistance == 1 and oracle_r(cyc) == 1 and cyc.n == 4


def test_rhombus():
    r = rhombus(7)
    assert r.weight == 1 and not r.has_direct_edge() and r.verify()
    assert rhombus(13, 5).weight == 5 and rhombus(13, 5).verify()


def test_zero_weight():
    with pytest.raises(ZeroWeight):
        seri(build_ratio(3, 1, 5), build_ratio(2, 1, 5))
    with pytest.raises(ZeroWeight):
        Circuit(SpSymMatrix(2, 7), 0)


def test_build_ratio_examples():
    c = build_ratio(2, 3, 7)
    assert c.resistance == 3 and oracle_r(c) == 3
    assert build_ratio(4, 4, 7).matrix == unit(7).matrix
    c = build_ratio(3, 1, 7)
    assert c.resistance == 3 and c.n == 4 and oracle_r(c) == 3


@pytest.mark.parametrize("p", [7, 13, 101])
def test_build_ratio_all_pairs(p):
    M = min(p - 1, 20)
    for a in range(1, M + 1):
        for b in range(1, M + 1):
            C = build_ratio(a, b, p)
            assert C.verify() and well_formed(C)
            assert C.resistance == a * pow(b, -1, p) % p


def test_near_fraction_examples():
    c, w = build_near_fraction(1, 2, 7, 2)
    assert w == 4 and c.resistance == 4 and oracle_r(c) == 4
    c, w = build_near_fraction(0, 3, 7)
    assert w == 1 and c.matrix == unit(7).matrix
    c, w = build_near_fraction(-1, 3, 13)
    assert w == -4 and c.resistance == 9 and oracle_r(c) == 9


def test_near_fraction_range():
    for p in (101, 1009):
        for j in (2, 3, 5, 7):
            for i in range(-j, j + 1):
                c, w = build_near_fraction(i, j, p)
                assert Fraction(p * i, j) <= w <= Fraction(p * i, j) + 1
                assert c.verify() and c.resistance == w % p


def test_rev_crt_examples():
    assert rev_crt(5, (2, 3)).coeffs == (1, 1)
    assert rev_crt(0, (2, 3, 5)).coeffs == (0, 0, 0)
    plan = rev_crt(29, (2, 3, 5))
    assert plan.exact()
    assert sum(Fraction(a, q) for a, q in zip(plan.coeffs, plan.primes)) == Fraction(29, 30)


def test_rev_crt_all():
    primes = (2, 3, 5, 7)
    for i in range(-210, 211):
        plan = rev_crt(i, primes)
        assert plan.exact()
        assert all(abs(a) <= q for a, q in zip(plan.coeffs, primes))


def test_anchor_error_within_2t():
    for p in (1009, 65537, prev_prime(2**31)):
        primes, J = crt_primes(p)
        t = len(primes)
        for i in range(0, J + 1, max(1, J // 200)):
            w, _ = _anchor(i, primes, p)
            assert Fraction(p * i, J) <= w <= Fraction(p * i, J) + 2 * t


def test_build_resistance_examples():
    assert build_resistance(1, 7).matrix == unit(7).matrix
    c = build_resistance(5, 7)
    assert c.weight == 3 and oracle_r(c) == 5
    assert build_resistance(5, 7, method="crt").weight == 3


def test_build_resistance_naive_examples():
    assert build_resistance_naive(2, 7).n == 3
    c = build_resistance_naive(5, 7)
    assert c.n == 6 and c.weight == 3 and oracle_r(c) == 5
    assert build_resistance_naive(1, 7).matrix == unit(7).matrix


@pytest.mark.parametrize("p", [5, 7, 13, 101])
def test_build_resistance_all_r_sympy(p):
    for r in range(1, p):
        for method in ("auto", "crt"):
            C = build_resistance(r, p, method=method)
            assert well_formed(C)
            assert oracle_r(C) == r


def test_build_resistance_bad_r():
    with pytest.raises(ValueError):
        build_resistance(0, 7)
    with pytest.raises(ValueError):
        build_resistance(7, 7)


def test_large_prime_scaling():
    p = prev_prime(2**61)
    lp = math.log(p)
    for r in (1, 2, p // 3, p - 1, 123456789123):
        C = build_resistance(r, p)
        assert C.verify() and is_unit_weight(C.matrix)
        assert C.nnz() <= 500 * lp ** 2 / math.log(lp)
        assert C.degrees()[0] <= 100 * lp


circuits = st.builds(lambda a, b: build_ratio(a, b, 101), st.integers(1, 40), st.integers(1, 40))


@settings(max_examples=60, deadline=None)
@given(circuits, circuits)
def test_series_parallel_laws(C1, C2):
    p = 101
    if (C1.resistance + C2.resistance) % p:
        s = seri(C1, C2)
        assert oracle_r(s) == (C1.resistance + C2.resistance) % p
        assert s.nnz() <= C1.nnz() + C2.nnz()
        assert well_formed(s)
    if (C1.weight + C2.weight) % p:
        q = para(C1, C2)
        assert circuit_weight_ok(q, (C1.weight + C2.weight) % p)
        assert well_formed(q)
        if not (C1.has_direct_edge() and C2.has_direct_edge()):
            assert q.nnz() <= C1.nnz() + C2.nnz()


def circuit_weight_ok(C, w):
    return C.weight == w and oracle_r(C) == pow(w, -1, C.p)
