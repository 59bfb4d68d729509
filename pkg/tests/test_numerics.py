from fractions import Fraction
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wha_lab.errors import NilpotentInput, NoSolution, NumericallyIndistinct
from wha_lab.numerics import (
    DEFAULT_SEED,
    Tolerances,
    cluster_eigenvalues,
    eig_decompose,
    perron,
    q,
    q_det,
    q_inverse,
    q_nullspace,
    q_rank,
    q_solve,
    q_str,
    qarray,
    qeye,
    rationalize,
    round_int,
    rref,
)


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction((-1) ** inv)
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def matrices(n, m=None):
    return st.lists(st.lists(rationals, min_size=m or n, max_size=m or n), min_size=n, max_size=n)


@pytest.mark.parametrize("raw,expected", [(3, Fraction(3)), ("-2/6", Fraction(-1, 3)), (2.0, Fraction(2)),
                                          (Fraction(5, 7), Fraction(5, 7))])
def test_q_coercion(raw, expected):
    assert q(raw) == expected


@pytest.mark.parametrize("bad", [0.5, True, None])
def test_q_rejects_inexact(bad):
    with pytest.raises(TypeError):
        q(bad)


def test_q_str_roundtrip():
    assert q_str(Fraction(-3, 4)) == "-3/4"
    assert q_str(Fraction(5)) == "5"
    assert q(q_str(Fraction(7, 9))) == Fraction(7, 9)


def test_default_seed():
    assert DEFAULT_SEED == int.from_bytes(b"WHA1", "big")


@pytest.mark.parametrize("kw", [dict(zero=0), dict(eig_cluster=1e-12, zero=1e-10), dict(int_round=-1)])
def test_tolerances_validated(kw):
    with pytest.raises(ValueError):
        Tolerances(**kw)


def test_rref_and_rank():
    A = qarray([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, piv = rref(A)
    assert piv == [0, 1]
    assert q_rank(A) == 2
    assert R[0, 0] == 1 and R[1, 1] == 1


def test_nullspace_and_solve():
    A = qarray([[1, 1, 0], [0, 1, 1]])
    ker = q_nullspace(A)
    assert len(ker) == 1
    assert all(v == 0 for v in A.dot(ker[0]))
    x = q_solve(A, qarray([2, 3]))
    assert list(A.dot(x)) == [2, 3]


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        q_solve(qarray([[1, 1], [1, 1]]), qarray([1, 2]))


def test_inverse_singular():
    with pytest.raises(NoSolution):
        q_inverse(qarray([[1, 2], [2, 4]]))


@settings(max_examples=40, deadline=None)
@given(matrices(3))
def test_det_matches_leibniz(M):
    assert q_det(qarray(M)) == leibniz_det(M)


@settings(max_examples=40, deadline=None)
@given(matrices(3), matrices(3))
def test_det_multiplicative(M, N):
    A, B = qarray(M), qarray(N)
    assert q_det(A.dot(B)) == q_det(A) * q_det(B)


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_rank_nullity(M):
    A = qarray(M)
    ker = q_nullspace(A)
    assert q_rank(A) + len(ker) == 4
    for v in ker:
        assert all(x == 0 for x in A.dot(v))


@settings(max_examples=40, deadline=None)
@given(matrices(3))
def test_inverse_is_inverse(M):
    A = qarray(M)
    if q_det(A) == 0:
        return
    assert all(x == y for x, y in zip(A.dot(q_inverse(A)).reshape(-1), qeye(3).reshape(-1)))


def test_perron_golden_ratio():
    value, vec = perron(np.array([[1, 1], [1, 0]]))
    assert value == pytest.approx((1 + 5**0.5) / 2, abs=1e-10)
    assert np.all(vec > 0)


def test_perron_nilpotent():
    with pytest.raises(NilpotentInput):
        perron(np.array([[0, 1], [0, 0]]))


def test_perron_rejects_negative():
    with pytest.raises(ValueError):
        perron(np.array([[1, -1], [0, 1]]))


def test_cluster_ambiguous_gap():
    tol = Tolerances()
    with pytest.raises(NumericallyIndistinct):
        cluster_eigenvalues([1.0, 1.0 + tol.eig_cluster], tol)


def test_cluster_groups_close_values():
    clusters = cluster_eigenvalues([2.0, 1.0, 1.0 + 1e-12, 2.0 - 1e-12])
    assert [len(c) for c in clusters] == [2, 2]


def test_eig_decompose_projections():
    M = np.diag([1.0, 1.0, 3.0])
    spec = eig_decompose(M)
    assert spec.multiplicities == (2, 1)
    assert np.allclose(spec.projections[0], np.diag([1, 1, 0]))


@pytest.mark.parametrize("x,expected", [(2.0000000001, 2), (2.1, None), (Fraction(4, 2), 2), (Fraction(1, 2), None),
                                        (3 + 1e-3j, None)])
def test_round_int(x, expected):
    assert round_int(x) == expected


def test_rationalize():
    r = rationalize(np.array([0.5, 1 / 3, -2.0]))
    assert list(r) == [Fraction(1, 2), Fraction(1, 3), Fraction(-2)]
    assert rationalize(np.array([2**0.5])) is None
