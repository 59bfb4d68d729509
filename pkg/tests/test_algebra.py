import numpy as np
import pytest

from wha_lab.algebra import FDAlgebra, Subspace, generated_subalgebra
from wha_lab.errors import NotInvertible
from wha_lab.numerics import qarray, qzeros


def matrix_algebra(n):
    """M_n(k) with basis E_ij at index i*n + j."""
    N = n * n
    mult = qzeros((N, N, N))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                mult[i * n + j, j * n + k, i * n + k] = 1
    unit = qzeros(N)
    for i in range(n):
        unit[i * n + i] = 1
    return FDAlgebra(mult, unit, f"M{n}")


def upper_triangular():
    # basis E11, E12, E22
    mult = qzeros((3, 3, 3))
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 2, 1] = mult[2, 2, 2] = 1
    return FDAlgebra(mult, qarray([1, 0, 1]), "T2")


def test_matrix_algebra_structure():
    M = matrix_algebra(2)
    assert M.is_associative()[0]
    assert M.is_unital()[0]
    assert M.center().dim == 1
    assert M.is_semisimple()


def test_upper_triangular_not_semisimple():
    T = upper_triangular()
    assert T.is_associative()[0]
    assert not T.is_semisimple()
    assert T.center().dim == 1


def test_inverse():
    M = matrix_algebra(2)
    x = qarray([1, 1, 0, 1])
    y = M.inverse(x)
    assert list(M.mul(x, y)) == list(M.unit)
    with pytest.raises(NotInvertible):
        M.inverse(qarray([1, 0, 0, 0]))


def test_nonassociative_detected():
    mult = qzeros((2, 2, 2))
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    mult[1, 1, 0] = 1
    mult[1, 1, 1] = 1
    A = FDAlgebra(mult, qarray([1, 0]))
    assert A.is_associative()[0]  # still a commutative algebra k[x]/(x^2 - x - 1)
    mult[1, 1, 1] = 0
    mult[1, 0, 0] = 1
    ok, witness = FDAlgebra(mult, qarray([1, 0])).is_associative()
    assert not ok and len(witness) == 4


def test_subspace_operations():
    U = Subspace.span([qarray([1, 0, 0]), qarray([0, 1, 0])])
    V = Subspace.span([qarray([0, 1, 0]), qarray([0, 0, 1])])
    W = U.intersect(V)
    assert W.dim == 1 and W.contains(qarray([0, 5, 0]))
    assert not W.contains(qarray([1, 0, 0]))
    assert U.contains_subspace(W)
    assert Subspace.span([qarray([2, 2, 0])]) == Subspace.span([qarray([1, 1, 0])])


def test_generated_and_sub_algebra():
    M = matrix_algebra(2)
    diag = generated_subalgebra(M, [qarray([1, 0, 0, 0])])
    assert diag.dim == 2
    D = M.subalgebra(diag)
    assert D.is_associative()[0] and D.is_semisimple() and D.center().dim == 2
