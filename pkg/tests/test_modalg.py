import numpy as np
import pytest

from conftest import example
from wha_lab.algebra import FDAlgebra, Subspace
from wha_lab.core import dual
from wha_lab.errors import Decomposable, NotPseudoUnitary, NotSemisimpleM
from wha_lab.modalg import (
    ComoduleAlgebra,
    ModuleAlgebra,
    comodule_to_module,
    coset_algebra,
    dual_numbers,
    ideal_stability_check,
    jacobson_radical,
    k0_module,
    lrt_identities,
    module_dumps,
    module_loads,
    radical_stability,
    standard_rep_module,
    subgroup_algebra,
    target_comodule,
    target_module,
    verify_comodule_algebra,
    verify_module_algebra,
    verify_right_module_algebra,
)
from wha_lab.numerics import qarray, qzeros

from test_algebra import matrix_algebra, upper_triangular


@pytest.mark.parametrize("expr", ["pair(2)", "gpd(2,Z2)", "grp(S3)", "dual(pair(2))", "ds(pair(2),grp(Z3))"])
def test_target_module_and_comodule(expr):
    A = example(expr)
    assert verify_module_algebra(A, target_module(A)).verdict
    C = target_comodule(A)
    assert verify_comodule_algebra(A, C).verdict
    assert verify_right_module_algebra(dual(A), comodule_to_module(A, C)).verdict


def test_dual_numbers_sign_action():
    A = example("grp(Z2)")
    M = dual_numbers("Z2")
    assert verify_module_algebra(A, M).verdict
    assert lrt_identities(A, M).verdict


def test_broken_action_detected():
    A = example("grp(Z2)")
    M = dual_numbers("Z2")
    a = M.action.copy()
    a[1, 0, 1] = 1  # g . 1 = 1 + x breaks h . 1 = eps_t(h) . 1
    rep = verify_module_algebra(A, ModuleAlgebra(M.alg, a))
    assert not rep.verdict


def test_std_rep_radical_stable():
    A = example("grp(S3)")
    M = standard_rep_module(3)
    assert verify_module_algebra(A, M).verdict
    s = radical_stability(A, M)
    assert s.verdict and s.radical.dim == 2


def test_radical_stability_needs_pseudounitary(monkeypatch):
    import wha_lab.modalg as mod
    monkeypatch.setattr(mod, "is_pseudounitary", lambda A, seed, tol: False)
    with pytest.raises(NotPseudoUnitary):
        radical_stability(example("grp(Z2)"), dual_numbers("Z2"))


@pytest.mark.parametrize("alg,dim", [
    (matrix_algebra(2), 0),
    (upper_triangular(), 1),
    (dual_numbers("Z2").alg, 1),
])
def test_jacobson_radical(alg, dim):
    J = jacobson_radical(alg)
    assert J.dim == dim


def test_jacobson_radical_group_algebra_zero():
    A = example("grp(Z2)")
    assert jacobson_radical(A.algebra).dim == 0


def test_ideal_stability():
    A = example("grp(Z2)")
    M = dual_numbers("Z2")
    I = Subspace.span([qarray([0, 1])])
    assert ideal_stability_check(A, M, I).verdict


def test_subgroup_comodule_grading():
    A = example("grp(S3)")
    C = subgroup_algebra("S3", ["231"])
    assert C.dim == 3
    assert verify_comodule_algebra(A, C).verdict
    R = comodule_to_module(A, C)
    assert verify_right_module_algebra(dual(A), R).verdict
    # delta_g acts on k[H] as the projection onto the g-component
    T = R.T(qarray([1 if i == 3 else 0 for i in range(6)]))
    assert int(sum(T.diagonal())) == 1


def test_coset_comodule_permutation_action():
    A = example("dual(grp(S3))")
    C = coset_algebra("S3", ["231"])
    assert C.dim == 2
    assert verify_comodule_algebra(A, C).verdict
    R = comodule_to_module(A, C)
    for g in range(6):
        T = R.T(A.unit * 0 + qarray([1 if i == g else 0 for i in range(6)]))
        P = np.array(T, dtype=float)
        assert sorted(P.sum(axis=0).tolist()) == [1.0, 1.0]  # permutation matrix


def test_k0_module_cosets():
    K = k0_module(example("dual(grp(S3))"), coset_algebra("S3", ["231"]))
    assert len(K.dims) == 2
    # only the scale-free ratio FPdim(M_i) FPdim(M_k) / FPdim(M) is canonical
    assert np.allclose(np.outer(K.fp_xi, K.fp_xi) / K.FPdimM, 0.5)
    assert K.perron_unique


def test_k0_module_subgroup_restriction_table():
    A = example("grp(S3)")
    K = k0_module(A, subgroup_algebra("S3", ["231"]))
    assert K.dims == (1, 1, 1)
    totals = sorted(int(K.action[j].sum()) for j in range(3))
    # trivial and sign restrict to the identity, the 2-dim irreducible to the two nontrivial characters
    assert totals == [3, 3, 6]


def test_k0_module_decomposable_target():
    A = example("gpd(2,Z2)")
    with pytest.raises(Decomposable):
        k0_module(A, target_comodule(A))


def test_k0_module_not_semisimple():
    A = example("grp(Z2)")
    M = dual_numbers("Z2").alg
    c = qzeros((2, 2, 2))
    c[0, 0, 0] = 1
    c[1, 1, 1] = 1  # x sits in degree g
    C = ComoduleAlgebra(M, c, "graded dual numbers")
    assert verify_comodule_algebra(A, C).verdict
    with pytest.raises(NotSemisimpleM):
        k0_module(A, C)


def test_module_json_roundtrip():
    A = example("grp(S3)")
    for M in (standard_rep_module(3), subgroup_algebra("S3", ["231"])):
        N = module_loads(module_dumps(M), A)
        assert type(N) is type(M)
        assert module_dumps(N) == module_dumps(M)
