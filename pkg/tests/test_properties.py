"""Property-based checks over randomly chosen groupoid examples."""

import numpy as np
from hypothesis import given, settings, strategies as st

from wha_lab.builders import connected_groupoid, cyclic_group, disjoint_union, groupoid_algebra, pair_groupoid
from wha_lab.core import bases, connectivity, direct_sum, dual, solve_antipode, verify_axioms
from wha_lab.integrals import trace_formula_1, verify_radford
from wha_lab.repcat import dimension_data
from wha_lab.theorems import class_equation

small = settings(max_examples=12, deadline=None)


@st.composite
def groupoids(draw):
    n_obj = draw(st.integers(1, 2))
    order = draw(st.integers(1, 3))
    return connected_groupoid(n_obj, cyclic_group(order))


@small
@given(groupoids())
def test_groupoid_algebras_are_weak_hopf(G):
    A = groupoid_algebra(G)
    assert verify_axioms(A).passed
    D = dual(A)
    assert verify_axioms(D).passed
    assert dual(D).same_structure(A)


@small
@given(groupoids(), st.integers(0, 2**32))
def test_trace_formula_and_radford(G, seed):
    A = groupoid_algebra(G)
    assert trace_formula_1(A, seed=seed, n_random=2).verdict
    assert verify_radford(A)


@small
@given(groupoids())
def test_dimension_of_connected_groupoid(G):
    A = groupoid_algebra(G)
    D = dimension_data(A)
    n_obj, n_mor = len(G.objects), len(G.morphisms)
    assert D.d == n_obj
    assert D.dimA == n_mor // (n_obj * n_obj)
    assert abs(D.mu - n_mor / n_obj) < 1e-8


@small
@given(st.integers(1, 5))
def test_class_equation_abelian(n):
    # every class of an abelian group is a singleton
    r = class_equation(groupoid_algebra(cyclic_group(n)))
    assert np.allclose([t.real for t in r.terms], 1)
    assert len(r.terms) == n


@small
@given(st.integers(1, 2), st.integers(1, 3))
def test_antipode_from_structure(n, m):
    A = groupoid_algebra(disjoint_union(pair_groupoid(n), cyclic_group(m)))
    assert all(x == y for x, y in zip(solve_antipode(A).reshape(-1), A.S.reshape(-1)))
    assert not connectivity(A).connected


@small
@given(st.integers(1, 2), st.integers(1, 3))
def test_direct_sum_bases_add(n, m):
    A, B = groupoid_algebra(pair_groupoid(n)), groupoid_algebra(cyclic_group(m))
    C = direct_sum(A, B)
    assert verify_axioms(C).passed
    assert bases(C)[0].dim == bases(A)[0].dim + bases(B)[0].dim
