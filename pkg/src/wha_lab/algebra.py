"""Finite-dimensional associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NotInvertible, NoSolution
from .numerics import (
    is_exact,
    q_nullspace,
    q_rank,
    q_solve,
    qarray,
    qzeros,
    rref,
    to_complex,
    unit_vector,
)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of k^n with a canonical (RREF) basis stored as columns."""

    n: int
    basis: np.ndarray  # shape (n, k)

    @classmethod
    def span(cls, vectors, n: int | None = None) -> "Subspace":
        vectors = [np.asarray(v, dtype=object) for v in vectors]
        if n is None:
            n = len(vectors[0])
        if not vectors:
            return cls(n, qzeros((n, 0)))
        R, pivots = rref(np.array(vectors, dtype=object).reshape(len(vectors), n))
        return cls(n, R[: len(pivots)].T.copy())

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def vectors(self) -> list[np.ndarray]:
        return [self.basis[:, i].copy() for i in range(self.dim)]

    def contains(self, v) -> bool:
        if self.dim == 0:
            return all(x == 0 for x in v)
        try:
            self.coordinates(v)
        except NoSolution:
            return False
        return True

    def coordinates(self, v) -> np.ndarray:
        """Exact coordinates of ``v`` in this basis (raises NoSolution if outside)."""
        return q_solve(self.basis, np.asarray(v, dtype=object))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.n, qzeros((self.n, 0)))
        stacked = np.concatenate([self.basis, -other.basis], axis=1)
        coeffs = q_nullspace(stacked)
        vecs = [self.basis.dot(c[: self.dim]) for c in coeffs]
        return Subspace.span(vecs, self.n)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.n == other.n
            and self.dim == other.dim
            and all(a == b for a, b in zip(self.basis.reshape(-1), other.basis.reshape(-1)))
        )

    __hash__ = None


class FDAlgebra:
    """Associative unital algebra with ``mult[i, j, k]`` = coefficient of e_k in e_i e_j."""

    def __init__(self, mult, unit, label: str = ""):
        self.mult = np.asarray(mult, dtype=object) if is_exact(np.asarray(mult, dtype=object)) else qarray(mult)
        self.unit = qarray(unit)
        self.label = label
        self._cache: dict = {}
        n = len(self.unit)
        if self.mult.shape != (n, n, n):
            raise ValueError(f"mult has shape {self.mult.shape}, expected {(n, n, n)}")

    @property
    def dim(self) -> int:
        return len(self.unit)

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def cmult(self) -> np.ndarray:
        return self.cached("cmult", lambda: to_complex(self.mult))

    def basis_vector(self, i: int) -> np.ndarray:
        return unit_vector(self.dim, i)

    def mul(self, x, y):
        if is_exact(x) and is_exact(y):
            return np.einsum("i,j,ijk->k", x, y, self.mult)
        return np.einsum("i,j,ijk->k", to_complex(x), to_complex(y), self.cmult)

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of h -> x h."""
        if is_exact(x):
            return np.einsum("i,ijk->kj", x, self.mult)
        return np.einsum("i,ijk->kj", to_complex(x), self.cmult)

    def right_matrix(self, x) -> np.ndarray:
        """Matrix of h -> h x."""
        if is_exact(x):
            return np.einsum("j,ijk->ki", x, self.mult)
        return np.einsum("j,ijk->ki", to_complex(x), self.cmult)

    def products_table(self) -> np.ndarray:
        return self.mult

    def is_associative(self) -> tuple[bool, tuple | None]:
        lhs = np.einsum("ijl,lkm->ijkm", self.mult, self.mult)
        rhs = np.einsum("jkl,ilm->ijkm", self.mult, self.mult)
        return _compare(lhs, rhs)

    def is_unital(self) -> tuple[bool, tuple | None]:
        n = self.dim
        eye = np.eye(n, dtype=int)
        left = np.einsum("i,ijk->jk", self.unit, self.mult)
        right = np.einsum("j,ijk->ik", self.unit, self.mult)
        ok, w = _compare(left.T, eye)
        if not ok:
            return ok, w
        return _compare(right.T, eye)

    def center(self) -> Subspace:
        n = self.dim
        rows = []
        for i in range(n):
            e = self.basis_vector(i)
            rows.append(self.left_matrix(e) - self.right_matrix(e))
        return Subspace.span(q_nullspace(np.concatenate(rows, axis=0)), n) if n else Subspace(0, qzeros((0, 0)))

    def inverse(self, x) -> np.ndarray:
        try:
            y = q_solve(self.left_matrix(x), self.unit)
        except NoSolution:
            raise NotInvertible("element is not invertible") from None
        if not all(v == 0 for v in self.mul(y, x) - self.unit):
            raise NotInvertible("element has only a one-sided inverse")
        return y

    def is_invertible(self, x) -> bool:
        return q_rank(self.left_matrix(x)) == self.dim

    def trace_form(self) -> np.ndarray:
        """Gram matrix of (x, y) -> Tr(L_x L_y)."""
        Ls = [self.left_matrix(self.basis_vector(i)) for i in range(self.dim)]
        n = self.dim
        G = qzeros((n, n))
        for i in range(n):
            for j in range(i, n):
                t = sum((Ls[i].dot(Ls[j])).diagonal(), Fraction(0))
                G[i, j] = G[j, i] = t
        return G

    def is_semisimple(self) -> bool:
        """Characteristic-zero criterion: the regular trace form is non-degenerate."""
        return self.cached("semisimple", lambda: q_rank(self.trace_form()) == self.dim)

    def subalgebra(self, space: Subspace, label: str = "") -> "FDAlgebra":
        """Structure constants of a subalgebra in the basis of ``space``."""
        k = space.dim
        B = space.vectors()
        mult = qzeros((k, k, k))
        for i in range(k):
            for j in range(k):
                mult[i, j, :] = space.coordinates(self.mul(B[i], B[j]))
        return FDAlgebra(mult, space.coordinates(self.unit), label=label)


def _compare(lhs, rhs):
    diff = np.asarray(lhs, dtype=object) - np.asarray(rhs, dtype=object)
    for idx in np.ndindex(diff.shape):
        if diff[idx] != 0:
            return False, tuple(int(i) for i in idx)
    return True, None


def generated_subalgebra(alg: FDAlgebra, generators) -> Subspace:
    """Smallest unital subalgebra containing ``generators`` (product closure)."""
    space = Subspace.span([alg.unit, *generators], alg.dim)
    while True:
        vecs = space.vectors()
        prods = [alg.mul(a, b) for a in vecs for b in vecs]
        bigger = Subspace.span(vecs + prods, alg.dim)
        if bigger.dim == space.dim:
            return space
        space = bigger
