"""Weak Hopf algebras by structure constants: axioms, duality, counital maps,
group-like elements.

Conventions: ``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``,
``comult[i, j, k]`` the coefficient of ``e_j (x) e_k`` in ``Delta(e_i)``.
Elements are coordinate vectors, functionals are coordinate rows, and
``antipode`` is the matrix of ``S`` acting on columns.

Sweedler arrows follow ``<h -> phi, g> = phi(gh)`` and
``<phi <- h, g> = phi(hg)``; for a functional acting on ``A`` we use
``phi -> h = h_1 phi(h_2)`` and ``h <- phi = phi(h_1) h_2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import FDAlgebra, Subspace, _compare, generated_subalgebra
from .errors import AntipodeNotUnique, NoAntipode, NoSolution, NotInvertible
from .numerics import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Tolerances,
    is_exact,
    q_inverse,
    q_nullspace,
    q_rank,
    q_solve,
    qarray,
    qeye,
    qzeros,
    to_complex,
    unit_vector,
)

AXIOMS = (
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "comultiplicativity",
    "weak_unit",
    "weak_counit",
    "antipode_target",
    "antipode_source",
    "antipode_sandwich",
    "antipode_invertible",
)


@dataclass(frozen=True, eq=False)
class WeakHopfAlgebra:
    n: int
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray | None
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = self.n
        shapes = {
            "mult": (self.mult.shape, (n, n, n)),
            "unit": (self.unit.shape, (n,)),
            "comult": (self.comult.shape, (n, n, n)),
            "counit": (self.counit.shape, (n,)),
        }
        if self.antipode is not None:
            shapes["antipode"] = (self.antipode.shape, (n, n))
        for name, (got, want) in shapes.items():
            if got != want:
                raise ValueError(f"{name} has shape {got}, expected {want}")

    @classmethod
    def from_data(cls, mult, unit, comult, counit, antipode=None, label=""):
        mult = qarray(mult)
        return cls(
            n=len(unit),
            mult=mult,
            unit=qarray(unit),
            comult=qarray(comult),
            counit=qarray(counit),
            antipode=None if antipode is None else qarray(antipode),
            label=label,
        )

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def with_antipode(self, S, label: str | None = None) -> "WeakHopfAlgebra":
        return WeakHopfAlgebra(self.n, self.mult, self.unit, self.comult, self.counit,
                               None if S is None else qarray(S),
                               self.label if label is None else label)

    def same_structure(self, other: "WeakHopfAlgebra") -> bool:
        if self.n != other.n:
            return False
        pairs = [(self.mult, other.mult), (self.unit, other.unit), (self.comult, other.comult),
                 (self.counit, other.counit)]
        if (self.antipode is None) != (other.antipode is None):
            return False
        if self.antipode is not None:
            pairs.append((self.antipode, other.antipode))
        return all(_compare(a, b)[0] for a, b in pairs)

    # ---------------------------------------------------------- basic maps

    @property
    def algebra(self) -> FDAlgebra:
        return self.cached("algebra", lambda: FDAlgebra(self.mult, self.unit, self.label))

    @property
    def S(self) -> np.ndarray:
        if self.antipode is None:
            raise NoAntipode("algebra has no antipode attached")
        return self.antipode

    def e(self, i: int) -> np.ndarray:
        return unit_vector(self.n, i)

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def comul(self, x) -> np.ndarray:
        """Delta(x) as an n x n coefficient matrix."""
        if is_exact(x):
            return np.tensordot(x, self.comult, axes=1)
        return np.tensordot(to_complex(x), self.ccomult, axes=1)

    @property
    def ccomult(self) -> np.ndarray:
        return self.cached("ccomult", lambda: to_complex(self.comult))

    def eps(self, x):
        return self.counit.dot(x) if is_exact(x) else to_complex(self.counit).dot(to_complex(x))

    def apply_S(self, x):
        return self.S.dot(x) if is_exact(x) else to_complex(self.S).dot(to_complex(x))

    @property
    def delta_one(self) -> np.ndarray:
        return self.cached("delta_one", lambda: self.comul(self.unit))

    @property
    def pairing(self) -> np.ndarray:
        """P[i, j] = eps(e_i e_j)."""
        return self.cached("pairing", lambda: np.tensordot(self.mult, self.counit, axes=1))

    # Sweedler arrows
    def hit(self, phi, h):
        """phi -> h = h_1 phi(h_2) for a functional phi on A."""
        if is_exact(phi) and is_exact(h):
            return np.einsum("i,iab,b->a", h, self.comult, phi)
        return np.einsum("i,iab,b->a", to_complex(h), self.ccomult, to_complex(phi))

    def hit_right(self, h, phi):
        """h <- phi = phi(h_1) h_2."""
        if is_exact(phi) and is_exact(h):
            return np.einsum("i,iab,a->b", h, self.comult, phi)
        return np.einsum("i,iab,a->b", to_complex(h), self.ccomult, to_complex(phi))

    def convolve(self, F, G) -> np.ndarray:
        """Matrix of the convolution h -> F(h_1) G(h_2)."""
        n = self.n
        out = qzeros((n, n))
        for i in range(n):
            D = self.comult[i]
            acc = qzeros(n)
            for a, b in zip(*np.nonzero(D != 0)):
                acc = acc + D[a, b] * self.mul(F[:, a], G[:, b])
            out[:, i] = acc
        return out

    # -------------------------------------------------------- counital maps

    @property
    def eps_t_matrix(self) -> np.ndarray:
        # eps_t(h) = eps(1_1 h) 1_2
        return self.cached("Et", lambda: self.delta_one.T.dot(self.pairing))

    @property
    def eps_s_matrix(self) -> np.ndarray:
        # eps_s(h) = 1_1 eps(h 1_2)
        return self.cached("Es", lambda: self.delta_one.dot(self.pairing.T))

    def eps_t(self, h):
        return self.eps_t_matrix.dot(h) if is_exact(h) else to_complex(self.eps_t_matrix).dot(h)

    def eps_s(self, h):
        return self.eps_s_matrix.dot(h) if is_exact(h) else to_complex(self.eps_s_matrix).dot(h)


# ------------------------------------------------------------ sparse helpers

def _sparse_tensor(T) -> dict:
    """{i: [(j, k, c), ...]} for the nonzero slices of a 3-tensor."""
    out = {}
    for i in range(T.shape[0]):
        nz = np.nonzero(np.vectorize(lambda v: v != 0, otypes=[bool])(T[i]))
        out[i] = [(int(j), int(k), T[i, j, k]) for j, k in zip(*nz)]
    return out


def _sparse_vec(v) -> list:
    return [(int(i), v[i]) for i in range(len(v)) if v[i] != 0]


def _sparse_mat(M) -> dict:
    return {(int(i), int(j)): M[i, j] for i, j in zip(*np.nonzero(np.vectorize(lambda v: v != 0, otypes=[bool])(M)))}


def _add(acc: dict, key, c):
    v = acc.get(key, 0) + c
    if v == 0:
        acc.pop(key, None)
    else:
        acc[key] = v


def _mul_sparse(msp, x: dict, y: dict) -> dict:
    """Product of sparse elements {index: coeff}."""
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in msp.get((i, j), ()):
                _add(out, k, a * b * c)
    return out


def _mult_sparse(A: WeakHopfAlgebra) -> dict:
    def build():
        out: dict = {}
        nz = np.nonzero(np.vectorize(lambda v: v != 0, otypes=[bool])(A.mult))
        for i, j, k in zip(*nz):
            out.setdefault((int(i), int(j)), []).append((int(k), A.mult[i, j, k]))
        return out
    return A.cached("mult_sparse", build)


def _comult_sparse(A: WeakHopfAlgebra) -> dict:
    return A.cached("comult_sparse", lambda: _sparse_tensor(A.comult))


def _first_diff(lhs: dict, rhs: dict):
    keys = sorted(set(lhs) | set(rhs))
    for key in keys:
        if lhs.get(key, 0) != rhs.get(key, 0):
            return key
    return None


# ----------------------------------------------------------------- axioms

@dataclass(frozen=True)
class AxiomReport:
    results: dict  # name -> (passed, witness tuple or None)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    @property
    def first_failure(self):
        for name in AXIOMS:
            if name in self.results and not self.results[name][0]:
                return name, self.results[name][1]
        return None

    def to_dict(self) -> dict:
        return {name: {"passed": ok, "witness": list(w) if w is not None else None}
                for name, (ok, w) in self.results.items()}


def _check_associativity(A):
    msp = _mult_sparse(A)
    n = A.n
    for i in range(n):
        for j in range(n):
            ij = dict(msp.get((i, j), ()))
            for k in range(n):
                lhs = _mul_sparse(msp, ij, {k: 1})
                rhs = _mul_sparse(msp, {i: 1}, dict(msp.get((j, k), ())))
                bad = _first_diff(lhs, rhs)
                if bad is not None:
                    return False, (i, j, k, bad)
    return True, None


def _check_coassociativity(A):
    csp = _comult_sparse(A)
    for i in range(A.n):
        lhs: dict = {}
        rhs: dict = {}
        for j, k, c in csp[i]:
            for a, b, d in csp[j]:
                _add(lhs, (a, b, k), c * d)
            for a, b, d in csp[k]:
                _add(rhs, (j, a, b), c * d)
        bad = _first_diff(lhs, rhs)
        if bad is not None:
            return False, (i, *bad)
    return True, None


def _check_counit(A):
    n = A.n
    left = np.einsum("j,ijk->ik", A.counit, A.comult)
    right = np.einsum("k,ijk->ij", A.counit, A.comult)
    eye = qeye(n)
    ok, w = _compare(left, eye)
    return (ok, w) if not ok else _compare(right, eye)


def _check_comultiplicativity(A):
    msp = _mult_sparse(A)
    csp = _comult_sparse(A)
    n = A.n
    for i in range(n):
        for j in range(n):
            lhs: dict = {}
            for k, c in msp.get((i, j), ()):
                for a, b, d in csp[k]:
                    _add(lhs, (a, b), c * d)
            rhs: dict = {}
            for p, q_, c1 in csp[i]:
                for r, s, c2 in csp[j]:
                    left = msp.get((p, r))
                    right = msp.get((q_, s))
                    if not left or not right:
                        continue
                    for a, ca in left:
                        for b, cb in right:
                            _add(rhs, (a, b), c1 * c2 * ca * cb)
            bad = _first_diff(lhs, rhs)
            if bad is not None:
                return False, (i, j, *bad)
    return True, None


def _check_weak_unit(A):
    # (Delta (x) id)Delta(1) = (Delta(1) (x) 1)(1 (x) Delta(1)) = (1 (x) Delta(1))(Delta(1) (x) 1)
    msp = _mult_sparse(A)
    csp = _comult_sparse(A)
    D1 = _sparse_mat(A.delta_one)
    one = dict(_sparse_vec(A.unit))
    lhs: dict = {}
    for (j, k), c in D1.items():
        for a, b, d in csp[j]:
            _add(lhs, (a, b, k), c * d)

    def triple_product(X, Y):
        out: dict = {}
        for (a1, b1, c1), x in X.items():
            for (a2, b2, c2), y in Y.items():
                A_ = msp.get((a1, a2))
                B_ = msp.get((b1, b2))
                C_ = msp.get((c1, c2))
                if not (A_ and B_ and C_):
                    continue
                for a, ca in A_:
                    for b, cb in B_:
                        for c, cc in C_:
                            _add(out, (a, b, c), x * y * ca * cb * cc)
        return out

    left_factor = {(a, b, u): c * cu for (a, b), c in D1.items() for u, cu in one.items()}
    right_factor = {(u, a, b): c * cu for (a, b), c in D1.items() for u, cu in one.items()}
    for rhs in (triple_product(left_factor, right_factor), triple_product(right_factor, left_factor)):
        bad = _first_diff(lhs, rhs)
        if bad is not None:
            return False, bad
    return True, None


def _check_weak_counit(A):
    # eps(fgh) = eps(f g_1) eps(g_2 h) = eps(f g_2) eps(g_1 h)
    P = A.pairing
    fg = A.mult
    lhs = np.einsum("fgx,xh->fgh", fg, P)
    r1 = np.einsum("gab,fa,bh->fgh", A.comult, P, P, optimize=True)
    ok, w = _compare(lhs, r1)
    if not ok:
        return ok, w
    r2 = np.einsum("gab,fb,ah->fgh", A.comult, P, P, optimize=True)
    return _compare(lhs, r2)


def _check_antipode_target(A):
    # h_1 S(h_2) = eps_t(h)
    S = A.S
    MS = np.einsum("ask,sb->abk", A.mult, S)
    lhs = np.einsum("iab,abk->ki", A.comult, MS)
    return _compare(lhs, A.eps_t_matrix)


def _check_antipode_source(A):
    # S(h_1) h_2 = eps_s(h)
    S = A.S
    SM = np.einsum("sbk,sa->abk", A.mult, S)
    lhs = np.einsum("iab,abk->ki", A.comult, SM)
    return _compare(lhs, A.eps_s_matrix)


def _check_antipode_sandwich(A):
    # S(h_1) h_2 S(h_3) = S(h)
    msp = _mult_sparse(A)
    csp = _comult_sparse(A)
    S = A.S
    Scols = [dict(_sparse_vec(S[:, i])) for i in range(A.n)]
    memo: dict = {}
    for i in range(A.n):
        triple: dict = {}
        for j, k, c in csp[i]:
            for a, b, d in csp[j]:
                _add(triple, (a, b, k), c * d)
        lhs: dict = {}
        for (a, b, c), coeff in triple.items():
            key = (a, b, c)
            if key not in memo:
                memo[key] = _mul_sparse(msp, _mul_sparse(msp, Scols[a], {b: Fraction(1)}), Scols[c])
            for k, v in memo[key].items():
                _add(lhs, k, coeff * v)
        bad = _first_diff(lhs, Scols[i])
        if bad is not None:
            return False, (i, bad)
    return True, None


def _check_antipode_invertible(A):
    return (q_rank(A.S) == A.n, None)


_CHECKS = {
    "associativity": _check_associativity,
    "unit": lambda A: A.algebra.is_unital(),
    "coassociativity": _check_coassociativity,
    "counit": _check_counit,
    "comultiplicativity": _check_comultiplicativity,
    "weak_unit": _check_weak_unit,
    "weak_counit": _check_weak_counit,
    "antipode_target": _check_antipode_target,
    "antipode_source": _check_antipode_source,
    "antipode_sandwich": _check_antipode_sandwich,
    "antipode_invertible": _check_antipode_invertible,
}


def verify_axioms(A: WeakHopfAlgebra, include_antipode: bool = True) -> AxiomReport:
    """Check every axiom exactly over all basis tuples."""
    results = {}
    for name in AXIOMS:
        if name.startswith("antipode"):
            if not include_antipode:
                continue
            if A.antipode is None:
                results[name] = (False, None)
                continue
        results[name] = _CHECKS[name](A)
    return AxiomReport(results)


def check_antipode_antihomomorphism(A: WeakHopfAlgebra) -> tuple[bool, tuple | None]:
    """S(xy) = S(y)S(x) and Delta(S(h)) = S(h_2) (x) S(h_1) on basis elements."""
    S = A.S
    n = A.n
    for i in range(n):
        for j in range(n):
            lhs = S.dot(A.mul(A.e(i), A.e(j)))
            rhs = A.mul(S[:, j], S[:, i])
            if not _compare(lhs, rhs)[0]:
                return False, ("algebra", i, j)
    for i in range(n):
        lhs = A.comul(S[:, i])
        rhs = S.dot(A.comult[i]).dot(S.T).T
        if not _compare(lhs, rhs)[0]:
            return False, ("coalgebra", i)
    return True, None


# ------------------------------------------------------------------ duality

def dual(A: WeakHopfAlgebra) -> WeakHopfAlgebra:
    return WeakHopfAlgebra(
        n=A.n,
        mult=np.ascontiguousarray(A.comult.transpose(1, 2, 0)),
        unit=A.counit.copy(),
        comult=np.ascontiguousarray(A.mult.transpose(2, 0, 1)),
        counit=A.unit.copy(),
        antipode=None if A.antipode is None else np.ascontiguousarray(A.antipode.T),
        label=f"dual({A.label})" if A.label else "dual",
    )


def direct_sum(A: WeakHopfAlgebra, B: WeakHopfAlgebra, label: str | None = None) -> WeakHopfAlgebra:
    n, m = A.n, B.n
    N = n + m

    def block3(X, Y):
        T = qzeros((N, N, N))
        T[:n, :n, :n] = X
        T[n:, n:, n:] = Y
        return T

    S = qzeros((N, N))
    S[:n, :n] = A.S
    S[n:, n:] = B.S
    return WeakHopfAlgebra(
        n=N,
        mult=block3(A.mult, B.mult),
        unit=np.concatenate([A.unit, B.unit]),
        comult=block3(A.comult, B.comult),
        counit=np.concatenate([A.counit, B.counit]),
        antipode=S,
        label=label or f"ds({A.label},{B.label})",
    )


# ------------------------------------------------------ counital machinery

def counital_target(A: WeakHopfAlgebra, h):
    return A.eps_t(h)


def counital_source(A: WeakHopfAlgebra, h):
    return A.eps_s(h)


def _column_space(M) -> Subspace:
    return Subspace.span([M[:, i] for i in range(M.shape[1])], M.shape[0])


def bases(A: WeakHopfAlgebra) -> tuple[Subspace, Subspace]:
    """(A_t, A_s); also checks that the two bases commute."""
    def build():
        At = _column_space(A.eps_t_matrix)
        As = _column_space(A.eps_s_matrix)
        for x in At.vectors():
            for y in As.vectors():
                if not _compare(A.mul(x, y), A.mul(y, x))[0]:
                    raise AssertionError("target and source bases do not commute")
        return At, As
    return A.cached("bases", build)


def target_subalgebra(A: WeakHopfAlgebra) -> FDAlgebra:
    return A.cached("At_alg", lambda: A.algebra.subalgebra(bases(A)[0], "A_t"))


def source_subalgebra(A: WeakHopfAlgebra) -> FDAlgebra:
    return A.cached("As_alg", lambda: A.algebra.subalgebra(bases(A)[1], "A_s"))


def minimal_subalgebra(A: WeakHopfAlgebra) -> Subspace:
    At, As = bases(A)
    return A.cached("Amin", lambda: generated_subalgebra(A.algebra, At.vectors() + As.vectors()))


def is_regular(A: WeakHopfAlgebra) -> bool:
    S2 = s_squared(A)
    return all(_compare(S2.dot(v), v)[0] for v in minimal_subalgebra(A).vectors())


def center(A: WeakHopfAlgebra) -> Subspace:
    return A.cached("center", lambda: A.algebra.center())


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    coconnected: bool

    @property
    def biconnected(self) -> bool:
        return self.connected and self.coconnected

    def to_dict(self) -> dict:
        return {"connected": self.connected, "coconnected": self.coconnected,
                "biconnected": self.biconnected}


def connectivity(A: WeakHopfAlgebra) -> Connectivity:
    def build():
        At, As = bases(A)
        return Connectivity(
            connected=center(A).intersect(At).dim == 1,
            coconnected=As.intersect(At).dim == 1,
        )
    return A.cached("connectivity", build)


def is_hopf(A: WeakHopfAlgebra) -> bool:
    """Delta(1) = 1 (x) 1."""
    return _compare(A.delta_one, np.multiply.outer(A.unit, A.unit))[0]


# ------------------------------------------------------------------ antipode

def _target_system(A: WeakHopfAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Linear system for T in h_1 T(h_2) = eps_t(h); unknown T[s, b] at s*n + b."""
    n = A.n
    # coefficient of T[s,b] in output coordinate k of h = e_i: sum_a c[i,a,b] m[a,s,k]
    coeff = np.einsum("iab,ask->iksb", A.comult, A.mult)
    M = coeff.reshape(n * n, n * n)
    rhs = A.eps_t_matrix.T.reshape(n * n)  # row (i, k) -> Et[k, i]
    return M, rhs


def _source_system(A: WeakHopfAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Linear system for T in T(h_1) h_2 = eps_s(h)."""
    n = A.n
    coeff = np.einsum("iab,sbk->iksa", A.comult, A.mult)
    return coeff.reshape(n * n, n * n), A.eps_s_matrix.T.reshape(n * n)


def solve_antipode(A: WeakHopfAlgebra) -> np.ndarray:
    """The antipode of ``A`` as a matrix (structure without S is enough).

    Any antipode satisfies S = (S * id) * T = eps_s * T for every T with
    id * T = eps_t, so the linear solution set determines S uniquely.
    """
    M1, b1 = _target_system(A)
    M2, b2 = _source_system(A)
    M = np.concatenate([M1, M2])
    b = np.concatenate([b1, b2])
    n = A.n
    try:
        t = q_solve(M, b)
    except NoSolution:
        raise NoAntipode("antipode equations are inconsistent") from None
    T = t.reshape(n, n)
    Es = A.eps_s_matrix
    S = A.convolve(Es, T)
    for K in q_nullspace(M):
        if any(v != 0 for v in A.convolve(Es, K.reshape(n, n)).reshape(-1)):
            raise AntipodeNotUnique("antipode equations admit several solutions")
    candidate = A.with_antipode(S)
    report = verify_axioms(candidate)
    if not report.passed:
        name, w = report.first_failure
        raise NoAntipode(f"no map satisfies the antipode axioms ({name} fails at {w})")
    return S


def antipode_solution_dimension(A: WeakHopfAlgebra) -> int:
    """Dimension of the solution space of the two linear antipode equations."""
    M1, _ = _target_system(A)
    M2, _ = _source_system(A)
    return A.n * A.n - q_rank(np.concatenate([M1, M2]))


# ------------------------------------------------------------ group-likes

@dataclass(frozen=True, eq=False)
class GroupLike:
    element: np.ndarray
    inverse: np.ndarray
    trivial_witness: np.ndarray | None = None


def _close(x, y, tol: float) -> bool:
    if is_exact(x) and is_exact(y):
        return _compare(x, y)[0]
    d = to_complex(x) - to_complex(y)
    return d.size == 0 or float(np.max(np.abs(d))) <= tol


def is_grouplike(A: WeakHopfAlgebra, g, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Delta(g) = (g (x) g)Delta(1) = Delta(1)(g (x) g) and g invertible."""
    alg = A.algebra
    Lg = alg.left_matrix(g)
    Rg = alg.right_matrix(g)
    U = A.delta_one if is_exact(g) else to_complex(A.delta_one)
    Dg = A.comul(g)
    t = tol.check * max(1.0, float(np.max(np.abs(to_complex(g))))) ** 2
    if not _close(Dg, Lg.dot(U).dot(Lg.T), t) or not _close(Dg, Rg.dot(U).dot(Rg.T), t):
        return False
    if is_exact(g):
        return alg.is_invertible(g)
    return np.linalg.matrix_rank(to_complex(Lg), tol=tol.check) == A.n


def _inverse(A: WeakHopfAlgebra, x):
    if is_exact(x):
        return A.algebra.inverse(x)
    L = to_complex(A.algebra.left_matrix(x))
    if np.linalg.matrix_rank(L, tol=DEFAULT_TOL.check) < A.n:
        raise NotInvertible("element is not invertible")
    return np.linalg.solve(L, to_complex(A.unit))


def make_grouplike(A: WeakHopfAlgebra, g, witness=None) -> GroupLike:
    return GroupLike(element=g, inverse=_inverse(A, g), trivial_witness=witness)


def trivial_grouplike(A: WeakHopfAlgebra, y) -> GroupLike:
    """g = y S(y)^{-1} for an invertible y in A_s."""
    if not bases(A)[1].contains(y):
        raise ValueError("y must lie in the source base A_s")
    if not A.algebra.is_invertible(y):
        raise NotInvertible("y is not invertible in A")
    g = A.mul(y, A.algebra.inverse(A.apply_S(y)))
    return make_grouplike(A, g, witness=y)


def is_trivial(A: WeakHopfAlgebra, g, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL):
    """Return an invertible y in A_s with y = g S(y) (so g = y S(y)^{-1}), or None."""
    if isinstance(g, GroupLike):
        g = g.element
    As = bases(A)[1]
    B = As.basis
    alg = A.algebra
    if is_exact(g):
        M = alg.left_matrix(g).dot(A.S).dot(B) - B
        sols = q_nullspace(M)
        if not sols:
            return None
        rng = random.Random(seed)
        candidates = [B.dot(c) for c in sols]
        for _ in range(20):
            if candidates:
                y = candidates.pop(0)
            else:
                coeffs = [Fraction(rng.randint(-9, 9)) for _ in sols]
                y = B.dot(sum((c * v for c, v in zip(coeffs, sols)), qzeros(len(sols[0]))))
            if alg.is_invertible(y):
                return y
        return None
    Bc = to_complex(B)
    M = to_complex(alg.left_matrix(g)) @ to_complex(A.S) @ Bc - Bc
    _, sv, vh = np.linalg.svd(M)
    null = [vh[i].conj() for i in range(vh.shape[0]) if i >= len(sv) or sv[i] <= tol.check * max(1.0, sv[0] if len(sv) else 1.0)]
    if not null:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(20):
        c = sum(rng.standard_normal() * v for v in null)
        y = Bc @ c
        L = to_complex(alg.left_matrix(y))
        if np.linalg.matrix_rank(L, tol=tol.check) == A.n:
            return y
    return None


# ------------------------------------------------------------------- S^2

def s_squared(A: WeakHopfAlgebra) -> np.ndarray:
    return A.cached("S2", lambda: A.S.dot(A.S))


def s2_eigenvalues(A: WeakHopfAlgebra) -> np.ndarray:
    vals = np.linalg.eigvals(to_complex(s_squared(A)))
    order = np.lexsort((np.round(vals.imag, 10), np.round(vals.real, 10)))
    return vals[order]
