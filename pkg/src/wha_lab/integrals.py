"""Integrals: integral spaces, canonical and Haar integrals, dual pairs,
distinguished group-likes, the S^4 formula and the first trace formula."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Subspace, _compare
from .core import (
    GroupLike,
    WeakHopfAlgebra,
    bases,
    center,
    connectivity,
    dual,
    is_grouplike,
    make_grouplike,
    s_squared,
    source_subalgebra,
)
from .errors import (
    AxiomViolation,
    DegenerateIntegral,
    EquivalenceViolated,
    NoSolution,
    NotBiconnected,
    NotSemisimple,
)
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
)
from .wedderburn import wedderburn


@dataclass(frozen=True, eq=False)
class IntegralSpace:
    side: str
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list[np.ndarray]:
        return self.space.vectors()


@dataclass(frozen=True, eq=False)
class DualIntegralPair:
    ell: np.ndarray
    lam: np.ndarray


@dataclass(frozen=True, eq=False)
class DistinguishedGroupLikes:
    alpha: GroupLike
    a: GroupLike
    pair: DualIntegralPair


@dataclass
class CheckEntry:
    condition: str
    verdict: bool
    witness: object = None

    def to_dict(self) -> dict:
        d = {"condition": self.condition, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    name: str
    entries: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(e.verdict for e in self.entries)

    def add(self, condition, verdict, witness=None):
        self.entries.append(CheckEntry(condition, bool(verdict), witness))

    def to_dict(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "entries": [e.to_dict() for e in self.entries]}


# ----------------------------------------------------------------- spaces

def integral_space(A: WeakHopfAlgebra, side: str = "left") -> IntegralSpace:
    """Left integrals satisfy h l = eps_t(h) l, right ones l h = l eps_s(h)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")

    def build():
        alg = A.algebra
        rows = []
        for i in range(A.n):
            e = A.e(i)
            if side == "left":
                rows.append(alg.left_matrix(e) - alg.left_matrix(A.eps_t(e)))
            else:
                rows.append(alg.right_matrix(e) - alg.right_matrix(A.eps_s(e)))
        space = Subspace.span(q_nullspace(np.concatenate(rows)), A.n)
        if space.dim != bases(A)[0].dim:
            raise AxiomViolation("integral_dimension", (space.dim, bases(A)[0].dim))
        return IntegralSpace(side, space)

    return A.cached(("integrals", side), build)


def canonical_integral(A: WeakHopfAlgebra) -> np.ndarray:
    """Row lambda with lambda(h) = Tr(L_h S^2)."""
    def build():
        S2 = s_squared(A)
        alg = A.algebra
        return np.array([sum(alg.left_matrix(A.e(i)).dot(S2).diagonal(), Fraction(0)) for i in range(A.n)],
                        dtype=object)
    return A.cached("canonical_integral", build)


def canonical_integral_in_A(A: WeakHopfAlgebra) -> np.ndarray:
    """The canonical left integral of A* read as an element of A."""
    return A.cached("ell_can", lambda: canonical_integral(dual(A)))


def trace_S2(A: WeakHopfAlgebra) -> Fraction:
    return sum(s_squared(A).diagonal(), Fraction(0))


def normalized_integral(A: WeakHopfAlgebra) -> np.ndarray:
    """A left integral with eps_t(l) = 1; NotSemisimple if there is none."""
    I = integral_space(A, "left").space
    try:
        c = q_solve(A.eps_t_matrix.dot(I.basis), A.unit)
    except NoSolution:
        raise NotSemisimple("no normalized left integral") from None
    return I.basis.dot(c)


def two_sided_integrals(A: WeakHopfAlgebra) -> Subspace:
    return A.cached("two_sided", lambda: integral_space(A, "left").space.intersect(integral_space(A, "right").space))


def haar_integral(A: WeakHopfAlgebra):
    """The normalized two-sided integral, or None."""
    I = two_sided_integrals(A)
    if I.dim == 0:
        return None
    M = A.eps_t_matrix.dot(I.basis)
    try:
        c = q_solve(M, A.unit)
    except NoSolution:
        return None
    if q_rank(M) != I.dim:
        raise AssertionError("normalized two-sided integral is not unique")
    h = I.basis.dot(c)
    if not _compare(A.S.dot(h), h)[0]:
        raise AssertionError("Haar integral is not S-invariant")
    return h


def is_nondegenerate_integral(A: WeakHopfAlgebra, ell) -> bool:
    """l defines a non-degenerate form (phi, psi) -> <l, phi psi> on A*."""
    return q_rank(A.comul(ell)) == A.n


def is_nondegenerate_functional(A: WeakHopfAlgebra, phi) -> bool:
    return q_rank(np.tensordot(A.mult, phi, axes=1)) == A.n


def _nondegenerate_in(A: WeakHopfAlgebra, space: Subspace, seed: int):
    if space.dim == 0:
        return None
    vecs = space.vectors()
    for v in vecs:
        if is_nondegenerate_integral(A, v):
            return v
    rng = random.Random(seed)
    for _ in range(20):
        v = sum((Fraction(rng.randint(-9, 9)) * b for b in vecs), np.zeros(A.n, dtype=object) + Fraction(0))
        if is_nondegenerate_integral(A, v):
            return v
    return None


def nondegenerate_left_integral(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Prefers the canonical integral coming from A*; falls back to a seeded search."""
    ell = canonical_integral_in_A(A)
    if is_nondegenerate_integral(A, ell):
        return ell
    found = _nondegenerate_in(A, integral_space(A, "left").space, seed)
    if found is None:
        raise DegenerateIntegral("no non-degenerate left integral found")
    return found


def dual_integral(A: WeakHopfAlgebra, ell) -> DualIntegralPair:
    """Solve lambda -> l = 1 and check l -> lambda = eps."""
    ell = qarray(ell)
    D = A.comul(ell)
    if q_rank(D) != A.n:
        raise DegenerateIntegral("integral is degenerate")
    lam = q_solve(D, A.unit)
    # (l -> lambda)(g) = lambda(g l)
    back = np.tensordot(A.algebra.right_matrix(ell).T, lam, axes=1)
    if not _compare(back, A.counit)[0]:
        raise AssertionError("dual integral fails l -> lambda = eps")
    return DualIntegralPair(ell, lam)


def default_pair(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED) -> DualIntegralPair:
    return A.cached(("pair", seed), lambda: dual_integral(A, nondegenerate_left_integral(A, seed)))


# -------------------------------------------------------------- battery

def _require_biconnected(A, required: bool):
    if required and not connectivity(A).biconnected:
        raise NotBiconnected(f"{A.label or 'algebra'} is not biconnected")


def semisimplicity_battery(A: WeakHopfAlgebra, require_biconnected: bool = True) -> Report:
    _require_biconnected(A, require_biconnected)
    D = dual(A)
    rep = Report("semisimplicity")
    tr = trace_S2(A)
    rep.add("Tr(S^2|A) != 0", tr != 0, str(tr))

    def has_normalized(B):
        try:
            normalized_integral(B)
            return True
        except NotSemisimple:
            return False

    rep.add("normalized left integral in A", has_normalized(A))
    rep.add("normalized left integral in A*", has_normalized(D))
    rep.add("Haar integral in A*", haar_integral(D) is not None)
    rep.add("canonical integral non-degenerate", is_nondegenerate_functional(A, canonical_integral(A)))
    verdicts = {e.verdict for e in rep.entries}
    if len(verdicts) != 1:
        raise EquivalenceViolated(
            "semisimplicity conditions disagree: "
            + ", ".join(f"{e.condition}={e.verdict}" for e in rep.entries))
    return rep


def source_idempotents(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL):
    """Primitive idempotents p_a of Z(A_s) in A-coordinates and block sizes n_a."""
    def build():
        As_space = bases(A)[1]
        W = wedderburn(source_subalgebra(A), seed, tol)
        out = []
        for b in W.blocks:
            if b.exact_idempotent is not None:
                p = As_space.basis.dot(b.exact_idempotent)
            else:
                p = to_complex(As_space.basis) @ b.idempotent
            out.append((p, b.dim_V))
        return out
    return A.cached(("source_idempotents", seed, tol), build)


def counitals_of_lambda_check(A: WeakHopfAlgebra, require_biconnected: bool = True,
                              seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> Report:
    _require_biconnected(A, require_biconnected)
    D = dual(A)
    lam = canonical_integral(A)
    rep = Report("counitals of lambda")
    As = bases(A)[1]
    lhs_t = D.eps_t(lam)
    rhs_t = (trace_S2(A) / As.dim) * A.counit
    rep.add("eps_t(lambda) = Tr(S^2)/dim A_s eps", _compare(lhs_t, rhs_t)[0])
    lhs_s = D.eps_s(lam)
    S2 = s_squared(A)
    rhs_s = None
    exact = True
    for p, _ in source_idempotents(A, seed, tol):
        if is_exact(p):
            Lp = A.algebra.left_matrix(p)
            num = sum(S2.dot(Lp).diagonal(), Fraction(0))
            den = q_rank(Lp.dot(As.basis))
            term = (num / den) * A.pairing.dot(p)
        else:
            exact = False
            Lp = to_complex(A.algebra.left_matrix(p))
            num = np.trace(to_complex(S2) @ Lp)
            den = np.linalg.matrix_rank(Lp @ to_complex(As.basis), tol=tol.check)
            term = (num / den) * (to_complex(A.pairing) @ p)
        rhs_s = term if rhs_s is None else rhs_s + term
    if exact:
        ok = _compare(lhs_s, rhs_s)[0]
    else:
        ok = float(np.max(np.abs(to_complex(lhs_s) - to_complex(rhs_s)))) <= tol.check * A.n
    rep.add("eps_s(lambda) = sum_a Tr(S^2|p_a A)/dim(p_a A_s) (p_a -> eps)", ok)
    return rep


# ---------------------------------------------------- distinguished elements

def distinguished_grouplikes(A: WeakHopfAlgebra, pair: DualIntegralPair | None = None) -> DistinguishedGroupLikes:
    pair = pair or default_pair(A)
    D = dual(A)
    # S(l) = alpha -> l = l_1 alpha(l_2)
    alpha = q_solve(A.comul(pair.ell), A.S.dot(pair.ell))
    # S(lambda) = a -> lambda = lambda(. a)
    Mlam = np.tensordot(A.mult, pair.lam, axes=1)
    a = q_solve(Mlam, A.S.T.dot(pair.lam))
    if not is_grouplike(D, alpha):
        raise AssertionError("distinguished alpha is not group-like")
    if not is_grouplike(A, a):
        raise AssertionError("distinguished a is not group-like")
    return DistinguishedGroupLikes(make_grouplike(D, alpha), make_grouplike(A, a), pair)


def verify_radford(A: WeakHopfAlgebra, pair: DualIntegralPair | None = None) -> bool:
    """S^4(h) = a^{-1} (alpha -> h <- alpha^{-1}) a on every basis element."""
    dg = distinguished_grouplikes(A, pair)
    S4 = s_squared(A).dot(s_squared(A))
    for i in range(A.n):
        inner = A.hit_right(A.hit(dg.alpha.element, A.e(i)), dg.alpha.inverse)
        rhs = A.mul(A.mul(dg.a.inverse, inner), dg.a.element)
        if not _compare(S4[:, i], rhs)[0]:
            return False
    return True


# ------------------------------------------------------ first trace formula

def dual_bases_trace(A: WeakHopfAlgebra, T, pair: DualIntegralPair) -> Fraction:
    """<lambda, T(S^{-1}(l_1)) l_2>."""
    Sinv = A.cached("Sinv", lambda: q_inverse(A.S))
    Dl = A.comul(pair.ell)
    total = Fraction(0)
    TS = T.dot(Sinv)
    for a, b in zip(*np.nonzero(Dl != 0)):
        total += Dl[a, b] * pair.lam.dot(A.mul(TS[:, a], A.e(b)))
    return total


def trace_formula_1(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, n_random: int = 5,
                    pair: DualIntegralPair | None = None) -> Report:
    pair = pair or default_pair(A, seed)
    D = dual(A)
    rep = Report("first trace formula")
    tr = trace_S2(A)
    rhs = D.eps_s(pair.lam).dot(A.eps_s(pair.ell))
    rep.add("Tr(S^2|A) = <eps_s(lambda), eps_s(l)>", tr == rhs, [str(tr), str(rhs)])
    rng = random.Random(seed)
    for k in range(n_random):
        T = qarray([[rng.randint(-5, 5) for _ in range(A.n)] for _ in range(A.n)])
        lhs = sum(T.diagonal(), Fraction(0))
        val = dual_bases_trace(A, T, pair)
        rep.add(f"dual bases identity, random T #{k + 1}", lhs == val, [str(lhs), str(val)])
    return rep


# -------------------------------------------------------------- unimodularity

def is_unimodular(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED) -> bool:
    return _nondegenerate_in(A, two_sided_integrals(A), seed) is not None


def s_invariant_integrals(A: WeakHopfAlgebra) -> Subspace:
    I = integral_space(A, "left").space
    fixed = Subspace.span(q_nullspace(A.S - qeye(A.n)), A.n)
    return I.intersect(fixed)


def s_invariant_integral_dim_check(A: WeakHopfAlgebra) -> bool:
    """dim{l in left integrals : S(l) = l} = dim(A_t meet Z(A)) for unimodular A."""
    if not is_unimodular(A):
        raise ValueError("algebra is not unimodular")
    return s_invariant_integrals(A).dim == center(A).intersect(bases(A)[0]).dim
