"""Representation theory of a semisimple weak Hopf algebra: characters,
fusion ring, inclusion matrix of A_s in A, dimensions, Frobenius-Perron
element and pivotal structure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import _compare
from .core import (
    GroupLike,
    WeakHopfAlgebra,
    bases,
    connectivity,
    dual,
    is_grouplike,
    is_trivial,
    make_grouplike,
    s2_eigenvalues,
    s_squared,
)
from .errors import (
    EquivalenceViolated,
    NotConnected,
    NotIntegral,
    NotPivotal,
    NotPseudoUnitary,
    NotSemisimple,
)
from .integrals import Report, source_idempotents, trace_S2
from .numerics import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Tolerances,
    eig_decompose,
    is_exact,
    perron,
    rationalize,
    round_int,
    to_complex,
)
from .wedderburn import Block, WedderburnData, wedderburn


def algebra_wedderburn(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> WedderburnData:
    return wedderburn(A.algebra, seed, tol)


def trivial_character(A: WeakHopfAlgebra) -> np.ndarray:
    """chi_1(h) = eps(h_1 h_2), the character of the trivial module A_t."""
    return A.cached("chi1", lambda: np.einsum("iab,ab->i", A.comult, A.pairing))


def character_product(A: WeakHopfAlgebra, chi, psi) -> np.ndarray:
    """(chi psi)(h) = chi(h_1) psi(h_2)."""
    return np.einsum("iab,a,b->i", A.ccomult, to_complex(chi), to_complex(psi))


# ------------------------------------------------------------------ fusion

@dataclass(frozen=True, eq=False)
class FusionRing:
    rank: int
    labels: tuple[str, ...]
    N: np.ndarray  # N[i, j, k]: multiplicity of chi_k in chi_i chi_j
    star: tuple[int, ...]
    unit: int

    def left_matrix(self, i: int) -> np.ndarray:
        """Matrix of chi_i * (.) in the basis of irreducibles: [k, j] = N[i, j, k]."""
        return self.N[i].T.copy()

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "labels": list(self.labels),
            "unit": self.unit,
            "star": list(self.star),
            "N": self.N.tolist(),
        }


def _validate_fusion(F: FusionRing):
    n, N, u = F.rank, F.N, F.unit
    if (N < 0).any():
        raise NotIntegral("negative fusion multiplicity")
    eye = np.eye(n, dtype=np.int64)
    if not (np.array_equal(N[u], eye) and np.array_equal(N[:, u, :], eye)):
        raise EquivalenceViolated("fusion unit law fails")
    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    if not np.array_equal(lhs, rhs):
        raise EquivalenceViolated("fusion product is not associative")
    s = np.array(F.star)
    if not np.array_equal(s[s], np.arange(n)):
        raise EquivalenceViolated("duality is not an involution")
    # (chi_i chi_j)* = chi_j* chi_i*
    if not np.array_equal(N[:, :, s], N.transpose(1, 0, 2)[s][:, s]):
        raise EquivalenceViolated("duality is not an anti-automorphism")
    for i in range(n):
        for j in range(n):
            if N[i, s[j], u] != (1 if i == j else 0):
                raise EquivalenceViolated("unit multiplicity pairing is not the duality")


def _match(rows: np.ndarray, target: np.ndarray, tol: float) -> int:
    hits = [j for j, r in enumerate(rows) if float(np.max(np.abs(r - target))) <= tol]
    if len(hits) != 1:
        raise EquivalenceViolated("character does not match a unique irreducible")
    return hits[0]


def fusion_ring(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> FusionRing:
    key = ("fusion", seed, tol)
    if key in A._cache:
        return A._cache[key]
    if not connectivity(A).connected:
        raise NotConnected(f"{A.label or 'algebra'} is not connected; the trivial module is reducible")
    W = algebra_wedderburn(A, seed, tol)
    n = len(W)
    chars = W.characters
    scale = tol.check * A.n * max(1.0, float(np.max(np.abs(chars))))
    N = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            prod = character_product(A, chars[i], chars[j])
            for k, b in enumerate(W.blocks):
                val = (prod @ b.idempotent) / b.dim_V
                m = round_int(val, tol)
                if m is None:
                    raise NotIntegral(f"fusion multiplicity N[{i},{j},{k}] = {val} is not an integer")
                N[i, j, k] = m
    S = to_complex(A.S)
    star = tuple(_match(chars, chars[j] @ S, scale) for j in range(n))
    unit = _match(chars, to_complex(trivial_character(A)), scale)
    eye = np.eye(n, dtype=np.int64)
    units = [i for i in range(n) if np.array_equal(N[i], eye) and np.array_equal(N[:, i, :], eye)]
    if units != [unit]:
        raise EquivalenceViolated("trivial character is not the fusion unit")
    F = FusionRing(n, tuple(f"V{j + 1}" for j in range(n)), N, star, unit)
    _validate_fusion(F)
    A._cache[key] = F
    return F


def fp_dimensions(F: FusionRing, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    f = np.array([perron(F.left_matrix(j), tol)[0] for j in range(F.rank)])
    # snap integral values so reports do not carry iteration noise
    f = np.array([float(round(x)) if abs(x - round(x)) <= tol.check * max(1.0, x) else x for x in f])
    n = F.rank
    for i in range(n):
        for j in range(n):
            lhs = f[i] * f[j]
            rhs = float(F.N[i, j] @ f)
            if abs(lhs - rhs) > tol.check * max(1.0, lhs):
                raise EquivalenceViolated("FP dimensions are not multiplicative")
    if float(np.max(np.abs(f - f[list(F.star)]))) > tol.check * max(1.0, float(f.max())):
        raise EquivalenceViolated("FP dimension is not invariant under duality")
    return f


def fp_character(F: FusionRing, W: WedderburnData, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """rho = sum_j FPdim(V_j) chi_j as a row on A."""
    f = fp_dimensions(F, tol)
    return f @ W.characters


# --------------------------------------------------------------- inclusion

@dataclass(frozen=True, eq=False)
class InclusionData:
    Lam: np.ndarray  # l x n nonnegative integers
    p: tuple  # primitive central idempotents of A_s in A-coordinates
    n_alpha: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"Lambda": self.Lam.tolist(), "n_alpha": list(self.n_alpha)}


def inclusion_matrix(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> InclusionData:
    W = algebra_wedderburn(A, seed, tol)
    ps = source_idempotents(A, seed, tol)
    Lam = np.zeros((len(ps), len(W)), dtype=np.int64)
    for a, (p, na) in enumerate(ps):
        for j in range(len(W)):
            val = W.character_value(j, p) / na
            m = round_int(val, tol)
            if m is None or m < 0:
                raise NotIntegral(f"inclusion multiplicity {val} is not a nonnegative integer")
            Lam[a, j] = m
    n_alpha = tuple(na for _, na in ps)
    if sum(na * na for na in n_alpha) != bases(A)[1].dim:
        raise EquivalenceViolated("source base blocks do not add up")
    return InclusionData(Lam, tuple(p for p, _ in ps), n_alpha)


# -------------------------------------------------------------- dimensions

@dataclass(frozen=True, eq=False)
class DimensionData:
    d: int
    f: np.ndarray
    sqnorms: np.ndarray
    dimA: Fraction
    FPdimA: float
    mu: float
    dims_V: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "f": self.f.tolist(),
            "sqnorms": self.sqnorms.tolist(),
            "dimA": self.dimA,
            "FPdimA": self.FPdimA,
            "mu": self.mu,
        }


def dimension_data(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> DimensionData:
    key = ("dims", seed, tol)
    if key in A._cache:
        return A._cache[key]
    W = algebra_wedderburn(A, seed, tol)
    F = fusion_ring(A, seed, tol)
    f = fp_dimensions(F, tol)
    d = bases(A)[0].dim
    S2c = to_complex(s_squared(A))
    sq = []
    for b in W.blocks:
        Lz = to_complex(A.algebra.left_matrix(b.z))
        sq.append((np.trace(S2c @ Lz) / d**2).real)
    sq = np.array(sq)
    dimA = trace_S2(A) / d**2
    FPdimA = float(np.sum(f**2))
    mu = float(np.dot(W.dims, f))
    if np.any(sq > f**2 + tol.check * max(1.0, float(np.max(f**2)))):
        raise EquivalenceViolated("squared norm exceeds FPdim squared")
    if float(dimA) > FPdimA + tol.check * FPdimA:
        raise EquivalenceViolated("dim(A) exceeds FPdim(A)")
    if abs(float(np.sum(sq)) - float(dimA)) > tol.check * max(1.0, FPdimA) * A.n:
        raise EquivalenceViolated("squared norms do not add up to dim(A)")
    out = DimensionData(d, f, sq, dimA, FPdimA, mu, W.dims)
    A._cache[key] = out
    return out


def v_vector(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """v_a = <rho, p_a> / (n_a mu(A))."""
    W = algebra_wedderburn(A, seed, tol)
    rho = fp_character(fusion_ring(A, seed, tol), W, tol)
    mu = dimension_data(A, seed, tol).mu
    return np.array([(rho @ to_complex(p)).real / (na * mu) for p, na in source_idempotents(A, seed, tol)])


def verify_LL(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> Report:
    D = dimension_data(A, seed, tol)
    Lam = inclusion_matrix(A, seed, tol).Lam.astype(float)
    v = v_vector(A, seed, tol)
    f, mu = D.f, D.mu
    t = tol.check * max(1.0, mu) * max(1.0, float(f.max()))
    rep = Report("inclusion matrix identities")
    checks = [
        ("Lambda f = mu v", Lam @ f, mu * v),
        ("Lambda^t v = f", Lam.T @ v, f),
        ("Lambda^t Lambda f = mu f", Lam.T @ Lam @ f, mu * f),
        ("Lambda Lambda^t v = mu v", Lam @ Lam.T @ v, mu * v),
    ]
    for name, lhs, rhs in checks:
        err = float(np.max(np.abs(lhs - rhs)))
        rep.add(name, err <= t, err)
    return rep


# ---------------------------------------------------------- FP element of A_s

@dataclass(frozen=True, eq=False)
class FPElement:
    w: np.ndarray  # exact when rational, else complex
    mu: float


def _maybe_exact(x, tol: Tolerances):
    r = rationalize(np.asarray(x, dtype=complex))
    if r is not None and float(np.max(np.abs(to_complex(r) - x))) <= tol.check:
        return r
    return np.asarray(x, dtype=complex)


def fp_element(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> FPElement:
    """w = mu(A)^{-1} (rho -> 1), checked against its defining properties."""
    key = ("fp_element", seed, tol)
    if key in A._cache:
        return A._cache[key]
    W = algebra_wedderburn(A, seed, tol)
    F = fusion_ring(A, seed, tol)
    f = fp_dimensions(F, tol)
    rho = f @ W.characters
    mu = dimension_data(A, seed, tol).mu
    wc = A.hit(rho, to_complex(A.unit)) / mu
    w = _maybe_exact(wc, tol)
    t = tol.check * A.n * max(1.0, float(np.max(np.abs(wc))))
    for j in range(len(W)):
        lhs = A.hit(W.characters[j], wc)
        if float(np.max(np.abs(lhs - f[j] * wc))) > t * max(1.0, f[j]):
            raise EquivalenceViolated(f"Tr_V{j + 1} -> w != FPdim(V{j + 1}) w")
    alg = A.algebra
    Lw = to_complex(alg.left_matrix(w))
    eig = np.linalg.eigvals(Lw)
    if np.any(eig.real <= tol.check) or np.any(np.abs(eig.imag) > tol.check):
        raise EquivalenceViolated("Frobenius-Perron element does not have positive spectrum")
    G = _wSw_inv(A, w)
    Gc = to_complex(G)
    for z in bases(A)[0].vectors():
        zG = to_complex(alg.mul(z, G)) if is_exact(G) else to_complex(alg.left_matrix(z)) @ Gc
        for j in range(len(W)):
            lhs = complex(W.characters[j] @ zG)
            rhs = f[j] * complex(A.eps(z))
            if abs(lhs - rhs) > t * max(1.0, f[j]):
                raise EquivalenceViolated("Tr_V(z w S(w)^{-1}) != FPdim(V) eps(z)")
    out = FPElement(w, mu)
    A._cache[key] = out
    return out


def _wSw_inv(A: WeakHopfAlgebra, w):
    alg = A.algebra
    Sw = A.apply_S(w)
    if is_exact(w):
        return alg.mul(w, alg.inverse(Sw))
    L = to_complex(alg.left_matrix(Sw))
    inv = np.linalg.solve(L, to_complex(A.unit))
    return alg.mul(w, inv)


def w_colinearity(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> bool:
    """w_{A*} and (w_A -> eps) are proportional as rows on A."""
    wA = to_complex(fp_element(A, seed, tol).w)
    wD = to_complex(fp_element(dual(A), seed, tol).w)
    row = to_complex(A.pairing) @ wA  # (w -> eps)(g) = eps(g w)
    M = np.vstack([row, wD])
    sv = np.linalg.svd(M, compute_uv=False)
    return bool(sv[1] <= tol.check * max(1.0, sv[0]))


# ------------------------------------------------------- pseudo-unitarity

def s2_positive(A: WeakHopfAlgebra, tol: Tolerances = DEFAULT_TOL) -> bool:
    eig = s2_eigenvalues(A)
    return bool(np.all(eig.real > tol.check) and np.all(np.abs(eig.imag) <= tol.check))


def is_pseudounitary(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> bool:
    D = dimension_data(A, seed, tol)
    verdict = abs(float(D.dimA) - D.FPdimA) < tol.check * D.FPdimA
    if verdict != s2_positive(A, tol):
        raise EquivalenceViolated(
            f"pseudo-unitarity ({verdict}) disagrees with positivity of the S^2 spectrum")
    return verdict


def conjugation_matches_S2(A: WeakHopfAlgebra, G: GroupLike, tol: Tolerances = DEFAULT_TOL) -> bool:
    alg = A.algebra
    S2 = s_squared(A)
    if is_exact(G.element) and is_exact(G.inverse):
        M = alg.left_matrix(G.element).dot(alg.right_matrix(G.inverse))
        return _compare(M, S2)[0]
    M = to_complex(alg.left_matrix(G.element)) @ to_complex(alg.right_matrix(G.inverse))
    return float(np.max(np.abs(M - to_complex(S2)))) <= tol.check * A.n


def canonical_pivotal(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> GroupLike:
    """G = w S(w)^{-1} for the Frobenius-Perron element w (pseudo-unitary case)."""
    if not is_pseudounitary(A, seed, tol):
        raise NotPseudoUnitary(f"{A.label or 'algebra'} is not pseudo-unitary")
    w = fp_element(A, seed, tol).w
    g = _wSw_inv(A, w)
    if not is_exact(g):
        g = _maybe_exact(g, tol)
    if not is_grouplike(A, g, tol):
        raise EquivalenceViolated("w S(w)^{-1} is not group-like")
    witness = is_trivial(A, g, seed, tol)
    if witness is None:
        raise EquivalenceViolated("canonical pivotal element is not trivial")
    G = make_grouplike(A, g, witness)
    if not conjugation_matches_S2(A, G, tol):
        raise EquivalenceViolated("canonical pivotal element does not implement S^2")
    return G


def quantum_dims(A: WeakHopfAlgebra, G: GroupLike, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    W = algebra_wedderburn(A, seed, tol)
    d = bases(A)[0].dim
    return np.array([W.character_value(j, G.element) / d for j in range(len(W))])


def verify_pivotal(A: WeakHopfAlgebra, G: GroupLike, seed: int = DEFAULT_SEED,
                   tol: Tolerances = DEFAULT_TOL) -> Report:
    if not conjugation_matches_S2(A, G, tol):
        raise NotPivotal("S^2 is not conjugation by G")
    rep = Report("pivotal element")
    rep.add("G is group-like", is_grouplike(A, G.element, tol))
    rep.add("S^2(h) = G h G^{-1}", True)
    dq = quantum_dims(A, G, seed, tol)
    F = fusion_ring(A, seed, tol)
    D = dimension_data(A, seed, tol)
    prod = np.array([dq[j] * dq[F.star[j]] for j in range(F.rank)])
    err = float(np.max(np.abs(prod - D.sqnorms)))
    rep.add("|V|^2 = dim(V) dim(V*)", err <= tol.check * max(1.0, float(np.max(D.f)) ** 2) * A.n, err)
    Ld = inclusion_matrix(A, seed, tol).Lam @ dq
    if float(np.max(np.abs(Ld))) > tol.check:
        rep.add("Lambda d != 0 implies G trivial", is_trivial(A, G.element, seed, tol) is not None)
    else:
        rep.add("Lambda d != 0 implies G trivial", True, "Lambda d = 0")
    return rep
