"""Module and comodule algebras over a weak Hopf algebra: axiom checks,
stability of the Jacobson radical, the Grothendieck module K_0(M) and
Frobenius-Perron dimensions of irreducible M-modules."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import FDAlgebra, Subspace, _compare
from .builders import DEFAULT_DIM_CAP, _decode, parse_group
from .core import WeakHopfAlgebra, bases, dual
from .errors import (
    Decomposable,
    InvalidParams,
    NotIntegral,
    NotPseudoUnitary,
    NotSemisimpleM,
    ParseError,
    SizeLimitExceeded,
)
from .integrals import Report
from .numerics import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Tolerances,
    is_exact,
    perron,
    q,
    q_nullspace,
    q_str,
    qarray,
    qzeros,
    round_int,
    to_complex,
)
from .repcat import algebra_wedderburn, dimension_data, fp_character, fusion_ring, is_pseudounitary
from .wedderburn import wedderburn


@dataclass(frozen=True, eq=False)
class ModuleAlgebra:
    """Left A-module algebra; action[h, i, j] is the coefficient of m_j in e_h . m_i."""

    alg: FDAlgebra
    action: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.alg.dim

    def T(self, h) -> np.ndarray:
        """Matrix of x -> h . x."""
        if is_exact(h):
            return np.einsum("h,hij->ji", h, self.action)
        return np.einsum("h,hij->ji", to_complex(h), to_complex(self.action))

    def act(self, h, m):
        return self.T(h).dot(m)


@dataclass(frozen=True, eq=False)
class ComoduleAlgebra:
    """Left A-comodule algebra; coaction[i, h, j] is the coefficient of e_h (x) m_j in delta(m_i)."""

    alg: FDAlgebra
    coaction: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.alg.dim

    def delta(self, m) -> np.ndarray:
        """delta(m) as an (dim A) x (dim M) coefficient matrix."""
        if is_exact(m):
            return np.tensordot(m, self.coaction, axes=1)
        return np.tensordot(to_complex(m), to_complex(self.coaction), axes=1)


@dataclass(frozen=True, eq=False)
class RightModuleAlgebra:
    """Right module algebra; action[i, p, j] is the coefficient of m_j in m_i . e_p."""

    alg: FDAlgebra
    action: np.ndarray
    label: str = ""

    def T(self, phi) -> np.ndarray:
        """Matrix of x -> x . phi."""
        if is_exact(phi):
            return np.einsum("p,ipj->ji", phi, self.action)
        return np.einsum("p,ipj->ji", to_complex(phi), to_complex(self.action))


def _witness(ok_w):
    ok, w = ok_w
    return ok, (list(w) if w is not None else None)


# ------------------------------------------------------------------ checks

def verify_module_algebra(A: WeakHopfAlgebra, M: ModuleAlgebra) -> Report:
    n, m = A.n, M.dim
    a, Mm = M.action, M.alg.mult
    rep = Report(f"module algebra {M.label}".strip())
    if a.shape != (n, m, m):
        rep.add("action tensor shape", False, [list(a.shape), [n, m, m]])
        return rep
    rep.add("M is associative", *_witness(M.alg.is_associative()))
    rep.add("M is unital", *_witness(M.alg.is_unital()))
    # 1 . m = m and (g h) . m = g . (h . m)
    rep.add("1 . m = m", *_witness(_compare(np.einsum("h,hij->ij", A.unit, a), np.eye(m, dtype=int))))
    lhs = np.einsum("ghk,kij->ghij", A.mult, a)
    rhs = np.einsum("hip,gpj->ghij", a, a)
    rep.add("(g h) . m = g . (h . m)", *_witness(_compare(lhs, rhs)))
    # h . (x y) = (h_1 . x)(h_2 . y)
    lhs = np.einsum("xyr,hrj->hxyj", Mm, a)
    rhs = np.einsum("hab,axp,byq,pqj->hxyj", A.comult, a, a, Mm)
    rep.add("h . (x y) = (h_1 . x)(h_2 . y)", *_witness(_compare(lhs, rhs)))
    # h . 1 = eps_t(h) . 1
    one = M.alg.unit
    lhs = np.einsum("i,hij->hj", one, a)
    rhs = np.einsum("gh,i,gij->hj", A.eps_t_matrix, one, a)
    rep.add("h . 1 = eps_t(h) . 1", *_witness(_compare(lhs, rhs)))
    return rep


def verify_comodule_algebra(A: WeakHopfAlgebra, M: ComoduleAlgebra) -> Report:
    n, m = A.n, M.dim
    c, Mm = M.coaction, M.alg.mult
    rep = Report(f"comodule algebra {M.label}".strip())
    if c.shape != (m, n, m):
        rep.add("coaction tensor shape", False, [list(c.shape), [m, n, m]])
        return rep
    rep.add("M is associative", *_witness(M.alg.is_associative()))
    rep.add("M is unital", *_witness(M.alg.is_unital()))
    rep.add("(eps (x) id) delta = id",
            *_witness(_compare(np.einsum("h,ihj->ij", A.counit, c), np.eye(m, dtype=int))))
    lhs = np.einsum("ihj,hab->iabj", c, A.comult)
    rhs = np.einsum("iak,kbj->iabj", c, c)
    rep.add("(Delta (x) id) delta = (id (x) delta) delta", *_witness(_compare(lhs, rhs)))
    lhs = np.einsum("xyr,rhj->xyhj", Mm, c)
    rhs = np.einsum("xas,ybt,abh,stj->xyhj", c, c, A.mult, Mm)
    rep.add("delta(x y) = delta(x) delta(y)", *_witness(_compare(lhs, rhs)))
    d1 = M.delta(M.alg.unit)
    rep.add("delta(1) = (eps_s (x) id) delta(1)", *_witness(_compare(d1, A.eps_s_matrix.dot(d1))))
    return rep


def comodule_to_module(A: WeakHopfAlgebra, M: ComoduleAlgebra) -> RightModuleAlgebra:
    """Right A*-module algebra m . phi = <phi, m_I> m_II (phi in the dual basis)."""
    return RightModuleAlgebra(M.alg, M.coaction.copy(), M.label)


def verify_right_module_algebra(D: WeakHopfAlgebra, M: RightModuleAlgebra) -> Report:
    """Mirrored module-algebra identities for a right D-module algebra."""
    n, m = D.n, M.alg.dim
    r, Mm = M.action, M.alg.mult
    rep = Report(f"right module algebra {M.label}".strip())
    if r.shape != (m, n, m):
        rep.add("action tensor shape", False, [list(r.shape), [m, n, m]])
        return rep
    rep.add("m . 1 = m", *_witness(_compare(np.einsum("p,ipj->ij", D.unit, r), np.eye(m, dtype=int))))
    lhs = np.einsum("pqs,isj->ipqj", D.mult, r)
    rhs = np.einsum("ipk,kqj->ipqj", r, r)
    rep.add("m . (phi psi) = (m . phi) . psi", *_witness(_compare(lhs, rhs)))
    lhs = np.einsum("xyk,kpj->xypj", Mm, r)
    rhs = np.einsum("pab,xas,ybt,stj->xypj", D.comult, r, r, Mm)
    rep.add("(x y) . phi = (x . phi_1)(y . phi_2)", *_witness(_compare(lhs, rhs)))
    one = M.alg.unit
    lhs = np.einsum("i,ipj->pj", one, r)
    rhs = np.einsum("qp,i,iqj->pj", D.eps_s_matrix, one, r)
    rep.add("1 . phi = 1 . eps_s(phi)", *_witness(_compare(lhs, rhs)))
    return rep


# --------------------------------------------------------- radical stability

def jacobson_radical(alg: FDAlgebra) -> Subspace:
    """Radical of the regular trace form (characteristic zero)."""
    n = alg.dim
    return Subspace.span(q_nullspace(alg.trace_form()), n) if n else Subspace(0, qzeros((0, 0)))


def _left_mult_space(M: FDAlgebra, space: Subspace):
    out = []
    for v in space.vectors():
        for i in range(M.dim):
            e = M.basis_vector(i)
            out.append(M.mul(e, v))
            out.append(M.mul(v, e))
    return out


def stable_span(A: WeakHopfAlgebra, M: ModuleAlgebra, I: Subspace) -> Subspace:
    """A . I as a subspace of M."""
    vecs = [M.act(A.e(h), v) for h in range(A.n) for v in I.vectors()]
    return Subspace.span(vecs, M.dim) if vecs else Subspace(M.dim, qzeros((M.dim, 0)))


def ideal_stability_check(A: WeakHopfAlgebra, M: ModuleAlgebra, I: Subspace) -> Report:
    """A . I is an A-stable two-sided ideal whenever I is a two-sided ideal."""
    rep = Report("A . I is an A-stable ideal")
    rep.add("I is a two-sided ideal", all(I.contains(x) for x in _left_mult_space(M.alg, I)))
    AI = stable_span(A, M, I)
    rep.add("A . I is A-stable", AI.contains_subspace(stable_span(A, M, AI)))
    rep.add("A . I is a two-sided ideal", all(AI.contains(x) for x in _left_mult_space(M.alg, AI)))
    return rep


def lrt_identities(A: WeakHopfAlgebra, M: ModuleAlgebra) -> Report:
    """T(y) = R(y.1) on A_s, T(z) = L(z.1) on A_t, L(h.m) = T(h_1) L(m) T(S(h_2))."""
    alg = M.alg
    one = alg.unit
    At, As = bases(A)
    rep = Report("L, R, T identities")
    ok = all(_compare(M.T(y), alg.right_matrix(M.act(y, one)))[0] for y in As.vectors())
    rep.add("T(y) = R(y . 1) for y in A_s", ok)
    ok = all(_compare(M.T(z), alg.left_matrix(M.act(z, one)))[0] for z in At.vectors())
    rep.add("T(z) = L(z . 1) for z in A_t", ok)
    Ts = [M.T(A.e(h)) for h in range(A.n)]
    TS = [M.T(A.S[:, h]) for h in range(A.n)]
    ok = True
    for h in range(A.n):
        D = A.comult[h]
        pairs = list(zip(*np.nonzero(D != 0)))
        for k in range(alg.dim):
            Lm = alg.left_matrix(alg.basis_vector(k))
            lhs = alg.left_matrix(M.act(A.e(h), alg.basis_vector(k)))
            rhs = qzeros(lhs.shape)
            for a, b in pairs:
                rhs = rhs + D[a, b] * Ts[a].dot(Lm).dot(TS[b])
            if not _compare(lhs, rhs)[0]:
                ok = False
                break
        if not ok:
            break
    rep.add("L(h . m) = T(h_1) L(m) T(S(h_2))", ok)
    return rep


@dataclass
class RadicalStability:
    radical: Subspace
    AJ: Subspace
    report: Report

    @property
    def verdict(self) -> bool:
        return self.report.verdict

    def to_dict(self) -> dict:
        def basis(sp):
            return [[q_str(x) for x in v] for v in sp.vectors()]

        out = self.report.to_dict()
        out["radical"] = basis(self.radical)
        out["A.J"] = basis(self.AJ)
        return out


def radical_stability(A: WeakHopfAlgebra, M: ModuleAlgebra, seed: int = DEFAULT_SEED,
                      tol: Tolerances = DEFAULT_TOL) -> RadicalStability:
    if not is_pseudounitary(A, seed, tol):
        raise NotPseudoUnitary(f"{A.label or 'algebra'} is not pseudo-unitary")
    J = jacobson_radical(M.alg)
    AJ = stable_span(A, M, J)
    rep = Report("Jacobson radical is A-stable")
    rep.add("A . J(M) is contained in J(M)", J.contains_subspace(AJ), [AJ.dim, J.dim])
    rep.add("A . J(M) = J(M)", AJ == J)
    for e in ideal_stability_check(A, M, J).entries + lrt_identities(A, M).entries:
        rep.entries.append(e)
    return RadicalStability(J, AJ, rep)


def verify_radical_stability(A: WeakHopfAlgebra, M: ModuleAlgebra, seed: int = DEFAULT_SEED,
                             tol: Tolerances = DEFAULT_TOL) -> bool:
    return radical_stability(A, M, seed, tol).verdict


# ------------------------------------------------------------ K_0(M)

@dataclass(frozen=True, eq=False)
class K0ModuleData:
    xi: np.ndarray  # t x dim M complex rows, characters of irreducible M-modules
    dims: tuple[int, ...]
    action: np.ndarray  # n x t x t nonnegative integers, [chi_j]
    fp_xi: np.ndarray
    FPdimM: float
    perron_unique: bool

    def to_dict(self) -> dict:
        return {
            "rank": len(self.dims),
            "dims": list(self.dims),
            "action": self.action.tolist(),
            "FPdim_M_k": [round(float(x), 10) + 0.0 for x in self.fp_xi],
            "FPdimM": round(float(self.FPdimM), 10) + 0.0,
            "perron_unique": self.perron_unique,
        }


def _blocks_exact(W) -> bool:
    return all(b.exact_idempotent is not None for b in W.blocks)


def _component_count(M: ComoduleAlgebra, W, tol: Tolerances) -> int:
    """Connected components of the graph k - l where delta(z_k M) meets A (x) z_l M."""
    t, alg = len(W), M.alg
    exact = _blocks_exact(W)
    zs = [b.z for b in W.blocks]
    Ls = [alg.left_matrix(z) if exact else to_complex(alg.left_matrix(z)) for z in zs]
    adj = [[False] * t for _ in range(t)]
    for k in range(t):
        for b in range(alg.dim):
            x = alg.mul(zs[k], alg.basis_vector(b))
            D = M.delta(x)
            for l in range(t):
                part = D.dot(Ls[l].T)
                nz = any(v != 0 for v in part.reshape(-1)) if exact else \
                    float(np.max(np.abs(part))) > tol.check * alg.dim
                if nz:
                    adj[k][l] = adj[l][k] = True
    seen, count = set(), 0
    for s in range(t):
        if s in seen:
            continue
        count += 1
        stack = [s]
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            stack.extend(l for l in range(t) if adj[k][l] and l not in seen)
    return count


def k0_module(A: WeakHopfAlgebra, M: ComoduleAlgebra, seed: int = DEFAULT_SEED,
              tol: Tolerances = DEFAULT_TOL) -> K0ModuleData:
    if jacobson_radical(M.alg).dim:
        raise NotSemisimpleM(f"{M.label or 'comodule algebra'} is not semisimple")
    WM = wedderburn(M.alg, seed, tol)
    if _component_count(M, WM, tol) > 1:
        raise Decomposable("comodule algebra splits along a coaction-stable central idempotent")
    WA = algebra_wedderburn(A, seed, tol)
    F = fusion_ring(A, seed, tol)
    t = len(WM)
    xi = WM.characters
    chis = WA.characters
    deltas = [to_complex(M.delta(b.idempotent)) for b in WM.blocks]
    action = np.zeros((F.rank, t, t), dtype=np.int64)
    for j in range(F.rank):
        for k in range(t):
            for i in range(t):
                val = chis[j] @ deltas[i] @ xi[k] / WM.dims[i]
                r = round_int(val, tol)
                if r is None or r < 0:
                    raise NotIntegral(f"K_0(M) action coefficient {val} is not a nonnegative integer")
                action[j, i, k] = r
    # xi_k(1 . w) with w = eps_s(rho) in A*
    rho = fp_character(F, WA, tol)
    w = dual(A).eps_s(to_complex(rho))
    one_w = to_complex(M.delta(M.alg.unit)).T @ w
    fp = np.array([complex(x @ one_w) for x in xi])
    if np.any(np.abs(fp.imag) > tol.check * max(1.0, float(np.max(np.abs(fp))))) or np.any(fp.real <= tol.check):
        raise NotIntegral(f"FP dimensions of M are not positive reals: {fp}")
    fp = fp.real
    f = dimension_data(A, seed, tol).f
    scale = tol.check * max(1.0, float(np.max(fp))) * max(1.0, float(np.max(f)))
    for j in range(F.rank):
        if float(np.max(np.abs(action[j] @ fp - f[j] * fp))) > scale * t:
            raise NotIntegral("xi_f is not a common Frobenius-Perron eigenvector")
    # uniqueness: a strictly positive [chi_V] pins the eigenvector down
    B = action.sum(axis=0)
    P = np.linalg.matrix_power(np.eye(t, dtype=np.int64) + B, max(t - 1, 1))
    unique = bool(np.all(P > 0))
    if unique:
        _, vec = perron(P.astype(float), tol)
        vec = np.abs(vec) / np.linalg.norm(vec)
        ref = fp / np.linalg.norm(fp)
        if float(np.max(np.abs(vec - ref))) > tol.check * t:
            raise NotIntegral("FP dimensions of M disagree with the Perron eigenvector")
    return K0ModuleData(xi, WM.dims, action, fp, float(np.sum(fp**2)), unique)


@dataclass
class OrbitReport:
    ratios: np.ndarray  # FPdim(A) FPdim(M_i) FPdim(M_k) / FPdim(M)
    expansion: np.ndarray  # coefficient of xi_i in rho xi_k from the integer action
    verdicts: list
    agree: bool

    @property
    def verdict(self) -> bool:
        return self.agree

    def to_dict(self) -> dict:
        return {
            "ratios": [[round(float(x), 10) + 0.0 for x in row] for row in self.ratios],
            "expansion": [[round(float(x), 10) + 0.0 for x in row] for row in self.expansion],
            "verdicts": self.verdicts,
            "agree": self.agree,
        }


def orbit_theorem_check(A: WeakHopfAlgebra, M: ComoduleAlgebra, seed: int = DEFAULT_SEED,
                        tol: Tolerances = DEFAULT_TOL) -> OrbitReport:
    K = k0_module(A, M, seed, tol)
    D = dimension_data(A, seed, tol)
    r = D.FPdimA * np.outer(K.fp_xi, K.fp_xi) / K.FPdimM
    expansion = np.einsum("j,jik->ik", D.f, K.action)
    agree = bool(float(np.max(np.abs(r - expansion))) <= tol.check * max(1.0, float(np.max(r))) * len(K.dims))
    verdicts = []
    for row in r:
        out = []
        for x in row:
            m = round_int(x, tol)
            out.append(f"Integer({m})" if m is not None else "UnverifiedAlgebraicInteger")
        verdicts.append(out)
    return OrbitReport(r, expansion, verdicts, agree)


# ------------------------------------------------------------ constructors

def _group_data(name: str):
    G = parse_group(name)
    basis = G.ordered_morphisms()
    return G, basis, {g: i for i, g in enumerate(basis)}


def _mul_table(G, basis):
    return {(g, h): G.compose[(g, h)] for g in basis for h in basis}


def _sign(G, name: str):
    if name.upper().startswith("Z"):
        n = len(G.morphisms)
        if n % 2:
            raise InvalidParams("odd cyclic groups have no sign character")
        return {g: (-1) ** int(g) for g in G.morphisms}
    out = {}
    for g in G.morphisms:
        p = [int(c) for c in g]
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        out[g] = (-1) ** inv
    return out


def dual_numbers(group: str = "Z2") -> ModuleAlgebra:
    """k[x]/(x^2) over k[G] with g . x = sign(g) x."""
    G, basis, idx = _group_data(group)
    mult = qzeros((2, 2, 2))
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = q(1)
    sign = _sign(G, group)
    a = qzeros((len(basis), 2, 2))
    for g in basis:
        a[idx[g], 0, 0] = q(1)
        a[idx[g], 1, 1] = q(sign[g])
    return ModuleAlgebra(FDAlgebra(mult, qarray([1, 0]), "k[x]/(x^2)"), a, "k[x]/(x^2)")


def standard_rep_module(n: int = 3) -> ModuleAlgebra:
    """k[x_1..x_{n-1}]/(x)^2 over k[S_n], S_n acting on the degree-one part by the
    standard representation in the basis e_i - e_{i+1}."""
    G, basis, idx = _group_data(f"S{n}")
    m = n  # 1, x_1, ..., x_{n-1}
    mult = qzeros((m, m, m))
    for i in range(m):
        mult[0, i, i] = mult[i, 0, i] = q(1)
    a = qzeros((len(basis), m, m))
    for g in basis:
        p = [int(c) for c in g]
        a[idx[g], 0, 0] = q(1)
        for i in range(n - 1):
            v = [0] * n
            v[p[i] - 1] += 1
            v[p[i + 1] - 1] -= 1
            # coordinates in e_1 - e_2, ..., e_{n-1} - e_n
            for k in range(n - 1):
                a[idx[g], i + 1, k + 1] = q(sum(v[: k + 1]))
    label = f"k[x_1..x_{n - 1}]/(x)^2"
    return ModuleAlgebra(FDAlgebra(mult, qarray([1] + [0] * (m - 1)), label), a, label)


def target_module(A: WeakHopfAlgebra) -> ModuleAlgebra:
    """A_t with h . z = eps_t(h z)."""
    At = bases(A)[0]
    B = At.vectors()
    k = At.dim
    a = qzeros((A.n, k, k))
    for h in range(A.n):
        for i, z in enumerate(B):
            a[h, i, :] = At.coordinates(A.eps_t(A.mul(A.e(h), z)))
    return ModuleAlgebra(A.algebra.subalgebra(At, "A_t"), a, "A_t")


def target_comodule(A: WeakHopfAlgebra) -> ComoduleAlgebra:
    """A_t with delta = Delta restricted to A_t."""
    At = bases(A)[0]
    k = At.dim
    c = qzeros((k, A.n, k))
    for i, z in enumerate(At.vectors()):
        D = A.comul(z)
        for h in range(A.n):
            c[i, h, :] = At.coordinates(D[h])
    return ComoduleAlgebra(A.algebra.subalgebra(At, "A_t"), c, "A_t")


def _closure(G, gens) -> list[str]:
    e = G.identity[G.objects[0]]
    H = {e}
    frontier = [e]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.compose[(x, g)]
            if y not in H:
                H.add(y)
                frontier.append(y)
    return sorted(H, key=G.ordered_morphisms().index)


def subgroup_algebra(group: str, generators) -> ComoduleAlgebra:
    """k[H] for H = <generators> <= G, with delta(h) = h (x) h over k[G]."""
    G, basis, idx = _group_data(group)
    for g in generators:
        if g not in idx:
            raise InvalidParams(f"{g!r} is not an element of {group}")
    H = _closure(G, generators)
    hidx = {h: i for i, h in enumerate(H)}
    m = len(H)
    mult = qzeros((m, m, m))
    for x in H:
        for y in H:
            mult[hidx[x], hidx[y], hidx[G.compose[(x, y)]]] = q(1)
    unit = qzeros(m)
    unit[hidx[G.identity[G.objects[0]]]] = q(1)
    c = qzeros((m, len(basis), m))
    for h in H:
        c[hidx[h], idx[h], hidx[h]] = q(1)
    label = f"k[<{','.join(generators)}>]"
    return ComoduleAlgebra(FDAlgebra(mult, unit, label), c, label)


def coset_algebra(group: str, generators) -> ComoduleAlgebra:
    """k^{G/H} over k^G with delta(d_p) = sum_g d_g (x) d_{g^-1 p}."""
    G, basis, idx = _group_data(group)
    for g in generators:
        if g not in idx:
            raise InvalidParams(f"{g!r} is not an element of {group}")
    H = _closure(G, generators)
    cosets = []
    for g in basis:
        cs = frozenset(G.compose[(g, h)] for h in H)
        if cs not in cosets:
            cosets.append(cs)
    cidx = {x: i for i, cs in enumerate(cosets) for x in cs}
    m = len(cosets)
    mult = qzeros((m, m, m))
    for i in range(m):
        mult[i, i, i] = q(1)
    c = qzeros((m, len(basis), m))
    for i, cs in enumerate(cosets):
        p = min(cs)
        for g in basis:
            c[i, idx[g], cidx[G.compose[(G.inverse[g], p)]]] = q(1)
    label = f"k^({group}/<{','.join(generators)}>)"
    return ComoduleAlgebra(FDAlgebra(mult, qarray([1] * m), label), c, label)


# ---------------------------------------------------------------- JSON I/O

def _enc(arr):
    return np.vectorize(q_str, otypes=[object])(arr).tolist() if arr.size else arr.tolist()


def module_to_json_dict(M) -> dict:
    out = {"dim": M.alg.dim, "label": M.label, "mult": _enc(M.alg.mult), "unit": _enc(M.alg.unit)}
    if isinstance(M, ModuleAlgebra):
        out["action"] = _enc(M.action)
    else:
        out["coaction"] = _enc(M.coaction)
    return out


def module_dumps(M) -> str:
    return json.dumps(module_to_json_dict(M), separators=(",", ":")) + "\n"


def module_save(M, path) -> None:
    Path(path).write_text(module_dumps(M))


def module_loads(text: str, A: WeakHopfAlgebra, dim_cap: int = DEFAULT_DIM_CAP):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    m = data.get("dim")
    if not isinstance(m, int) or m < 1:
        raise ParseError("dim must be a positive integer", field="dim")
    if m > dim_cap:
        raise SizeLimitExceeded(f"dimension {m} exceeds the cap {dim_cap}")
    for key in ("mult", "unit"):
        if key not in data:
            raise ParseError("missing field", field=key)
    alg = FDAlgebra(_decode(data["mult"], (m, m, m), "mult"), _decode(data["unit"], (m,), "unit"),
                    data.get("label", ""))
    label = data.get("label", "")
    if "action" in data and "coaction" not in data:
        return ModuleAlgebra(alg, _decode(data["action"], (A.n, m, m), "action"), label)
    if "coaction" in data and "action" not in data:
        return ComoduleAlgebra(alg, _decode(data["coaction"], (m, A.n, m), "coaction"), label)
    raise ParseError("exactly one of action or coaction is required", field="action")


def module_load(path, A: WeakHopfAlgebra, dim_cap: int = DEFAULT_DIM_CAP):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return module_loads(text, A, dim_cap)
