"""Character algebra, the class equation, the second trace formula and the
positivity criterion for pseudo-unitarity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import FDAlgebra
from .core import WeakHopfAlgebra, bases, connectivity, dual
from .errors import EquationViolated, EquivalenceViolated, NotSemisimple, NumericallyIndistinct
from .integrals import Report, canonical_integral, canonical_integral_in_A, trace_S2
from .numerics import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Tolerances,
    eig_decompose,
    q_det,
    q_rank,
    qarray,
    round_int,
    to_complex,
)
from .repcat import (
    FusionRing,
    algebra_wedderburn,
    dimension_data,
    fp_character,
    fusion_ring,
    is_pseudounitary,
    s2_positive,
    trivial_character,
)
from .wedderburn import wedderburn


@dataclass(frozen=True, eq=False)
class CharacterAlgebra:
    fusion: FusionRing
    form: np.ndarray  # (chi_i, chi_j) = multiplicity of the unit in chi_i chi_j
    algebra: FDAlgebra  # R(A) in the basis of irreducible characters

    @property
    def star(self) -> tuple[int, ...]:
        return self.fusion.star


def character_algebra(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> CharacterAlgebra:
    key = ("character_algebra", seed, tol)
    if key in A._cache:
        return A._cache[key]
    F = fusion_ring(A, seed, tol)
    n, N, u, s = F.rank, F.N, F.unit, F.star
    form = N[:, :, u].copy()
    if not np.array_equal(form, form.T):
        raise EquivalenceViolated("character pairing is not symmetric")
    for i in range(n):
        for j in range(n):
            if form[i, s[j]] != (1 if i == j else 0):
                raise EquivalenceViolated("irreducibles and their duals are not dual bases")
    # (chi phi, psi) = (chi, phi psi)
    lhs = np.einsum("ijm,mk->ijk", N, form)
    rhs = np.einsum("jkm,im->ijk", N, form)
    if not np.array_equal(lhs, rhs):
        raise EquivalenceViolated("character pairing is not associative")
    if q_det(qarray(form.tolist())) == 0:
        raise EquivalenceViolated("character pairing is degenerate")
    unit = np.zeros(n, dtype=np.int64)
    unit[u] = 1
    R = FDAlgebra(qarray(N.tolist()), qarray(unit.tolist()), "R(A)")
    # sum_i chi_i chi_i* is central and invertible
    c = np.zeros(n, dtype=np.int64)
    for i in range(n):
        c += N[i, s[i]]
    cq = qarray(c.tolist())
    Lc, Rc = R.left_matrix(cq), R.right_matrix(cq)
    if not all(v == 0 for v in (Lc - Rc).reshape(-1)) or q_rank(Lc) != n:
        raise EquivalenceViolated("sum of chi_i chi_i* is not central invertible")
    out = CharacterAlgebra(F, form, R)
    A._cache[key] = out
    return out


def as_functional(A: WeakHopfAlgebra, coeffs, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Row on A of the class function sum_j c_j chi_j."""
    W = algebra_wedderburn(A, seed, tol)
    return np.asarray(coeffs, dtype=complex) @ W.characters


def twisted_trace(A: WeakHopfAlgebra, phi) -> complex:
    """Tr(L_phi S^2 on A*) = <phi, l> for the canonical left integral l in A."""
    ell = canonical_integral_in_A(A)
    if isinstance(phi, np.ndarray) and phi.dtype == object:
        return ell.dot(phi)
    return complex(to_complex(ell) @ to_complex(phi))


def unit_coproduct_trace_check(A: WeakHopfAlgebra) -> bool:
    """lambda(1_1 1_2) = Tr(S^2|A)/d, exactly.

    Holds on Hopf algebras and on duals of groupoid algebras, but not on
    groupoid algebras with several objects, where 1_1 1_2 = 1."""
    lam = canonical_integral(A)
    x = np.einsum("ab,abk->k", A.delta_one, A.mult)
    return lam.dot(x) == trace_S2(A) / bases(A)[0].dim


def trivial_character_trace_check(A: WeakHopfAlgebra) -> bool:
    """<chi_1, l> = Tr(S^2|A*)/d, exactly."""
    return twisted_trace(A, trivial_character(A)) == trace_S2(dual(A)) / bases(A)[0].dim


# ----------------------------------------------------------- class equation

@dataclass
class ClassEquationReport:
    idempotents: list  # complex coefficient vectors in the chi basis
    terms: list  # n_i
    dimA: Fraction
    ratios: list
    verdicts: list  # "Integer(m)" or "UnverifiedAlgebraicInteger"

    @property
    def sum(self) -> complex:
        return complex(sum(self.terms))

    def to_dict(self) -> dict:
        def num(z):
            z = complex(z)
            return [round(z.real, 10) + 0.0, round(z.imag, 10) + 0.0]

        return {
            "dimA": str(self.dimA),
            "terms": [num(t) for t in self.terms],
            "ratios": [num(r) for r in self.ratios],
            "verdicts": list(self.verdicts),
            "idempotents": [[num(c) for c in e] for e in self.idempotents],
        }


def _primitive_idempotents(R: FDAlgebra, seed: int, tol: Tolerances) -> list[np.ndarray]:
    """Primitive orthogonal idempotents summing to 1 in a semisimple algebra."""
    W = wedderburn(R, seed, tol)
    rng = np.random.default_rng(seed)
    n = R.dim
    out = []
    for b in W.blocks:
        z = b.idempotent
        m = b.dim_V
        if m == 1:
            out.append(z)
            continue
        Lz = to_complex(R.left_matrix(z))
        U, sv, _ = np.linalg.svd(Lz)
        Q = U[:, : m * m]
        x = rng.standard_normal(n)
        y = R.mul(R.mul(z, x), z)
        M = Q.conj().T @ to_complex(R.left_matrix(y)) @ Q
        spec = eig_decompose(M, tol)
        if len(spec.values) != m or any(k != m for k in spec.multiplicities):
            raise NumericallyIndistinct("block element is not regular semisimple")
        for P in spec.projections:
            out.append(Q @ P @ Q.conj().T @ z)
    total = sum(out)
    if float(np.max(np.abs(total - to_complex(R.unit)))) > tol.check * n:
        raise NumericallyIndistinct("primitive idempotents do not sum to 1")
    for i, e in enumerate(out):
        for j, f in enumerate(out):
            target = e if i == j else 0
            if float(np.max(np.abs(R.mul(e, f) - target))) > tol.check * n * 10:
                raise NumericallyIndistinct("primitive idempotents are not orthogonal")
    return out


def _class_terms(A, CA, seed, tol):
    idem = _primitive_idempotents(CA.algebra, seed, tol)
    d = bases(A)[0].dim
    terms = [twisted_trace(A, as_functional(A, e, seed, tol)) / d for e in idem]
    return idem, terms


def class_equation(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> ClassEquationReport:
    CA = character_algebra(A, seed, tol)
    D = dimension_data(A, seed, tol)
    idem, terms = _class_terms(A, CA, seed, tol)
    dimA = D.dimA
    scale = tol.check * max(1.0, float(dimA)) * A.n
    if abs(sum(terms) - float(dimA)) > scale:
        raise EquationViolated(f"class equation terms sum to {sum(terms)}, not dim(A) = {dimA}")
    if any(abs(t) <= tol.check for t in terms):
        raise EquationViolated("a class equation term vanishes")
    _, terms2 = _class_terms(A, CA, seed + 1, tol)
    key = lambda z: (round(z.real, 6), round(z.imag, 6))
    if len(terms2) != len(terms) or any(
            abs(a - b) > scale for a, b in zip(sorted(terms, key=key), sorted(terms2, key=key))):
        raise EquationViolated("class equation terms depend on the choice of primitive idempotents")
    ratios = [float(dimA) / t for t in terms]
    verdicts = []
    for r in ratios:
        m = round_int(r, tol)
        verdicts.append(f"Integer({m})" if m is not None else "UnverifiedAlgebraicInteger")
    order = sorted(range(len(terms)), key=lambda i: key(terms[i]))
    return ClassEquationReport(
        idempotents=[idem[i] for i in order],
        terms=[terms[i] for i in order],
        dimA=dimA,
        ratios=[ratios[i] for i in order],
        verdicts=[verdicts[i] for i in order],
    )


# ---------------------------------------------------- second trace formula

def second_trace_formula(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> Report:
    W = algebra_wedderburn(A, seed, tol)
    F = fusion_ring(A, seed, tol)
    D = dimension_data(A, seed, tol)
    rho = fp_character(F, W, tol)
    t_rho = twisted_trace(A, rho).real / D.FPdimA
    d = D.d
    rep = Report("second trace formula")
    t = tol.check * max(1.0, D.FPdimA) * A.n
    lhs, rhs = float(D.dimA), (t_rho / d) * D.FPdimA
    rep.add("dim(A) = (t_rho/d) FPdim(A)", abs(lhs - rhs) <= t, [lhs, rhs])
    rep.add("t_rho <= d", t_rho <= d + tol.check, [t_rho, d])
    if is_pseudounitary(A, seed, tol):
        rep.add("pseudo-unitary: t_rho = d", abs(t_rho - d) <= t, [t_rho, d])
    return rep


def t_rho(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> float:
    W = algebra_wedderburn(A, seed, tol)
    rho = fp_character(fusion_ring(A, seed, tol), W, tol)
    return twisted_trace(A, rho).real / dimension_data(A, seed, tol).FPdimA


def positivity_criterion(A: WeakHopfAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL,
                         spectrum_positive: bool | None = None) -> bool:
    """Positive S^2 spectrum iff dim(A) = FPdim(A); disagreement is fatal."""
    D = dimension_data(A, seed, tol)
    pos = s2_positive(A, tol) if spectrum_positive is None else spectrum_positive
    pu = abs(float(D.dimA) - D.FPdimA) < tol.check * D.FPdimA
    if pos != pu:
        raise EquivalenceViolated(
            f"S^2 spectrum positivity ({pos}) disagrees with dim(A) = FPdim(A) ({pu})")
    return pos
