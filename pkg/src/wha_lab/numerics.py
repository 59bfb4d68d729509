"""Exact rational and complex floating linear algebra kernel.

Exact objects are numpy ``object`` arrays holding :class:`fractions.Fraction`
entries; spectral objects are ordinary ``complex128`` arrays.  Elements of an
algebra are 1-d arrays of coordinates, matrices act on them from the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, NilpotentInput, NoSolution, NumericallyIndistinct

Rational = Fraction

DEFAULT_SEED = int.from_bytes(b"WHA1", "big")


@dataclass(frozen=True)
class Tolerances:
    eig_cluster: float = 1e-8
    int_round: float = 1e-6
    zero: float = 1e-10

    def __post_init__(self):
        if min(self.eig_cluster, self.int_round, self.zero) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.eig_cluster <= self.zero:
            raise ValueError("eig_cluster must exceed zero tolerance")

    @property
    def check(self) -> float:
        """Tolerance used for identities between computed floats."""
        return 10 * self.zero


DEFAULT_TOL = Tolerances()


# ---------------------------------------------------------------- rationals

def q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise TypeError(f"cannot read {x!r} as an exact rational")


def q_str(x: Fraction) -> str:
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qarray(data) -> np.ndarray:
    """Exact object array with Fraction entries."""
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = q(v)
    return arr


def qzeros(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return arr


def qeye(n: int) -> np.ndarray:
    arr = qzeros((n, n))
    for i in range(n):
        arr[i, i] = Fraction(1)
    return arr


def unit_vector(n: int, i: int) -> np.ndarray:
    v = qzeros(n)
    v[i] = Fraction(1)
    return v


def is_exact(arr) -> bool:
    return isinstance(arr, np.ndarray) and arr.dtype == object


def to_complex(arr) -> np.ndarray:
    if is_exact(arr):
        out = np.empty(arr.shape, dtype=complex)
        flat_in = arr.reshape(-1)
        flat_out = out.reshape(-1)
        for i, v in enumerate(flat_in):
            flat_out[i] = complex(v)
        return out
    return np.asarray(arr, dtype=complex)


def is_zero(arr, tol: float | None = None) -> bool:
    """Exact test for object arrays, ``max|x| <= tol`` for float arrays."""
    if is_exact(arr):
        return all(v == 0 for v in np.asarray(arr).reshape(-1))
    arr = np.asarray(arr)
    if arr.size == 0:
        return True
    return float(np.max(np.abs(arr))) <= (DEFAULT_TOL.check if tol is None else tol)


def first_nonzero(arr, tol: float | None = None):
    """Index tuple of the first entry that is not (numerically) zero, or None."""
    arr = np.asarray(arr)
    if is_exact(arr):
        mask = np.vectorize(lambda v: v != 0, otypes=[bool])(arr) if arr.size else np.zeros(arr.shape, bool)
    else:
        mask = np.abs(arr) > (DEFAULT_TOL.check if tol is None else tol)
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def rationalize(vec, tol: float = 1e-9, max_den: int = 10**4):
    """Best rational approximation of a (nearly real) float vector, or None."""
    vec = np.asarray(vec, dtype=complex)
    if vec.size and float(np.max(np.abs(vec.imag))) > tol:
        return None
    out = qzeros(vec.shape)
    flat_in = vec.real.reshape(-1)
    flat_out = out.reshape(-1)
    for i, v in enumerate(flat_in):
        r = Fraction(float(v)).limit_denominator(max_den)
        if abs(float(r) - v) > tol:
            return None
        flat_out[i] = r
    return out


# ------------------------------------------------------- exact elimination

def _integer_rows(A) -> list[list[int]]:
    rows = []
    for row in A:
        row = [q(v) for v in row]
        den = math.lcm(*(v.denominator for v in row)) if row else 1
        rows.append([int(v * den) for v in row])
    return rows


def _bareiss(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination; returns echelon rows and pivot columns."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    M = [list(r) for r in rows]
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        top = M[r]
        for i in range(r + 1, m):
            a = M[i][c]
            row = M[i]
            if a == 0:
                if p != prev:
                    for j in range(c, ncols):
                        quo, rem = divmod(p * row[j], prev)
                        assert rem == 0
                        row[j] = quo
                continue
            for j in range(c, ncols):
                quo, rem = divmod(p * row[j] - a * top[j], prev)
                assert rem == 0, "Bareiss division not exact"
                row[j] = quo
        prev = p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rref(A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (exact) and pivot columns."""
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    m, n = A.shape
    if m == 0 or n == 0:
        return qzeros((0, n)), []
    ech, pivots = _bareiss(_integer_rows(A))
    R = [[Fraction(v) for v in row] for row in ech]
    for i in range(len(R) - 1, -1, -1):
        c = pivots[i]
        p = R[i][c]
        R[i] = [v / p for v in R[i]]
        for k in range(i):
            f = R[k][c]
            if f != 0:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    out = qzeros((len(R), n))
    for i, row in enumerate(R):
        out[i, :] = row
    return out, pivots


def q_rank(A) -> int:
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return 0
    return len(_bareiss(_integer_rows(A))[1])


def q_nullspace(A) -> list[np.ndarray]:
    """Exact basis of the right kernel of ``A`` (empty iff ``A`` is injective)."""
    A = np.asarray(A, dtype=object)
    n = A.shape[1]
    if A.shape[0] == 0:
        return [unit_vector(n, i) for i in range(n)]
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = qzeros(n)
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    return basis


def q_solve(A, b) -> np.ndarray:
    """One exact solution of ``A x = b``; raises :class:`NoSolution` if inconsistent.

    Free variables are set to zero.
    """
    A = np.asarray(A, dtype=object)
    b = np.asarray(b, dtype=object)
    if A.ndim != 2 or b.ndim != 1 or A.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A{A.shape} vs b{b.shape}")
    n = A.shape[1]
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        raise NoSolution("inconsistent linear system")
    x = qzeros(n)
    for i, p in enumerate(pivots):
        x[p] = R[i, n]
    return x


def q_inverse(A) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("q_inverse expects a square matrix")
    R, pivots = rref(np.concatenate([A, qeye(n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise NoSolution("matrix is singular")
    return R[:, n:]


def q_det(A) -> Fraction:
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if n == 0:
        return Fraction(1)
    rows = [[q(v) for v in row] for row in A]
    den = 1
    for row in rows:
        den *= math.lcm(*(v.denominator for v in row))
    M = [list(r) for r in _integer_rows(A)]
    # Bareiss with explicit sign tracking
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        p = M[c][c]
        for i in range(c + 1, n):
            a = M[i][c]
            for j in range(c, n):
                M[i][j] = (p * M[i][j] - a * M[c][j]) // prev
        prev = p
    return Fraction(sign * M[n - 1][n - 1], den)


# ---------------------------------------------------------- spectral layer

def perron(M, tol: Tolerances = DEFAULT_TOL, max_iter: int = 200000) -> tuple[float, np.ndarray]:
    """Largest real eigenvalue of a nonnegative matrix and a nonnegative eigenvector.

    Power iteration on ``M + I`` from the all-ones vector; the shift makes the
    dominant eigenvalue unique in modulus.
    """
    Mf = to_complex(M).real
    n = Mf.shape[0]
    if Mf.shape != (n, n):
        raise ValueError("perron expects a square matrix")
    if (Mf < 0).any():
        raise ValueError("perron expects a nonnegative matrix")
    if n == 0 or float(np.max(np.abs(np.linalg.eigvals(Mf)))) <= tol.zero:
        raise NilpotentInput("all eigenvalues vanish")
    B = Mf + np.eye(n)
    x = np.ones(n) / np.sqrt(n)
    value = 0.0
    for _ in range(max_iter):
        y = B @ x
        x = y / np.linalg.norm(y)
        Mx = Mf @ x
        value = float(x @ Mx)
        if np.linalg.norm(Mx - value * x) <= tol.zero * max(abs(value), 1.0):
            return value, x / x.sum()
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


@dataclass(frozen=True)
class SpectralDecomposition:
    values: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    projections: tuple[np.ndarray, ...]


def cluster_eigenvalues(eigs, tol: Tolerances = DEFAULT_TOL) -> list[list[complex]]:
    """Single-linkage clusters of radius ``eig_cluster``; ambiguous gaps are errors."""
    eigs = [complex(e) for e in eigs]
    n = len(eigs)
    for i in range(n):
        for j in range(i + 1, n):
            d = abs(eigs[i] - eigs[j])
            if tol.eig_cluster / 2 < d < 2 * tol.eig_cluster:
                raise NumericallyIndistinct(
                    f"eigenvalues {eigs[i]:.6g} and {eigs[j]:.6g} are {d:.3g} apart")
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(eigs[i] - eigs[j]) <= tol.eig_cluster:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(eigs[i])
    clusters = list(groups.values())
    clusters.sort(key=lambda c: (round(np.mean(c).real, 8), round(np.mean(c).imag, 8)))
    return clusters


def eig_decompose(M, tol: Tolerances = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigenvalue clusters and spectral projections of a diagonalizable matrix."""
    Mc = to_complex(M)
    n = Mc.shape[0]
    clusters = cluster_eigenvalues(np.linalg.eigvals(Mc), tol)
    centers = [complex(np.mean(c)) for c in clusters]
    eye = np.eye(n, dtype=complex)
    projections = []
    for i, ci in enumerate(centers):
        P = eye.copy()
        for j, cj in enumerate(centers):
            if j != i:
                P = P @ (Mc - cj * eye) / (ci - cj)
        projections.append(P)
    total = sum(projections) if projections else np.zeros((n, n))
    scale = max(1.0, float(np.max(np.abs(Mc)))) if n else 1.0
    if not is_zero(total - eye, tol.check * scale):
        raise NumericallyIndistinct("spectral projections do not resolve the identity")
    for i, Pi in enumerate(projections):
        for j, Pj in enumerate(projections):
            target = Pi if i == j else 0
            if not is_zero(Pi @ Pj - target, tol.check * scale):
                raise NumericallyIndistinct("spectral projections are not orthogonal idempotents")
    return SpectralDecomposition(
        values=tuple(centers),
        multiplicities=tuple(len(c) for c in clusters),
        projections=tuple(projections),
    )


def round_int(x, tol: Tolerances = DEFAULT_TOL) -> int | None:
    """Nearest integer to ``x`` if it is within ``int_round``; otherwise None."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        x = Fraction(x)
        return int(x) if x.denominator == 1 else None
    z = complex(x)
    if abs(z.imag) >= tol.int_round:
        return None
    k = round(z.real)
    return int(k) if abs(z.real - k) < tol.int_round else None
