"""Numeric Wedderburn decomposition of a semisimple algebra."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import FDAlgebra, Subspace
from .errors import NotSemisimple, NumericallyIndistinct
from .numerics import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    Tolerances,
    eig_decompose,
    is_zero,
    rationalize,
    to_complex,
)

MAX_ATTEMPTS = 5


@dataclass(frozen=True, eq=False)
class Block:
    idempotent: np.ndarray  # complex coordinates of z_j
    dim_V: int
    character: np.ndarray  # complex row, chi_j(e_k)
    exact_idempotent: np.ndarray | None = None  # Fraction coordinates when z_j is rational

    @property
    def z(self):
        return self.exact_idempotent if self.exact_idempotent is not None else self.idempotent


@dataclass(frozen=True, eq=False)
class WedderburnData:
    blocks: tuple[Block, ...]

    def __len__(self):
        return len(self.blocks)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.dim_V for b in self.blocks)

    @property
    def characters(self) -> np.ndarray:
        return np.array([b.character for b in self.blocks])

    def character_value(self, j: int, x) -> complex:
        return complex(self.blocks[j].character @ to_complex(x))


def _sort_key(block: Block):
    chars = tuple((round(v.real, 6) + 0.0, round(v.imag, 6) + 0.0) for v in block.character)
    return (block.dim_V, chars)


def _random_central(center: Subspace, rng: random.Random) -> np.ndarray:
    coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(center.dim)]
    return center.basis.dot(np.array(coeffs, dtype=object))


def _attempt(alg: FDAlgebra, center: Subspace, seed: int, tol: Tolerances):
    rng = random.Random(seed)
    c = _random_central(center, rng)
    spec = eig_decompose(alg.left_matrix(c), tol)
    if len(spec.values) != center.dim:
        return None
    one = to_complex(alg.unit)
    Ls = [to_complex(alg.left_matrix(alg.basis_vector(k))) for k in range(alg.dim)]
    blocks = []
    for P, mult in zip(spec.projections, spec.multiplicities):
        d = math.isqrt(mult)
        if d * d != mult:
            return None
        z = P @ one
        chi = np.array([np.trace(L @ P) / d for L in Ls])
        exact = rationalize(z)
        if exact is not None:
            ok = all(v == 0 for v in alg.mul(exact, exact) - exact) and center.contains(exact)
            exact = exact if ok else None
        blocks.append(Block(z, d, chi, exact))
    return blocks


def wedderburn(alg: FDAlgebra, seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOL) -> WedderburnData:
    """Central primitive idempotents, block sizes and irreducible characters."""
    key = ("wedderburn", seed, tol)
    if key in alg._cache:
        return alg._cache[key]
    if not alg.is_semisimple():
        raise NotSemisimple(f"{alg.label or 'algebra'} is not semisimple")
    center = alg.center()
    blocks = None
    last_error = None
    for attempt in range(MAX_ATTEMPTS):
        try:
            blocks = _attempt(alg, center, seed + attempt, tol)
        except NumericallyIndistinct as exc:
            last_error = exc
            blocks = None
        if blocks is not None:
            break
    if blocks is None:
        raise NumericallyIndistinct(
            f"no clean central splitting after {MAX_ATTEMPTS} attempts" + (f": {last_error}" if last_error else ""))
    blocks.sort(key=_sort_key)
    data = WedderburnData(tuple(blocks))
    _validate(alg, data, tol)
    alg._cache[key] = data
    return data


def _validate(alg: FDAlgebra, W: WedderburnData, tol: Tolerances):
    n = alg.dim
    total = sum(b.idempotent for b in W.blocks)
    if not is_zero(total - to_complex(alg.unit), tol.check * n):
        raise NumericallyIndistinct("central idempotents do not sum to 1")
    for i, bi in enumerate(W.blocks):
        for j, bj in enumerate(W.blocks):
            prod = alg.mul(bi.idempotent, bj.idempotent)
            target = bi.idempotent if i == j else 0
            if not is_zero(prod - target, tol.check * n):
                raise NumericallyIndistinct("central idempotents are not orthogonal")
            val = bi.character @ bj.idempotent
            if abs(val - (bi.dim_V if i == j else 0)) > tol.check * n:
                raise NumericallyIndistinct("characters do not separate the blocks")
    if sum(d * d for d in W.dims) != n:
        raise NumericallyIndistinct("block dimensions do not add up")
