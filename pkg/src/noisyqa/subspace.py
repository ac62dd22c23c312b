"""Fixed-magnetization sectors of sum_i Z_i: enumeration, projector, restriction."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .operators import HermitianOperator, as_hermitian

RESTRICT_TOL = 1e-10


class SectorLeakError(ValueError):
    """Raised when restricting an operator that couples different sectors."""


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    n: int
    c: int
    indices: np.ndarray  # ascending basis integers

    @property
    def dim_c(self) -> int:
        return len(self.indices)

    @property
    def basis_states(self) -> list[str]:
        return [format(int(k), f"0{self.n}b") for k in self.indices]

    def embed(self, vecs: np.ndarray) -> np.ndarray:
        """Lift sector-coordinate vectors (rows = sector basis) into the full space."""
        vecs = np.asarray(vecs)
        out = np.zeros((2**self.n,) + vecs.shape[1:], dtype=complex)
        out[self.indices] = vecs
        return out


def sector_dim(n: int, c: int) -> int:
    if (n + c) % 2 or abs(c) > n:
        return 0
    return comb(n, (n - c) // 2)


def enumerate_sector(n: int, c: int = 0) -> SubspaceBasis:
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(2**n, dtype=np.int64)
    ones = np.zeros_like(k)
    for q in range(n):
        ones += (k >> q) & 1
    return SubspaceBasis(n, c, k[n - 2 * ones == c])


@dataclass(frozen=True, eq=False)
class Projector:
    matrix: HermitianOperator
    basis: SubspaceBasis

    @property
    def dim_c(self) -> int:
        return self.basis.dim_c


def build_projector(b: SubspaceBasis) -> Projector:
    d = np.zeros(2**b.n)
    d[b.indices] = 1.0
    return Projector(HermitianOperator.diag(d), b)


def restrict(h, b: SubspaceBasis) -> HermitianOperator:
    """Matrix elements <i_c|H|j_c> in canonical sector order.

    Only defined for operators that do not couple the sector to its complement.
    """
    h = as_hermitian(h)
    if h.dim != 2**b.n:
        raise ValueError(f"operator dimension {h.dim} does not match n={b.n}")
    outside = np.ones(h.dim, dtype=bool)
    outside[b.indices] = False
    leak = np.abs(h.matrix[np.ix_(outside, b.indices)])
    if leak.size and leak.max() > RESTRICT_TOL:
        raise SectorLeakError(
            f"operator leaks across sectors (max coupling {leak.max():.3e})"
        )
    return HermitianOperator(h.matrix[np.ix_(b.indices, b.indices)])
