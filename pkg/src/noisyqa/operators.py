"""Dense operator algebra on n-qubit Hilbert spaces.

Basis ordering is big-endian: qubit 0 is the leftmost tensor factor, so the
computational basis index of the bitstring ``q0 q1 ... q_{n-1}`` is
``int("q0q1...", 2)``. Every other module relies on this convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

HERMITIAN_TOL = 1e-12
EIG_DIM_CAP = 4096

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class DimensionError(ValueError):
    """Operands have incompatible dimensions or out-of-range qubit indices."""


class ContractViolation(ValueError):
    """An operator failed a structural contract (e.g. Hermiticity)."""


def pauli_matrix(axis: str) -> np.ndarray:
    """Return the 2x2 Pauli matrix for ``axis`` in {"X", "Y", "Z"} (or "I")."""
    try:
        return _PAULI[axis.upper()].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}") from None


@dataclass(frozen=True)
class PauliString:
    """A real-weighted tensor product of single-qubit Paulis on ``n`` qubits."""

    n: int
    factors: tuple[tuple[int, str], ...]
    coefficient: float = 1.0

    def __post_init__(self):
        factors = tuple((int(i), str(a).upper()) for i, a in self.factors)
        object.__setattr__(self, "factors", factors)
        if self.n < 1:
            raise DimensionError("PauliString needs n >= 1")
        seen = set()
        for i, axis in factors:
            if axis not in ("X", "Y", "Z"):
                raise ValueError(f"unknown Pauli axis {axis!r}")
            if not 0 <= i < self.n:
                raise DimensionError(f"qubit index {i} out of range for n={self.n}")
            if i in seen:
                raise ValueError(f"qubit index {i} repeated in PauliString")
            seen.add(i)

    def scaled(self, factor: float) -> "PauliString":
        return PauliString(self.n, self.factors, self.coefficient * factor)


def materialize(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix of ``p`` (identity on untouched qubits)."""
    axes = ["I"] * p.n
    for i, a in p.factors:
        axes[i] = a
    mat = reduce(np.kron, (_PAULI[a] for a in axes))
    return p.coefficient * mat


def pauli_sum(strings: Iterable[PauliString], n: int) -> np.ndarray:
    out = np.zeros((2**n, 2**n), dtype=complex)
    for p in strings:
        if p.n != n:
            raise DimensionError(f"PauliString on {p.n} qubits in an {n}-qubit sum")
        out += materialize(p)
    return out


def _max_skew(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Immutable dense Hermitian matrix, validated once at construction."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {m.shape}")
        skew = _max_skew(m)
        if skew >= HERMITIAN_TOL:
            raise ContractViolation(f"matrix is not Hermitian (max |M - M^dag| = {skew:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    def is_diagonal(self) -> bool:
        return not np.any(self.matrix - np.diag(self.matrix.diagonal()))

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        _check_same_dim(self, other)
        return HermitianOperator(self.matrix + other.matrix)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        _check_same_dim(self, other)
        return HermitianOperator(self.matrix - other.matrix)

    def __mul__(self, scalar: float) -> "HermitianOperator":
        if np.iscomplexobj(scalar) and np.imag(scalar) != 0:
            raise ContractViolation("complex scaling breaks Hermiticity")
        return HermitianOperator(float(np.real(scalar)) * self.matrix)

    __rmul__ = __mul__

    def expectation(self, state: np.ndarray) -> float:
        """<v|M|v> for a vector, or tr(M rho) for a density matrix."""
        state = np.asarray(state)
        if state.ndim == 1:
            return float(np.real(np.vdot(state, self.matrix @ state)))
        return float(np.real(np.einsum("ij,ji->", self.matrix, state)))

    @classmethod
    def from_paulis(cls, strings: Iterable[PauliString], n: int) -> "HermitianOperator":
        return cls(pauli_sum(strings, n))

    @classmethod
    def diag(cls, values: Sequence[float]) -> "HermitianOperator":
        return cls(np.diag(np.asarray(values, dtype=float)))


def _check_same_dim(a: HermitianOperator, b: HermitianOperator) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def as_hermitian(h) -> HermitianOperator:
    return h if isinstance(h, HermitianOperator) else HermitianOperator(h)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns

    def ground_space(self, tol: float = 1e-9) -> np.ndarray:
        """Columns spanning the eigenspace within ``tol`` of the lowest eigenvalue."""
        k = int(np.count_nonzero(self.eigenvalues <= self.eigenvalues[0] + tol))
        return self.eigenvectors[:, :k]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(h, dim_cap: int = EIG_DIM_CAP) -> EigenDecomposition:
    """Full ascending spectrum with orthonormal eigenvectors.

    Residuals are checked against ``||M v - lambda v|| < 1e-9 ||M||``.
    """
    h = as_hermitian(h)
    if h.dim > dim_cap:
        raise DimensionError(f"dimension {h.dim} exceeds eigensolver cap {dim_cap}")
    vals, vecs = np.linalg.eigh(h.matrix)
    scale = max(np.linalg.norm(h.matrix, 2), 1.0)
    resid = np.linalg.norm(h.matrix @ vecs - vecs * vals, axis=0)
    if resid.size and resid.max() >= 1e-9 * scale:
        raise ContractViolation(f"eigen-residual {resid.max():.3e} above tolerance")
    return EigenDecomposition(vals, vecs)


def hermitian_spectrum(h, dim_cap: int = EIG_DIM_CAP) -> np.ndarray:
    """Ascending eigenvalues only (no eigenvector residual check)."""
    h = as_hermitian(h)
    if h.dim > dim_cap:
        raise DimensionError(f"dimension {h.dim} exceeds eigensolver cap {dim_cap}")
    return np.linalg.eigvalsh(h.matrix)


def commutator_norm(a, b) -> float:
    """Max-entry magnitude of AB - BA."""
    a = np.asarray(a.matrix if isinstance(a, HermitianOperator) else a)
    b = np.asarray(b.matrix if isinstance(b, HermitianOperator) else b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a @ b - b @ a)))


def basis_bits(n: int) -> np.ndarray:
    """(2^n, n) array of bits; row k holds the bits of basis index k, qubit 0 first."""
    k = np.arange(2**n)
    return (k[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1


def spin_values(n: int) -> np.ndarray:
    """(2^n, n) array of z-eigenvalues, +1 for bit 0 and -1 for bit 1."""
    return 1 - 2 * basis_bits(n)


def qubit_mask(n: int, i: int) -> int:
    """Integer mask of qubit ``i`` in a basis index."""
    return 1 << (n - 1 - i)
