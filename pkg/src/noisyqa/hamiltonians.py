"""Operators and schedules for penalty-based (PQA) and constrained (CQA) annealing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instances import Graph
from .operators import (
    HermitianOperator,
    PauliString,
    hermitian_eig,
    spin_values,
)
from .subspace import enumerate_sector

DEFAULT_T = 20.0
DEFAULT_ALPHA = 8.0
DEFAULT_ALPHA_INI = 100.0
GROUND_DEGENERACY_TOL = 1e-9

METHODS = ("PQA", "CQA")
BOUNDARIES = ("ring", "chain")


class DegenerateGroundStateError(RuntimeError):
    """The initial-state Hamiltonian has no unique constraint-satisfying ground state."""


def build_problem(g: Graph) -> HermitianOperator:
    """sum over edges of (1 - Z_i Z_j)/2; diagonal entries are cut sizes."""
    z = spin_values(g.n)
    diag = np.zeros(2**g.n)
    for i, j in g.edges:
        diag += 0.5 * (1 - z[:, i] * z[:, j])
    return HermitianOperator.diag(diag)


def build_constraint(n: int) -> HermitianOperator:
    """Total magnetization sum_i Z_i."""
    return HermitianOperator.diag(spin_values(n).sum(axis=1))


def build_penalty(n: int, c: int = 0) -> HermitianOperator:
    """(sum_i Z_i - c)^2."""
    m = spin_values(n).sum(axis=1) - c
    return HermitianOperator.diag(m.astype(float) ** 2)


def build_driver_pqa(n: int) -> HermitianOperator:
    """+sum_i X_i, sign as in the standard penalty formulation used here."""
    return HermitianOperator.from_paulis((PauliString(n, ((i, "X"),)) for i in range(n)), n)


def xy_bonds(n: int, boundary: str = "ring") -> list[tuple[int, int]]:
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}")
    if n < 2:
        raise ValueError("XY driver needs n >= 2")
    if boundary == "ring":
        if n < 3:
            raise ValueError("ring boundary needs n >= 3 (n=2 would double-count the bond)")
        return [(i, (i + 1) % n) for i in range(n)]
    return [(i, i + 1) for i in range(n - 1)]


def build_driver_cqa(n: int, boundary: str = "ring") -> HermitianOperator:
    """-sum_i (X_i X_{i+1} + Y_i Y_{i+1}); conserves total magnetization."""
    terms = []
    for i, j in xy_bonds(n, boundary):
        terms.append(PauliString(n, ((i, "X"), (j, "X")), -1.0))
        terms.append(PauliString(n, ((i, "Y"), (j, "Y")), -1.0))
    return HermitianOperator.from_paulis(terms, n)


@dataclass(frozen=True, eq=False)
class AnnealSchedule:
    """Linear ramp H(t) = (1 - t/T) H_start + (t/T) H_end on [0, T]."""

    H_start: HermitianOperator
    H_end: HermitianOperator
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("annealing time T must be positive")
        if self.H_start.dim != self.H_end.dim:
            raise ValueError("schedule endpoints differ in dimension")

    @property
    def dim(self) -> int:
        return self.H_start.dim

    def at(self, t: float) -> HermitianOperator:
        if t == 0:
            return self.H_start
        if t == self.T:
            return self.H_end
        return self.at_fraction(t / self.T)

    def at_fraction(self, s: float) -> HermitianOperator:
        if s == 0:
            return self.H_start
        if s == 1:
            return self.H_end
        return HermitianOperator((1 - s) * self.H_start.matrix + s * self.H_end.matrix)


@dataclass(frozen=True)
class MethodConfig:
    method: str = "PQA"
    alpha: float = DEFAULT_ALPHA
    alpha_ini: float = DEFAULT_ALPHA_INI
    c: int = 0
    boundary: str = "ring"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        if self.alpha < 0 or self.alpha_ini < 0:
            raise ValueError("penalty strengths must be nonnegative")


def make_schedule(cfg: MethodConfig, g: Graph, T: float = DEFAULT_T) -> AnnealSchedule:
    problem = build_problem(g)
    if cfg.method == "PQA":
        h_end = problem + cfg.alpha * build_penalty(g.n, cfg.c)
        return AnnealSchedule(build_driver_pqa(g.n), h_end, T)
    return AnnealSchedule(build_driver_cqa(g.n, cfg.boundary), problem, T)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # deterministic global phase: largest-magnitude entry (first on ties) real positive
    k = int(np.argmax(np.round(np.abs(v), 12)))
    return v * (abs(v[k]) / v[k])


def initial_state(cfg: MethodConfig, n: int) -> np.ndarray:
    """Ground state of the start Hamiltonian (CQA: with the alpha_ini penalty added)."""
    if cfg.method == "PQA":
        # ground state of +sum X_i is |->^n
        popcount = np.array([bin(k).count("1") for k in range(2**n)])
        return ((-1.0) ** popcount / 2 ** (n / 2)).astype(complex)

    h = build_driver_cqa(n, cfg.boundary) + cfg.alpha_ini * build_penalty(n, cfg.c)
    eig = hermitian_eig(h)
    ground = eig.ground_space(GROUND_DEGENERACY_TOL)
    sector = enumerate_sector(n, cfg.c)
    if sector.dim_c == 0:
        raise DegenerateGroundStateError(f"constraint sector c={cfg.c} is empty for n={n}")
    if ground.shape[1] == 1:
        v = ground[:, 0]
    else:
        # project the degenerate ground space onto the sector
        proj = ground[sector.indices, :]
        u, sv, _ = np.linalg.svd(proj, full_matrices=False)
        rank = int(np.count_nonzero(sv > 1e-8))
        if rank != 1:
            raise DegenerateGroundStateError(
                f"ground space of driver+penalty has multiplicity {ground.shape[1]} "
                f"and projects to a rank-{rank} subspace of the c={cfg.c} sector"
            )
        v = sector.embed(u[:, 0])
    v = _fix_phase(v / np.linalg.norm(v))
    leak = np.linalg.norm(np.delete(v, sector.indices))
    if leak > 1e-8:
        raise DegenerateGroundStateError(
            f"initial state has weight {leak:.3e} outside the c={cfg.c} sector; raise alpha_ini"
        )
    return v
