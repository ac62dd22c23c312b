"""Observables along annealing runs and spectral-gap scans."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import DensityMatrix, Observer, RunFailedError, RunRecord
from .hamiltonians import AnnealSchedule
from .instances import PartitionSolution
from .operators import HermitianOperator, as_hermitian, hermitian_eig, hermitian_spectrum
from .subspace import Projector, SubspaceBasis, restrict

DEGENERACY_TOL = 1e-9
GAP_SAMPLES = 201
GAP_MODES = ("final_manifold", "first_distinct")


def _rho(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)


def solution_fidelity(rho, sol: PartitionSolution) -> float:
    """Weight of rho on the set of optimal assignments, tr(rho P_sol)."""
    if not sol.optimal_states:
        raise ValueError("solution set is empty")
    m = _rho(rho)
    if m.shape[0] != 2**sol.n:
        raise ValueError(f"rho dimension {m.shape[0]} does not match n={sol.n}")
    return float(np.real(np.diagonal(m)[sol.indices]).sum())


def projection_fidelity(rho, P: Projector | SubspaceBasis) -> float:
    """tr(rho P_c)."""
    basis = P.basis if isinstance(P, Projector) else P
    m = _rho(rho)
    if m.shape[0] != 2**basis.n:
        raise ValueError(f"rho dimension {m.shape[0]} does not match n={basis.n}")
    return float(np.real(np.diagonal(m)[basis.indices]).sum())


def ground_space(h, degeneracy_tol: float = DEGENERACY_TOL,
                 sector: SubspaceBasis | None = None) -> np.ndarray:
    """Full-space columns spanning the lowest eigenspace of h (or of h on a sector)."""
    h = as_hermitian(h)
    if sector is None:
        return hermitian_eig(h).ground_space(degeneracy_tol)
    vecs = hermitian_eig(restrict(h, sector)).ground_space(degeneracy_tol)
    return sector.embed(vecs)


def _overlap(rho: np.ndarray, vecs: np.ndarray) -> float:
    return float(np.real(np.einsum("ik,ij,jk->", vecs.conj(), rho, vecs)))


def ground_space_fidelity(rho, H_t, degeneracy_tol: float = DEGENERACY_TOL,
                          sector: SubspaceBasis | None = None) -> float:
    """tr(rho P_g) for the instantaneous ground-space projector P_g."""
    return _overlap(_rho(rho), ground_space(H_t, degeneracy_tol, sector))


class GroundSpaceTracker:
    """Ground spaces of H(t) along a schedule, cached per sample time.

    One tracker can be shared by every run of the same schedule, so the
    diagonalizations are paid once per instance rather than once per run.
    """

    def __init__(self, schedule: AnnealSchedule, sector: SubspaceBasis | None = None,
                 degeneracy_tol: float = DEGENERACY_TOL):
        self.schedule = schedule
        self.sector = sector
        self.tol = degeneracy_tol
        self._cache: dict[float, np.ndarray] = {}

    def basis(self, t: float) -> np.ndarray:
        key = round(float(t), 12)
        if key not in self._cache:
            self._cache[key] = ground_space(self.schedule.at(t), self.tol, self.sector)
        return self._cache[key]

    def __call__(self, rho, t: float) -> float:
        return _overlap(_rho(rho), self.basis(t))


def trajectory_observers(schedule: AnnealSchedule, method: str, sol: PartitionSolution,
                         sector: SubspaceBasis, ground: bool = True,
                         degeneracy_tol: float = DEGENERACY_TOL) -> list[Observer]:
    """Solution, projection and ground-space fidelities for one schedule.

    CQA runs get both the full-space and the sector-restricted ground fidelity.
    """
    obs = [
        Observer("solution_fidelity", lambda r, t: solution_fidelity(r, sol)),
        Observer("projection_fidelity", lambda r, t: projection_fidelity(r, sector)),
    ]
    if ground:
        obs.append(Observer("ground_fidelity", GroundSpaceTracker(schedule, None, degeneracy_tol)))
        if method == "CQA":
            obs.append(Observer("ground_fidelity_sector",
                                GroundSpaceTracker(schedule, sector, degeneracy_tol)))
    return obs


@dataclass(frozen=True, eq=False)
class GapScan:
    fractions: np.ndarray
    gaps: np.ndarray
    min_gap: float
    argmin_fraction: float
    mode: str
    manifold: int  # number of levels below the gap
    dim: int  # dimension of the diagonalized space (sector or full)


def _first_distinct(vals: np.ndarray, tol: float) -> float:
    above = vals[vals > vals[0] + tol]
    return float(above[0] - vals[0]) if above.size else 0.0


def gap_scan(schedule: AnnealSchedule, sector: SubspaceBasis | None = None,
             samples: int = GAP_SAMPLES, degeneracy_tol: float = DEGENERACY_TOL,
             mode: str = "final_manifold") -> GapScan:
    """Spectral gap of H(t) over ``samples`` uniform points of t/T.

    ``first_distinct``: E_k - E_0 with E_k the lowest level above E_0 + tol at
    each sample. ``final_manifold``: k is fixed to the ground degeneracy of
    H(T), i.e. the gap separating the eventual solution manifold from the
    rest of the spectrum; this is insensitive to exponentially small
    splittings of the symmetry-related solution pairs late in the anneal.
    """
    if samples < 2:
        raise ValueError("gap_scan needs at least 2 samples")
    if mode not in GAP_MODES:
        raise ValueError(f"mode must be one of {GAP_MODES}")

    def spectrum(s):
        h = schedule.at_fraction(s)
        return hermitian_spectrum(restrict(h, sector) if sector is not None else h)

    fractions = np.linspace(0.0, 1.0, samples)
    final = spectrum(1.0)
    k = int(np.count_nonzero(final <= final[0] + degeneracy_tol))
    if mode == "final_manifold" and k >= final.size:
        raise ValueError("final Hamiltonian is fully degenerate; no gap to scan")
    gaps = np.empty(samples)
    for i, s in enumerate(fractions):
        vals = final if s == 1.0 else spectrum(s)
        if mode == "first_distinct":
            gaps[i] = _first_distinct(vals, degeneracy_tol)
        else:
            gaps[i] = max(vals[k] - vals[0], 0.0)
    j = int(np.argmin(gaps))
    return GapScan(fractions, gaps, float(gaps[j]), float(fractions[j]), mode,
                   k if mode == "final_manifold" else 1, final.size)


def success_probability(record: RunRecord, sol: PartitionSolution) -> float:
    """Final-state weight on the optimal assignments."""
    if record.failed:
        raise RunFailedError(f"run failed: {record.failure}")
    if record.final_state is None:
        if "solution_fidelity" in record.observables:
            return record.final("solution_fidelity")
        raise ValueError("record carries neither a final state nor a solution_fidelity series")
    return solution_fidelity(record.final_state, sol)


@dataclass
class InstanceSummary:
    success_pqa: float
    success_cqa: float
    min_gap_pqa: float
    min_gap_cqa: float
    leak_final_cqa: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("success_pqa", "success_cqa", "leak_final_cqa"):
            v = getattr(self, name)
            if not -1e-8 <= v <= 1 + 1e-8:
                raise ValueError(f"{name}={v} outside [0, 1]")
