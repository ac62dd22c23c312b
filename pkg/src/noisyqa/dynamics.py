"""Lindblad and Schrodinger evolution under a linear annealing schedule.

The integrator is classical fixed-step RK4 applied in the rotating frame of the
diagonal part of H(t). Both schedule endpoints used here have large diagonal
parts (the penalty term reaches alpha*n^2), which would make lab-frame RK4
unstable at dt = T/2000; the diagonal phase is integrated exactly instead, and
RK4 only sees the bounded off-diagonal couplings and the dissipator.

Operators are split into XOR layers, M = sum_m diag(a_m) P_m with
(P_m v)[k] = v[k ^ m]. Pauli-built drivers and jump operators have a handful of
layers, which turns every product in the right-hand side into gathers and
elementwise multiplies.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .hamiltonians import AnnealSchedule
from .operators import HermitianOperator, hermitian_spectrum, pauli_matrix
from .operators import DimensionError
from ._kernels import lindblad_off, rk4_density_step
from ._version import __version__

log = logging.getLogger(__name__)

NOISE_KINDS = ("none", "phase_flip", "bit_flip", "depolarizing")

TRACE_TOL = 1e-6
HERMITIAN_FIX_TOL = 1e-10
POSITIVITY_FLOOR = -1e-8
NORM_TOL = 1e-8
MIN_PRODUCTION_STEPS = 100
# anneal length at which max_phase_step was calibrated
REFERENCE_T = 20.0


class RunFailedError(RuntimeError):
    pass


@dataclass(frozen=True)
class NoiseChannel:
    kind: str = "none"
    gamma: float = 0.0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"noise kind must be one of {NOISE_KINDS}")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")

    @property
    def noiseless(self) -> bool:
        return self.kind == "none" or self.gamma == 0


@dataclass(frozen=True)
class IntegratorConfig:
    steps: int = 2000
    record_every: int = 20
    production: bool = True
    # each step is split so that substep x (fastest frame frequency + coupling norm) <= this
    max_phase_step: float | None = 0.35
    # fixed split per step, overriding max_phase_step (used by step-doubling checks)
    substeps: int | None = None

    def __post_init__(self):
        if self.steps < 1 or self.record_every < 1:
            raise ValueError("steps and record_every must be positive")
        if self.max_phase_step is not None and not self.max_phase_step > 0:
            raise ValueError("max_phase_step must be positive or None")
        if self.substeps is not None and self.substeps < 1:
            raise ValueError("substeps must be positive or None")
        if self.production and self.steps < MIN_PRODUCTION_STEPS:
            raise ValueError(f"production runs need steps >= {MIN_PRODUCTION_STEPS}")


@dataclass(eq=False)
class DensityMatrix:
    matrix: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionError("density matrix must be square")

    @classmethod
    def from_pure(cls, psi: np.ndarray, time: float = 0.0) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        return cls(np.outer(psi, psi.conj()), time)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace_drift(self) -> float:
        return abs(np.trace(self.matrix).real - 1.0)

    def hermitian_skew(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.matrix + self.matrix.conj().T))[0])

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def check(self) -> list[tuple[str, float]]:
        """Invariant breaches as (name, magnitude); empty when valid."""
        bad = []
        if (d := self.trace_drift()) >= 1e-8:
            bad.append(("trace", d))
        if (s := self.hermitian_skew()) >= 1e-10:
            bad.append(("hermiticity", s))
        if (e := self.min_eigenvalue()) < POSITIVITY_FLOOR:
            bad.append(("positivity", e))
        return bad


@dataclass(frozen=True)
class Observer:
    """A named scalar observable evaluated as fn(rho, t) at record times."""

    name: str
    fn: Callable[[np.ndarray, float], float]

    def __call__(self, rho: np.ndarray, t: float) -> float:
        return float(self.fn(rho, t))


@dataclass(eq=False)
class RunRecord:
    times: np.ndarray
    observables: dict[str, np.ndarray]
    final_state: DensityMatrix | None
    metadata: dict = field(default_factory=dict)
    status: str = "ok"
    failure: dict | None = None

    @property
    def failed(self) -> bool:
        return self.status != "ok"

    def final(self, name: str) -> float:
        return float(self.observables[name][-1])


def jump_operators(kind: str, gamma: float, n: int) -> list[np.ndarray]:
    """Per-qubit jump operators of the named channel (dense 2^n matrices)."""
    if kind not in NOISE_KINDS:
        raise ValueError(f"noise kind must be one of {NOISE_KINDS}")
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if kind == "none":
        return []
    root = np.sqrt(gamma)
    if kind == "phase_flip":
        spec = [(root, "Z")]
    elif kind == "bit_flip":
        spec = [(root, "X")]
    else:
        spec = [(root / 2, "X"), (root / 2, "Y"), (root / 2, "Z")]
    ops = []
    for i in range(n):
        for amp, axis in spec:
            ops.append(amp * _single_qubit(n, i, axis))
    return ops


def _single_qubit(n: int, i: int, axis: str) -> np.ndarray:
    return np.kron(np.kron(np.eye(2**i), pauli_matrix(axis)), np.eye(2 ** (n - i - 1)))


def lindblad_rhs(rho, H, L: Sequence[np.ndarray]) -> np.ndarray:
    """-i[H, rho] + sum_k (L rho L^dag - {L^dag L, rho}/2), evaluated densely."""
    rho = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    h = np.asarray(H.matrix if isinstance(H, HermitianOperator) else H)
    if rho.shape != h.shape:
        raise DimensionError(f"rho {rho.shape} and H {h.shape} differ")
    out = -1j * (h @ rho - rho @ h)
    for lk in L:
        lk = np.asarray(lk)
        if lk.shape != rho.shape:
            raise DimensionError(f"jump operator shape {lk.shape} does not match rho")
        ldl = lk.conj().T @ lk
        out += lk @ rho @ lk.conj().T - 0.5 * (ldl @ rho + rho @ ldl)
    return out


def xor_layers(m: np.ndarray, skip_diagonal: bool = False) -> dict[int, np.ndarray]:
    """Split m into {mask: a} with m[k, k ^ mask] = a[k]."""
    m = np.asarray(m)
    k = np.arange(m.shape[0])
    rows, cols = np.nonzero(m)
    layers = {}
    for mask in np.unique(rows ^ cols):
        mask = int(mask)
        if mask == 0 and skip_diagonal:
            continue
        layers[mask] = m[k, k ^ mask].copy()
    return layers


class _Kernel:
    """Right-hand sides for the rotating-frame integrator of one schedule + channel."""

    def __init__(self, schedule: AnnealSchedule, jumps: Sequence[np.ndarray]):
        dim = schedule.dim
        self.dim = dim
        self.T = float(schedule.T)
        self.d0 = schedule.H_start.diagonal()
        self.d1 = schedule.H_end.diagonal()
        k = np.arange(dim)

        lay0 = xor_layers(schedule.H_start.matrix, skip_diagonal=True)
        lay1 = xor_layers(schedule.H_end.matrix, skip_diagonal=True)
        zero = np.zeros(dim, dtype=complex)
        masks = sorted(set(lay0) | set(lay1))
        self.perm = np.array([k ^ m for m in masks], dtype=np.intp).reshape(len(masks), dim)
        self.a0 = np.array([lay0.get(m, zero) for m in masks], dtype=complex).reshape(len(masks), dim)
        self.a1 = np.array([lay1.get(m, zero) for m in masks], dtype=complex).reshape(len(masks), dim)

        # monomial jumps L = diag(a) P_m give (L rho L^dag)[k, l] = a_k conj(a_l) rho[k^m, l^m]
        sandwich: dict[int, np.ndarray] = {}
        kappa = np.zeros((dim, dim), dtype=complex)
        for lk in jumps:
            lk = np.asarray(lk, dtype=complex)
            kappa += lk.conj().T @ lk
            layers = xor_layers(lk)
            if len(layers) > 1:
                raise NotImplementedError("jump operators must be monomial (one XOR layer)")
            for mask, a in layers.items():
                sandwich[mask] = sandwich.get(mask, 0) + np.outer(a, a.conj())
        if np.any(kappa - np.diag(kappa.diagonal())):
            raise NotImplementedError("sum of L^dag L must be diagonal")
        kv = kappa.diagonal()
        self.elem = sandwich.pop(0, np.zeros((dim, dim), dtype=complex)) - 0.5 * (kv[:, None] + kv[None, :])
        smasks = sorted(sandwich)
        self.sandwich_perm = np.array([k ^ m for m in smasks], dtype=np.intp).reshape(len(smasks), dim)
        self.sandwich_phase = np.array([sandwich[m] for m in smasks], dtype=complex).reshape(
            len(smasks), dim, dim
        )
        self.noisy = bool(smasks or np.any(self.elem))
        self.max_frequency = self._max_frequency()
        # row-sum bound on ||H_off(s)||; linear in s, so the endpoints suffice
        self.coupling = float(max(np.abs(self.a0).sum(axis=0).max(initial=0.0),
                                  np.abs(self.a1).sum(axis=0).max(initial=0.0)))

    def _max_frequency(self) -> float:
        """Largest diagonal-energy mismatch across Hamiltonian-coupled basis pairs."""
        w = 0.0
        for p, a0, a1 in zip(self.perm, self.a0, self.a1):
            on = (a0 != 0) | (a1 != 0)
            if on.any():
                w = max(w, np.abs(self.d0 - self.d0[p])[on].max(), np.abs(self.d1 - self.d1[p])[on].max())
        return float(w)

    def _h_product(self, x: np.ndarray, s: float) -> np.ndarray:
        """Off-diagonal part of H(s) applied to a state vector."""
        if not len(self.perm):
            return np.zeros_like(x)
        a = self.amplitudes(s)
        return np.einsum("mk,mk->k", a, x[self.perm])

    def amplitudes(self, s: float) -> np.ndarray:
        return (1 - s) * self.a0 + s * self.a1

    def rhs_off(self, rho: np.ndarray, s: float) -> np.ndarray:
        """Lindbladian without the diagonal-H commutator; rho must be Hermitian."""
        rho = np.ascontiguousarray(rho, dtype=complex)
        out = np.empty_like(rho)
        lindblad_off(rho, self.amplitudes(s), self.perm, self.sandwich_perm,
                     self.sandwich_phase, self.elem, np.empty_like(rho), out)
        return out

    def set_energy_reference(self, e0: float, e1: float) -> None:
        """Move a scalar ramp e(t) from the RK4 generator into the exact frame.

        Only meaningful for state vectors, where an absolute energy shows up
        as a global phase that RK4 would otherwise damp.
        """
        self.e0, self.e1 = e0, e1

    e0 = e1 = 0.0

    def frame(self, tau: float, t0: float) -> np.ndarray:
        """u = exp(-i int_{t0}^{tau} diag H); lab amplitudes are u * (frame amplitudes)."""
        T = self.T
        f1 = (tau * tau - t0 * t0) / (2 * T)
        f0 = (tau - t0) - f1
        return np.exp(-1j * ((self.d0 + self.e0) * f0 + (self.d1 + self.e1) * f1))

    def rhs_off_pure(self, psi: np.ndarray, s: float) -> np.ndarray:
        e = (1 - s) * self.e0 + s * self.e1
        return -1j * (self._h_product(psi, s) - e * psi)


def _as_density(rho0) -> np.ndarray:
    if isinstance(rho0, DensityMatrix):
        return rho0.matrix.copy()
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.ndim == 1:
        return np.outer(rho0, rho0.conj())
    return rho0.copy()


def _substeps(kern: _Kernel, h: float, ic: IntegratorConfig) -> int:
    if ic.substeps is not None:
        return ic.substeps
    if ic.max_phase_step is None:
        return 1
    # RK4's accumulated error grows like T * (h*rate)^4; shrink the bound for long anneals
    bound = ic.max_phase_step * min(1.0, (REFERENCE_T / kern.T) ** 0.25)
    return max(1, int(np.ceil(h * (kern.max_frequency + kern.coupling) / bound)))


def _rk4_frame_step(kern: _Kernel, y: np.ndarray, t0: float, t1: float) -> np.ndarray:
    """One RK4 step from t0 to t1 in the frame co-rotating with diag H(t)."""
    T, h = kern.T, t1 - t0
    tm = t0 + 0.5 * h
    um = kern.frame(tm, t0)
    u1 = kern.frame(t1, t0)
    if y.ndim == 2:
        um = np.outer(um, um.conj())
        u1 = np.outer(u1, u1.conj())
        f = kern.rhs_off
    else:
        f = kern.rhs_off_pure
    k1 = f(y, t0 / T)
    k2 = f((y + 0.5 * h * k1) * um, tm / T) * um.conj()
    k3 = f((y + 0.5 * h * k2) * um, tm / T) * um.conj()
    k4 = f((y + h * k3) * u1, t1 / T) * u1.conj()
    return (y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)) * u1


class _DensityStepper:
    """Compiled rotating-frame RK4 for density matrices, with reusable workspace."""

    def __init__(self, kern: _Kernel):
        self.kern = kern
        shape = (kern.dim, kern.dim)
        self.work = tuple(np.empty(shape, dtype=complex) for _ in range(4))

    def step(self, rho: np.ndarray, t0: float, t1: float) -> tuple[float, float]:
        """Advance rho in place; returns (Hermitian correction, trace)."""
        k, T, h = self.kern, self.kern.T, t1 - t0
        tm = t0 + 0.5 * h
        return rk4_density_step(
            rho, h, k.amplitudes(t0 / T), k.amplitudes(tm / T), k.amplitudes(t1 / T),
            k.frame(tm, t0), k.frame(t1, t0), k.perm, k.sandwich_perm, k.sandwich_phase,
            k.elem, *self.work,
        )


def _grid(T: float, steps: int, sub: int) -> np.ndarray:
    """Fine time grid; coarse nodes are exactly k*T/steps and the last is T."""
    coarse = np.arange(steps + 1) * (T / steps)
    coarse[-1] = T
    if sub == 1:
        return coarse
    frac = np.arange(sub) / sub
    fine = (coarse[:-1, None] + frac[None, :] * np.diff(coarse)[:, None]).ravel()
    return np.append(fine, T)


def _record_points(ic: IntegratorConfig) -> set[int]:
    pts = set(range(0, ic.steps + 1, ic.record_every))
    pts.add(ic.steps)
    return pts


class _Recorder:
    def __init__(self, observers: Sequence[Observer], meta: dict):
        self.observers = list(observers)
        self.times: list[float] = []
        self.series = {o.name: [] for o in self.observers}
        for k in ("purity", "trace_drift", "min_eigenvalue", "hermitian_fix"):
            self.series[k] = []
        self.meta = meta

    def sample(self, rho: np.ndarray, t: float, diagnostics: dict) -> None:
        self.times.append(float(t))
        for o in self.observers:
            self.series[o.name].append(o(rho, t))
        for k, v in diagnostics.items():
            self.series[k].append(float(v))

    def finish(self, final: DensityMatrix, failure: dict | None) -> RunRecord:
        n = len(self.times)
        rec = RunRecord(
            times=np.array(self.times),
            observables={k: np.array(v[:n]) for k, v in self.series.items()},
            final_state=final,
            metadata=self.meta,
        )
        if failure:
            rec.status = "failed"
            rec.failure = {k: (float(v) if k != "check" else v) for k, v in failure.items()}
            log.warning("run failed: %s", rec.failure)
        return rec


def _base_metadata(schedule, ch, ic, integrator: str, sub: int) -> dict:
    return {
        "integrator": integrator,
        "T": float(schedule.T),
        "dim": schedule.dim,
        "steps": ic.steps,
        "substeps": sub,
        "record_every": ic.record_every,
        "max_phase_step": ic.max_phase_step,
        "channel": ch.kind,
        "gamma": float(ch.gamma),
        "version": __version__,
    }


def evolve(
    schedule: AnnealSchedule,
    rho0,
    ch: NoiseChannel,
    ic: IntegratorConfig = IntegratorConfig(),
    observers: Sequence[Observer] = (),
    metadata: dict | None = None,
) -> RunRecord:
    """Integrate the Lindblad equation over [0, T] and sample observers.

    Invariant breaches stop the run and return a failed record; the state is
    never renormalized.
    """
    rho = _as_density(rho0)
    if rho.shape != (schedule.dim, schedule.dim):
        raise DimensionError(f"rho0 shape {rho.shape} does not match schedule dim {schedule.dim}")
    bad = DensityMatrix(rho).check()
    if bad:
        raise ValueError(f"initial density matrix violates invariants: {bad}")

    n = int(round(np.log2(schedule.dim)))
    jumps = [] if ch.kind == "none" else jump_operators(ch.kind, ch.gamma, n)
    kern = _Kernel(schedule, jumps)
    stepper = _DensityStepper(kern)
    T = float(schedule.T)
    sub = _substeps(kern, T / ic.steps, ic)
    grid = _grid(T, ic.steps, sub)
    record_at = _record_points(ic)
    meta = _base_metadata(schedule, ch, ic, "rk4-diagonal-frame/density", sub)
    meta.update(metadata or {})
    rec = _Recorder(observers, meta)
    worst_fix = 0.0

    def sample(t):
        st = DensityMatrix(rho, t)
        lam = st.min_eigenvalue()
        rec.sample(rho, t, {"purity": st.purity(), "trace_drift": st.trace_drift(),
                            "min_eigenvalue": lam, "hermitian_fix": worst_fix})
        if lam < POSITIVITY_FLOOR:
            return {"check": "positivity", "time": t, "magnitude": lam}
        return None

    failure = sample(0.0)
    for i in range(len(grid) - 1):
        if failure:
            break
        t1 = grid[i + 1]
        fix, tr = stepper.step(rho, grid[i], t1)
        worst_fix = max(worst_fix, fix)
        if fix >= HERMITIAN_FIX_TOL:
            failure = {"check": "hermiticity", "time": t1, "magnitude": fix}
            break
        drift = abs(tr - 1.0)
        if drift >= TRACE_TOL:
            failure = {"check": "trace_drift", "time": t1, "magnitude": drift}
            break
        if (i + 1) % sub == 0 and (i + 1) // sub in record_at:
            failure = sample(t1)
    t_end = grid[i + 1] if len(grid) > 1 else 0.0
    return rec.finish(DensityMatrix(rho, t_end), failure)


def evolve_pure(
    schedule: AnnealSchedule,
    psi0: np.ndarray,
    ic: IntegratorConfig = IntegratorConfig(),
    observers: Sequence[Observer] = (),
    metadata: dict | None = None,
) -> RunRecord:
    """Closed-system fast path; observers still receive a density matrix."""
    psi = np.asarray(psi0, dtype=complex).copy()
    if psi.shape != (schedule.dim,):
        raise DimensionError(f"psi0 shape {psi.shape} does not match schedule dim {schedule.dim}")
    if abs(np.linalg.norm(psi) - 1) > NORM_TOL:
        raise ValueError("psi0 must have unit norm")
    kern = _Kernel(schedule, [])
    kern.set_energy_reference(*(float(hermitian_spectrum(op)[0])
                                for op in (schedule.H_start, schedule.H_end)))
    T = float(schedule.T)
    sub = _substeps(kern, T / ic.steps, ic)
    grid = _grid(T, ic.steps, sub)
    record_at = _record_points(ic)
    meta = _base_metadata(schedule, NoiseChannel(), ic, "rk4-diagonal-frame/pure", sub)
    meta.update(metadata or {})
    rec = _Recorder(observers, meta)

    def sample(t):
        norm2 = float(np.vdot(psi, psi).real)
        rec.sample(np.outer(psi, psi.conj()), t,
                   {"purity": norm2 * norm2, "trace_drift": abs(norm2 - 1.0),
                    "min_eigenvalue": 0.0, "hermitian_fix": 0.0})

    sample(0.0)
    failure = None
    for i in range(len(grid) - 1):
        t1 = grid[i + 1]
        psi = _rk4_frame_step(kern, psi, grid[i], t1)
        drift = abs(np.linalg.norm(psi) - 1.0)
        if drift >= NORM_TOL:
            sample(t1)
            failure = {"check": "norm_drift", "time": t1, "magnitude": drift}
            break
        if (i + 1) % sub == 0 and (i + 1) // sub in record_at:
            sample(t1)
    t_end = grid[i + 1] if len(grid) > 1 else 0.0
    return rec.finish(DensityMatrix.from_pure(psi, t_end), failure)


def run(schedule, state, ch: NoiseChannel, ic: IntegratorConfig = IntegratorConfig(),
        observers: Sequence[Observer] = (), metadata: dict | None = None) -> RunRecord:
    """Dispatch to the pure-state path when the channel is noiseless and state is a vector."""
    state = np.asarray(state.matrix if isinstance(state, DensityMatrix) else state)
    if ch.noiseless and state.ndim == 1:
        return evolve_pure(schedule, state, ic, observers, metadata)
    return evolve(schedule, state, ch, ic, observers, metadata)
