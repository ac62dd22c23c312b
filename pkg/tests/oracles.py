"""Independent reference values.

Nothing here imports the package: closed forms for the single-qubit channels,
cut counting by plain loops, and values frozen from hand derivations.
"""

import itertools
import math

import numpy as np


# single qubit, H = 0, rho0 = |0><0| unless stated

def phase_flip_coherence(rho01_0: complex, gamma: float, t: float) -> complex:
    # Z rho Z flips the off-diagonal sign: d rho01/dt = -2 gamma rho01
    return rho01_0 * math.exp(-2 * gamma * t)


def bit_flip_population_difference(gamma: float, t: float) -> float:
    # X rho X swaps populations: d(p0 - p1)/dt = -2 gamma (p0 - p1)
    return math.exp(-2 * gamma * t)


def depolarizing_state(rho0: np.ndarray, gamma: float, t: float) -> np.ndarray:
    # sum_a sigma_a rho sigma_a = 2 tr(rho) I - rho, so drho/dt = gamma (I/2 - rho)
    half = np.eye(2) / 2
    return half + (rho0 - half) * math.exp(-gamma * t)


def larmor_x(t: float) -> float:
    # H = Z, psi0 = |+>: <X>(t) = cos 2t
    return math.cos(2 * t)


# graphs

def cut_count(n: int, edges, bits: str) -> int:
    return sum(bits[i] != bits[j] for i, j in edges)


def brute_partition(n: int, edges, c: int = 0):
    best, states = None, set()
    for bits in itertools.product("01", repeat=n):
        s = "".join(bits)
        if n - 2 * s.count("1") != c:
            continue
        v = cut_count(n, edges, s)
        if best is None or v < best:
            best, states = v, {s}
        elif v == best:
            states.add(s)
    return best, states


PATH4 = (4, [(0, 1), (1, 2), (2, 3)])
K3 = (3, [(0, 1), (0, 2), (1, 2)])
K4 = (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])

# frozen from hand counting
PATH4_OPT = (1, {"0011", "1100"})
K3_PROBLEM_DIAG = [0, 2, 2, 2, 2, 2, 2, 0]
PATH4_SECTOR_CUTS = [1, 3, 2, 2, 3, 1]  # 0011 0101 0110 1001 1010 1100
BALANCED4 = {"0011", "0101", "0110", "1001", "1010", "1100"}
SIGMA_X_SUM_3 = [-3, -1, -1, -1, 1, 1, 1, 3]
DIM_C = {(2, 0): 2, (4, 0): 6, (6, 0): 20, (8, 0): 70, (3, 0): 0, (4, 2): 4}
