"""Noisy penalty-based vs constrained quantum annealing for graph partitioning."""

from ._version import __version__
from .operators import (
    ContractViolation,
    DimensionError,
    EigenDecomposition,
    HermitianOperator,
    PauliString,
    commutator_norm,
    hermitian_eig,
    materialize,
    pauli_matrix,
)
from .instances import (
    Graph,
    PartitionSolution,
    brute_force_solve,
    graph_from_json,
    graph_to_json,
    random_graph,
)
from .subspace import SubspaceBasis, build_projector, enumerate_sector, restrict
from .hamiltonians import (
    AnnealSchedule,
    MethodConfig,
    build_constraint,
    build_driver_cqa,
    build_driver_pqa,
    build_penalty,
    build_problem,
    initial_state,
    make_schedule,
)
from .dynamics import (
    DensityMatrix,
    IntegratorConfig,
    NoiseChannel,
    Observer,
    RunRecord,
    evolve,
    evolve_pure,
    jump_operators,
    lindblad_rhs,
)
from .metrics import (
    GapScan,
    gap_scan,
    ground_space_fidelity,
    projection_fidelity,
    solution_fidelity,
    success_probability,
)

__all__ = [name for name in dir() if not name.startswith("_")]
