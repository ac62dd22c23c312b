import numpy as np
import pytest

from noisyqa.dynamics import IntegratorConfig, NoiseChannel, RunFailedError, RunRecord, evolve
from noisyqa.hamiltonians import AnnealSchedule, MethodConfig, initial_state, make_schedule
from noisyqa.instances import Graph, brute_force_solve, path_graph, random_graph
from noisyqa.metrics import (
    InstanceSummary,
    gap_scan,
    ground_space_fidelity,
    projection_fidelity,
    solution_fidelity,
    success_probability,
)
from noisyqa.hamiltonians import build_problem
from noisyqa.operators import HermitianOperator, hermitian_spectrum
from noisyqa.subspace import build_projector, enumerate_sector


def basis_rho(n, bits):
    r = np.zeros((2**n, 2**n), dtype=complex)
    k = int(bits, 2)
    r[k, k] = 1
    return r


def test_solution_fidelity_examples():
    sol = brute_force_solve(path_graph(4), 0)
    assert solution_fidelity(basis_rho(4, "0011"), sol) == 1
    assert solution_fidelity(basis_rho(4, "0101"), sol) == 0
    assert solution_fidelity(np.eye(16) / 16, sol) == pytest.approx(0.125)
    with pytest.raises(ValueError):
        solution_fidelity(np.eye(8) / 8, sol)


def test_projection_fidelity_examples():
    b8 = enumerate_sector(8, 0)
    assert projection_fidelity(np.eye(256) / 256, b8) == pytest.approx(70 / 256)
    assert projection_fidelity(basis_rho(2, "00"), enumerate_sector(2, 0)) == 0
    assert projection_fidelity(basis_rho(4, "0110"), build_projector(enumerate_sector(4, 0))) == 1


def test_pqa_initial_projection_fidelity_exact():
    for n in (2, 4, 6, 8):
        psi = initial_state(MethodConfig("PQA"), n)
        b = enumerate_sector(n, 0)
        assert projection_fidelity(np.outer(psi, psi.conj()), b) == pytest.approx(b.dim_c / 2**n, abs=1e-15)


def test_ground_space_fidelity_examples():
    h = np.diag([0.0, 1.0, 2.0, 3.0]) + 0.3 * np.fliplr(np.eye(4))
    v = np.linalg.eigh(h)[1][:, 0]
    assert ground_space_fidelity(np.outer(v, v.conj()), h) == pytest.approx(1)
    hp = build_problem(random_graph(5, 0.5, 1))
    assert ground_space_fidelity(basis_rho(5, "00000"), hp) == pytest.approx(1)
    rho = np.eye(4) / 4
    assert ground_space_fidelity(rho, np.zeros((4, 4))) == pytest.approx(1)


def test_ground_space_fidelity_sector_vs_full():
    # |0000> is a full-space ground state of the problem but lies outside the sector
    g = path_graph(4)
    b = enumerate_sector(4, 0)
    h = build_problem(g)
    assert ground_space_fidelity(basis_rho(4, "0000"), h) == pytest.approx(1)
    assert ground_space_fidelity(basis_rho(4, "0000"), h, sector=b) == pytest.approx(0)
    assert ground_space_fidelity(basis_rho(4, "0011"), h, sector=b) == pytest.approx(1)


def test_gap_scan_constant_schedule():
    h = HermitianOperator.diag([0, 0, 1, 3])
    for mode in ("final_manifold", "first_distinct"):
        s = gap_scan(AnnealSchedule(h, h, 1.0), samples=11, degeneracy_tol=1e-6, mode=mode)
        assert np.allclose(s.gaps, 1)
        assert s.min_gap == 1 and s.dim == 4
    with pytest.raises(ValueError):
        gap_scan(AnnealSchedule(h, h, 1.0), samples=1)


def test_gap_scan_refinement_single_edge():
    sch = make_schedule(MethodConfig("PQA", alpha=8.0), Graph(2, ((0, 1),)), 20.0)
    coarse = gap_scan(sch, samples=201)
    fine = gap_scan(sch, samples=2001)
    assert coarse.min_gap == pytest.approx(fine.min_gap, rel=0.02)
    assert np.all(coarse.gaps >= 0)
    assert coarse.min_gap == coarse.gaps.min()
    assert coarse.argmin_fraction == coarse.fractions[np.argmin(coarse.gaps)]


def test_gap_scan_sector_dimension_and_difference():
    g = random_graph(8, 0.5, 0)
    sch = make_schedule(MethodConfig("CQA"), g, 20.0)
    sector = gap_scan(sch, enumerate_sector(8, 0), samples=21)
    assert sector.dim == 70
    full = gap_scan(sch, samples=21)
    assert full.dim == 256
    assert abs(full.min_gap - sector.min_gap) > 1e-3


def test_gap_scan_against_dense_spectrum():
    g = random_graph(4, 0.5, 5)
    sch = make_schedule(MethodConfig("PQA"), g, 20.0)
    s = gap_scan(sch, samples=11)
    k = s.manifold
    for f, gap in zip(s.fractions, s.gaps):
        vals = hermitian_spectrum(sch.at_fraction(f))
        assert gap == pytest.approx(vals[k] - vals[0], abs=1e-12)


def test_first_distinct_mode_is_literal():
    g = random_graph(6, 0.5, 0)
    sch = make_schedule(MethodConfig("PQA"), g, 20.0)
    lit = gap_scan(sch, samples=21, mode="first_distinct")
    for f, gap in zip(lit.fractions, lit.gaps):
        vals = hermitian_spectrum(sch.at_fraction(f))
        above = vals[vals > vals[0] + 1e-9]
        assert gap == pytest.approx(above[0] - vals[0], abs=1e-12)


def test_success_probability():
    sol = brute_force_solve(path_graph(4), 0)
    from noisyqa.dynamics import DensityMatrix
    ok = RunRecord(np.array([0.0]), {}, DensityMatrix(basis_rho(4, "1100")))
    assert success_probability(ok, sol) == 1
    zero = RunRecord(np.array([0.0]), {}, DensityMatrix(basis_rho(4, "1010")))
    assert success_probability(zero, sol) == 0
    bad = RunRecord(np.array([0.0]), {}, None, status="failed", failure={"check": "trace_drift"})
    with pytest.raises(RunFailedError):
        success_probability(bad, sol)


def test_success_probability_strong_depolarizing():
    n = 4
    g = random_graph(n, 0.5, 1)
    sol = brute_force_solve(g, 0)
    cfg = MethodConfig("PQA")
    sch = make_schedule(cfg, g, 2.0)
    rec = evolve(sch, initial_state(cfg, n), NoiseChannel("depolarizing", 10.0), IntegratorConfig(2000, 100))
    assert success_probability(rec, sol) == pytest.approx(len(sol.optimal_states) / 2**n, abs=0.02)


def test_instance_summary_bounds():
    InstanceSummary(0.5, 1.0, 0.1, 0.2, 0.0)
    with pytest.raises(ValueError):
        InstanceSummary(1.1, 0.5, 0.1, 0.2, 0.0)
