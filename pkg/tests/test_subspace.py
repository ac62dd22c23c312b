import numpy as np
import pytest

from noisyqa.hamiltonians import build_constraint, build_driver_pqa, build_problem
from noisyqa.instances import path_graph
from noisyqa.subspace import SectorLeakError, build_projector, enumerate_sector, restrict, sector_dim

from oracles import DIM_C, PATH4_SECTOR_CUTS


def test_enumerate_examples():
    b = enumerate_sector(2, 0)
    assert b.basis_states == ["01", "10"] and b.dim_c == 2
    assert enumerate_sector(8, 0).dim_c == 70
    assert enumerate_sector(3, 0).dim_c == 0
    for (n, c), d in DIM_C.items():
        assert enumerate_sector(n, c).dim_c == d == sector_dim(n, c)


def test_sector_dims_partition_space():
    for n in range(1, 9):
        assert sum(enumerate_sector(n, c).dim_c for c in range(-n, n + 1)) == 2**n


def test_projector():
    p = build_projector(enumerate_sector(2, 0))
    assert np.array_equal(p.matrix.matrix, np.diag([0, 1, 1, 0]))
    p4 = build_projector(enumerate_sector(4, 0))
    m = p4.matrix.matrix
    assert np.trace(m).real == 6
    assert np.max(np.abs(m @ m - m)) < 1e-12
    v = np.zeros(16)
    v[[3, 5]] = [0.6, 0.8]
    assert np.array_equal(m @ v, v)


def test_restrict_examples():
    b = enumerate_sector(4, 0)
    r = restrict(build_problem(path_graph(4)), b)
    assert np.array_equal(r.matrix, np.diag(PATH4_SECTOR_CUTS))
    assert np.array_equal(restrict(build_constraint(4), b).matrix, np.zeros((6, 6)))
    b2 = enumerate_sector(4, 2)
    assert np.array_equal(restrict(build_constraint(4), b2).matrix, 2 * np.eye(4))
    with pytest.raises(SectorLeakError):
        restrict(build_driver_pqa(4), b)
