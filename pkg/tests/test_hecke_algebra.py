import cmath

import numpy as np
import pytest
from numpy.testing import assert_allclose

from artifact.hecke_algebra import (
    build_boundary_generator,
    build_bulk_generator,
    rep_boundary,
    rep_bulk,
    verify_hecke_suite,
)
from artifact.params import DegenerateParameters, ModelParams
from artifact.tensor_core import commutator, frob


def test_params_invariants():
    with pytest.raises(DegenerateParameters):
        ModelParams(n=1, mu=0.3)
    with pytest.raises(DegenerateParameters):
        ModelParams(n=2, mu=0.0)  # q = 1
    with pytest.raises(DegenerateParameters):
        ModelParams(n=2, mu=cmath.pi)  # q = -1 => q^2 = 1
    with pytest.raises(DegenerateParameters):
        ModelParams(n=3, mu=cmath.pi / 3)  # q^6 = 1
    p = ModelParams(n=3, mu=0.41, m=0.9 + 0.2j, zeta=0.6, sites=2)
    assert abs(p.q - cmath.exp(0.41j)) < 1e-15


def test_derived_constants():
    p = ModelParams(n=3, mu=0.37, m=1.1 - 0.3j)
    imu = 1j * p.mu
    assert abs(p.delta + (p.q + 1 / p.q)) < 1e-15
    # Q + 1/Q = 2i sinh(i mu m)
    assert abs(p.delta0 + 2j * cmath.sinh(imu * p.m)) < 1e-14
    assert abs(p.kappa - 2j * cmath.sinh(imu * (p.m - 1))) < 1e-14
    assert abs(p.delta0_rescaled + cmath.sinh(imu * p.m) / cmath.sinh(imu)) < 1e-14
    assert abs(p.kappa_rescaled - cmath.sinh(imu * (p.m - 1)) / cmath.sinh(imu)) < 1e-14
    # x(0) simplifies to cosh(i mu m) - cosh(2 i mu zeta)
    x0 = p.k_diag_x(0.0)
    assert abs(x0 - (cmath.cosh(imu * p.m) - cmath.cosh(2j * p.mu * p.zeta))) < 1e-14


def test_bulk_generator_n2_matrix():
    # expanded by hand from the double sum, basis (11, 12, 21, 22)
    p = ModelParams(n=2, mu=0.31)
    q = cmath.exp(0.31j)
    expected = np.array(
        [
            [0, 0, 0, 0],
            [0, -q, 1, 0],
            [0, 1, -1 / q, 0],
            [0, 0, 0, 0],
        ],
        dtype=complex,
    )
    assert_allclose(build_bulk_generator(p).mat, expected, atol=1e-15)


def test_bulk_generator_n3_nonzero_count():
    p = ModelParams(n=3, mu=0.37)
    u = build_bulk_generator(p).mat
    assert int(np.count_nonzero(np.abs(u) > 1e-14)) == 12


def test_bulk_generator_quadratic():
    for n in (2, 3, 4):
        p = ModelParams(n=n, mu=0.52 + 0.03j)
        u = build_bulk_generator(p)
        assert frob(u @ u - p.delta * u) < 1e-12 * frob(u)


def test_rep_bulk_embeddings():
    p2 = ModelParams(n=2, mu=0.44, sites=2)
    u = build_bulk_generator(p2)
    assert_allclose(rep_bulk(p2, 1).mat, u.mat)
    p3 = ModelParams(n=2, mu=0.44, sites=3)
    assert_allclose(rep_bulk(p3, 2).mat, np.kron(np.eye(2), u.mat))
    with pytest.raises(ValueError):
        rep_bulk(p3, 3)


def test_rep_bulk_distant_commute():
    p = ModelParams(n=2, mu=0.61, sites=4)
    u1, u3 = rep_bulk(p, 1), rep_bulk(p, 3)
    assert frob(commutator(u1, u3)) < 1e-14 * frob(u1) * frob(u3)


def test_boundary_generator_matrices():
    p = ModelParams(n=3, mu=0.5, m=0.8 + 0.1j)
    Q = p.Q
    expected = np.array(
        [[-1 / Q, 0, 1], [0, 0, 0], [1, 0, -Q]],
        dtype=complex,
    )
    assert_allclose(build_boundary_generator(p).mat, expected, atol=1e-15)
    p2 = ModelParams(n=2, mu=0.5, m=0.8 + 0.1j)
    expected2 = np.array([[-1 / p2.Q, 1], [1, -p2.Q]], dtype=complex)
    assert_allclose(build_boundary_generator(p2).mat, expected2, atol=1e-15)
    # unrescaled quadratic with -(Q + 1/Q)
    u0 = build_boundary_generator(p)
    assert frob(u0 @ u0 - p.delta0 * u0) < 1e-13 * frob(u0)


def test_rep_boundary():
    p = ModelParams(n=3, mu=0.5, m=0.8, sites=1)
    u0 = build_boundary_generator(p)
    assert_allclose(rep_boundary(p).mat, u0.mat / (2j * cmath.sinh(0.5j)))
    p3 = ModelParams(n=3, mu=0.5, m=0.8, sites=3)
    b = rep_boundary(p3)
    u2 = rep_bulk(p3, 2)
    assert frob(commutator(b, u2)) < 1e-14 * frob(b) * frob(u2)
    # rescaled quadratic
    assert frob(b @ b - p3.delta0_rescaled * b) < 1e-13 * frob(b)


@pytest.mark.parametrize(
    "n,sites,mu,m,limit",
    [
        (2, 2, 0.31, 0.8 + 0.2j, 1e-11),
        (3, 3, 0.47, 1.1 - 0.2j, 1e-11),
        (4, 4, 0.29, 0.7 + 0.1j, 1e-10),
    ],
)
def test_verify_hecke_suite(n, sites, mu, m, limit):
    p = ModelParams(n=n, mu=mu, m=m, zeta=0.6, sites=sites)
    report = verify_hecke_suite(p, tol=limit, samples=5, seed=42)
    assert report.passed, [c.id for c in report.failing()]
    assert report.max_residual() < limit
