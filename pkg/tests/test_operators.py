"""Operator tests against independently assembled dense matrices.

The dense oracles in conftest build each stencil entry by entry; the
production code uses vectorized rolls and an O(N) factorization, so
agreement here checks the construction, not just self-consistency.
"""

import numpy as np
import pytest

from rlw import DirichletBC, ModelParams, PeriodicGrid, assemble_operators, discrete_inner
from rlw.operators import SingularOperatorError, TridiagFactor

from conftest import dense_central, dense_laplacian, dense_mass, dense_system, smooth_field


def _ops(n=16, sigma=1.0, span=(-1.0, 1.0)):
    grid = PeriodicGrid(span[0], span[1], n)
    return assemble_operators(grid, ModelParams(sigma=sigma)), grid


@pytest.mark.parametrize("n", [5, 8, 16, 32])
def test_dense_oracle_applications(n):
    ops, grid = _ops(n)
    h = grid.h
    u = smooth_field(n, seed=n)
    assert np.allclose(ops.apply_a(u), dense_mass(n, h) @ u, atol=1e-12)
    assert np.allclose(ops.apply_b(u), dense_laplacian(n, h) @ u, atol=1e-12)
    assert np.allclose(ops.apply_c(u), dense_central(n) @ u, atol=1e-12)
    assert np.allclose(ops.apply_m(u), dense_system(n, h, 1.0) @ u, atol=1e-12)


@pytest.mark.parametrize("n", [8, 16, 32])
@pytest.mark.parametrize("sigma", [0.2, 1.0, 5.0])
def test_dense_oracle_solve(n, sigma):
    ops, grid = _ops(n, sigma=sigma)
    b = smooth_field(n, seed=3 * n)
    x_dense = np.linalg.solve(dense_system(n, grid.h, sigma), b)
    assert np.allclose(ops.solve_m(b), x_dense, atol=1e-12)


def test_dense_oracle_step_factor():
    n = 24
    ops, grid = _ops(n, sigma=0.7)
    w = smooth_field(n, seed=11, amplitude=0.3)
    scale = 4.0
    s_dense = scale * dense_system(n, grid.h, 0.7) + dense_central(n) @ np.diag(w)
    fac = ops.step_factor(scale, w)
    b = smooth_field(n, seed=12)
    assert np.allclose(fac.matvec(b), s_dense @ b, atol=1e-12)
    assert np.allclose(fac.solve(b), np.linalg.solve(s_dense, b), atol=1e-12)


def test_central_difference_skew_adjoint():
    ops, grid = _ops(32)
    u = smooth_field(32, seed=1)
    v = smooth_field(32, seed=2)
    lhs = discrete_inner(ops.apply_c(u), v, grid.h)
    rhs = -discrete_inner(u, ops.apply_c(v), grid.h)
    assert abs(lhs - rhs) <= 1e-13


def test_mass_and_laplacian_self_adjoint():
    ops, grid = _ops(32)
    u = smooth_field(32, seed=4)
    v = smooth_field(32, seed=5)
    for op in (ops.apply_a, ops.apply_b, ops.apply_m):
        lhs = discrete_inner(op(u), v, grid.h)
        rhs = discrete_inner(u, op(v), grid.h)
        assert abs(lhs - rhs) <= 1e-12


def test_transpose_identity():
    # the circulant stencils satisfy A = A^T, B = B^T, C = -C^T entrywise
    n = 16
    h = 0.125
    assert np.array_equal(dense_mass(n, h), dense_mass(n, h).T)
    assert np.array_equal(dense_laplacian(n, h), dense_laplacian(n, h).T)
    assert np.array_equal(dense_central(n), -dense_central(n).T)


def test_solve_then_apply_round_trip():
    # M is SPD, so solve followed by apply must return the input
    ops, _ = _ops(32, sigma=2.0)
    u = smooth_field(32, seed=7)
    assert np.allclose(ops.apply_m(ops.solve_m(u)), u, atol=1e-11)
    assert np.allclose(ops.solve_m(ops.apply_m(u)), u, atol=1e-11)


def test_system_matrix_spd():
    n = 20
    m = dense_system(n, 0.1, 1.0)
    eig = np.linalg.eigvalsh(m)
    assert np.all(eig > 0)


def test_minv_c_antisymmetric_form():
    # w -> (w, M^{-1} C w) vanishes because M^{-1} C is skew-adjoint in the
    # M-weighted sense and circulants commute
    ops, grid = _ops(32)
    w = smooth_field(32, seed=9)
    val = discrete_inner(w, ops.solve_m(ops.apply_c(w)), grid.h)
    norm2 = discrete_inner(w, w, grid.h)
    assert abs(val) <= 1e-11 * max(norm2, 1.0)


def test_column_sums():
    # columns of C sum to zero (mass conservation); columns of A sum to h
    n = 12
    h = 0.25
    assert np.allclose(dense_central(n).sum(axis=0), 0.0, atol=1e-14)
    assert np.allclose(dense_mass(n, h).sum(axis=0), h, atol=1e-14)
    ops, grid = _ops(n, span=(0.0, n * h))
    ones = np.ones(n)
    assert np.allclose(ops.apply_c(ones), 0.0, atol=1e-14)


def test_tridiag_factor_plain_and_corners():
    rng = np.random.default_rng(0)
    n = 10
    lower = rng.normal(size=n - 1)
    diag = 5.0 + rng.normal(size=n)
    upper = rng.normal(size=n - 1)
    dense = np.diag(diag) + np.diag(lower, -1) + np.diag(upper, 1)
    b = rng.normal(size=n)
    fac = TridiagFactor(lower, diag, upper)
    assert np.allclose(fac.solve(b), np.linalg.solve(dense, b), atol=1e-12)
    dense[0, -1] = 0.3
    dense[-1, 0] = -0.4
    fac2 = TridiagFactor(lower, diag, upper, corner_tr=0.3, corner_bl=-0.4)
    assert np.allclose(fac2.solve(b), np.linalg.solve(dense, b), atol=1e-12)
    assert np.allclose(fac2.matvec(b), dense @ b, atol=1e-13)


def test_singular_factorization_rejected():
    # rows 0 and 1 coincide, so the matrix is exactly singular
    with pytest.raises(SingularOperatorError):
        TridiagFactor(
            np.array([1.0, 0.0]), np.array([1.0, 1.0, 1.0]), np.array([1.0, 0.0])
        )


def test_dirichlet_rows():
    grid = PeriodicGrid(0.0, 1.0, 10)
    ops = assemble_operators(grid, ModelParams(), DirichletBC(2.0, 0.5))
    u = smooth_field(10, seed=21)
    # stencil applications zero the pinned rows
    for op in (ops.apply_a, ops.apply_b, ops.apply_c):
        out = op(u)
        assert out[0] == 0.0 and out[-1] == 0.0
    # the constant system keeps identity rows at the boundary
    out = ops.apply_m(u)
    assert out[0] == u[0] and out[-1] == u[-1]
    rhs = np.zeros(10)
    ops.pin_boundary(rhs)
    assert rhs[0] == 2.0 and rhs[-1] == 0.5
    base = np.full(10, 0.25)
    inc = np.zeros(10)
    ops.pin_boundary_increment(inc, base)
    assert inc[0] == pytest.approx(1.75) and inc[-1] == pytest.approx(0.25)


def test_dirichlet_step_factor_pins_solution():
    grid = PeriodicGrid(0.0, 1.0, 12)
    ops = assemble_operators(grid, ModelParams(), DirichletBC(1.0, -1.0))
    fac = ops.step_factor(1.0, np.zeros(12))
    rhs = smooth_field(12, seed=30)
    rhs[0], rhs[-1] = 1.0, -1.0
    x = fac.solve(rhs)
    assert x[0] == pytest.approx(1.0, abs=1e-13)
    assert x[-1] == pytest.approx(-1.0, abs=1e-13)


def test_length_check():
    ops, _ = _ops(8)
    with pytest.raises(ValueError):
        ops.apply_a(np.ones(7))
    with pytest.raises(ValueError):
        ops.solve_m(np.ones(9))


def test_solve_counter():
    ops, _ = _ops(8)
    assert ops.m_solves == 0
    ops.solve_m(np.ones(8))
    ops.solve_m(np.ones(8))
    assert ops.m_solves == 2
