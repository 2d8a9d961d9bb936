"""Property-based checks on arbitrary grid functions (no reference data)."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from rlw import (
    ModelParams,
    PeriodicGrid,
    assemble_operators,
    discrete_inner,
    energy_cubic,
    mass,
)
from rlw.schemes import two_level_gradient

finite_vals = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
vectors = st.lists(finite_vals, min_size=8, max_size=32)
pair = st.tuples(vectors, vectors).filter(lambda p: len(p[0]) == len(p[1]))


def _ops(n):
    grid = PeriodicGrid(0.0, float(n), n)  # h = 1
    return assemble_operators(grid, ModelParams(sigma=0.5)), grid


@settings(max_examples=50, deadline=None)
@given(pair)
def test_central_difference_skew_for_any_vectors(p):
    u, v = np.array(p[0]), np.array(p[1])
    ops, grid = _ops(len(u))
    lhs = discrete_inner(ops.apply_c(u), v, grid.h)
    rhs = -discrete_inner(u, ops.apply_c(v), grid.h)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


@settings(max_examples=50, deadline=None)
@given(vectors)
def test_central_difference_annihilates_mass(vals):
    # column sums of the central difference vanish, so its image has zero mass
    u = np.array(vals)
    ops, grid = _ops(len(u))
    assert abs(mass(ops.apply_c(u), grid.h)) <= 1e-10 * max(1.0, float(np.max(np.abs(u))))


@settings(max_examples=50, deadline=None)
@given(pair)
def test_two_level_gradient_chain_rule_for_any_vectors(p):
    u0, u1 = np.array(p[0]), np.array(p[1])
    params = ModelParams(a=1.0, sigma=1.0, gamma=2.0)
    h = 1.0
    lhs = discrete_inner(u1 - u0, two_level_gradient(params, u0, u1), h)
    rhs = energy_cubic(u1, h, params) - energy_cubic(u0, h, params)
    scale = max(1.0, float(np.max(np.abs(u0))), float(np.max(np.abs(u1)))) ** 3
    assert abs(lhs - rhs) <= 1e-10 * scale * len(u0)


@settings(max_examples=30, deadline=None)
@given(vectors)
def test_constant_system_round_trip_for_any_vectors(vals):
    u = np.array(vals)
    ops, _ = _ops(len(u))
    back = ops.apply_m(ops.solve_m(u))
    assert np.max(np.abs(back - u)) <= 1e-9 * max(1.0, float(np.max(np.abs(u))))
