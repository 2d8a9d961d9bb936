"""The four energy-conserving time integrators and their startup steps.

Scheme identifiers:

* ``FIEP`` -- fully implicit two-level scheme built on a discrete
  gradient of the cubic energy; needs a fixed-point solve per step.
* ``LIEP`` -- linear implicit three-level scheme built on a two-point
  discrete gradient; one linear solve per step.
* ``LICN`` / ``LILF`` -- linear implicit Crank-Nicolson / leap-frog
  steppers for the quadratized system with auxiliary variable v ~ u^2;
  one linear solve per step.

For LICN/LILF the auxiliary update is the energy-consistent form

    v_new = v_old + 2 * d * (u_new - u_old)

with ``d`` the scheme's frozen coefficient state (the extrapolated
mid-level for LICN, the middle level for LILF).  Eliminating v with this
relation reduces each step to a single cyclic-tridiagonal solve and makes
the quadratic energy exactly constant, which the coupled form with the
elliptic operator on the v-equation does not achieve.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .operators import SpatialOperators

SCHEMES = ("FIEP", "LIEP", "LICN", "LILF")


@dataclass(frozen=True)
class TimeConfig:
    """Time step, final time and the implied number of steps."""

    tau: float
    t_end: float
    n_steps: int

    def __post_init__(self) -> None:
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be at least 1")
        if abs(self.tau * self.n_steps - self.t_end) > 1e-12 * abs(self.t_end):
            raise ValueError("tau * n_steps must reproduce t_end")

    @classmethod
    def from_t_end(cls, tau: float, t_end: float) -> "TimeConfig":
        if tau <= 0:
            raise ValueError("tau must be positive")
        return cls(tau, t_end, int(round(t_end / tau)))


@dataclass(frozen=True)
class NonlinearSolveConfig:
    tol: float = 1e-13
    max_iter: int = 200

    def __post_init__(self) -> None:
        if self.tol <= 0 or self.max_iter < 1:
            raise ValueError("tol must be positive and max_iter at least 1")


class NonConvergenceError(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"fixed-point iteration did not converge in {iterations} iterations "
            f"(last update {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


class SingularStepError(RuntimeError):
    """Singular per-step system; carries the offending step index."""

    def __init__(self, step_index: int, cause: Exception):
        super().__init__(f"singular step matrix at step {step_index}: {cause}")
        self.step_index = step_index


@dataclass
class SchemeState:
    """Time-stepper state after ``step_index`` completed steps.

    Three-level schemes carry ``u_prev`` once started; the quadratized
    schemes additionally carry ``v_curr`` (and ``v_prev`` for LILF).
    ``solves_in_step`` counts the linear solves the latest step used.
    """

    scheme: str
    u_curr: np.ndarray
    u_prev: np.ndarray | None = None
    v_curr: np.ndarray | None = None
    v_prev: np.ndarray | None = None
    step_index: int = 0
    solves_in_step: int = 0


def init_state(scheme: str, u0: np.ndarray) -> SchemeState:
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    v0 = u0 * u0 if scheme in ("LICN", "LILF") else None
    return SchemeState(scheme=scheme, u_curr=np.asarray(u0, dtype=np.float64), v_curr=v0)


def two_level_gradient(params, u_old: np.ndarray, u_new: np.ndarray) -> np.ndarray:
    """Discrete gradient of the cubic energy between two solution levels.

    Pairing it with the level difference telescopes the energy exactly:
    h * sum((u_new - u_old) * grad) equals the cubic energy difference.
    """
    g, a = params.gamma, params.a
    return (g / 6.0) * (u_new * u_new + u_old * u_new + u_old * u_old) + (a / 2.0) * (
        u_new + u_old
    )


def three_level_gradient(params, u_m, u_c, u_p) -> np.ndarray:
    """Two-point discrete gradient across three levels (LIEP); pairing with
    the centered difference telescopes the two-level energy."""
    g, a = params.gamma, params.a
    return a * u_c + (g / 6.0) * u_c * (u_p + u_c + u_m)


def fixed_point_solve(
    step_map: Callable[[np.ndarray], np.ndarray],
    init: np.ndarray,
    cfg: NonlinearSolveConfig,
) -> tuple[np.ndarray, int]:
    """Iterate x <- step_map(x) until the max-norm update drops below tol.

    Returns the fixed point and the number of map evaluations.
    """
    x = init
    for it in range(1, cfg.max_iter + 1):
        x_new = step_map(x)
        res = float(np.max(np.abs(x_new - x))) if len(x) else 0.0
        x = x_new
        if res <= cfg.tol:
            return x, it
    raise NonConvergenceError(cfg.max_iter, res)


def _solve_two_level(
    ops: SpatialOperators, u0: np.ndarray, tau: float, cfg: NonlinearSolveConfig
) -> tuple[np.ndarray, int]:
    # fixed point of x = u0 - tau * M^{-1} C grad(u0, x)
    params = ops.params

    def step_map(x: np.ndarray) -> np.ndarray:
        return u0 - tau * ops.solve_m(ops.apply_c(two_level_gradient(params, u0, x)))

    return fixed_point_solve(step_map, u0, cfg)


def fiep_step(
    state: SchemeState,
    ops: SpatialOperators,
    tau: float,
    nl_cfg: NonlinearSolveConfig = NonlinearSolveConfig(),
) -> SchemeState:
    u_next, iters = _solve_two_level(ops, state.u_curr, tau, nl_cfg)
    return replace(
        state,
        u_curr=u_next,
        u_prev=state.u_curr,
        step_index=state.step_index + 1,
        solves_in_step=iters,
    )


def two_level_startup(
    u0: np.ndarray,
    ops: SpatialOperators,
    tau: float,
    nl_cfg: NonlinearSolveConfig = NonlinearSolveConfig(),
) -> np.ndarray:
    """First level for the three-level LIEP scheme; shares the FIEP code path."""
    u1, _ = _solve_two_level(ops, u0, tau, nl_cfg)
    return u1


def liep_step(state: SchemeState, ops: SpatialOperators, tau: float) -> SchemeState:
    if state.u_prev is None:
        raise ValueError("liep_step needs a started state (u_prev missing)")
    params = ops.params
    uc, up = state.u_curr, state.u_prev
    w = (params.gamma / 6.0) * uc
    # increment form: solve for delta = u_next - u_prev so the large M u / tau
    # contributions cancel analytically instead of in floating point
    rhs = -ops.apply_c(params.a * uc + (params.gamma / 6.0) * uc * (uc + 2.0 * up))
    ops.pin_boundary_increment(rhs, up)
    try:
        u_next = up + ops.step_factor(1.0 / (2.0 * tau), w).solve(rhs)
    except Exception as exc:  # singular or failed factorization
        raise SingularStepError(state.step_index, exc) from exc
    return replace(
        state,
        u_curr=u_next,
        u_prev=uc,
        step_index=state.step_index + 1,
        solves_in_step=1,
    )


def _quadratized_solve(
    ops: SpatialOperators,
    scale: float,
    d: np.ndarray,
    u_old: np.ndarray,
    v_old: np.ndarray,
    step_index: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Shared core of LICN/LILF: one solve for u_new, then the local v update."""
    params = ops.params
    w = (params.a / 2.0) + (params.gamma / 3.0) * d
    # increment form (see liep_step): delta = u_new - u_old
    rhs = -ops.apply_c(
        (params.gamma / 6.0) * v_old + params.a * u_old + (params.gamma / 3.0) * d * u_old
    )
    ops.pin_boundary_increment(rhs, u_old)
    try:
        delta = ops.step_factor(scale, w).solve(rhs)
    except Exception as exc:
        raise SingularStepError(step_index, exc) from exc
    u_new = u_old + delta
    v_new = v_old + 2.0 * d * delta
    return u_new, v_new


def licn_startup(
    u0: np.ndarray, ops: SpatialOperators, tau: float
) -> tuple[np.ndarray, np.ndarray]:
    """Two-level startup of the quadratized schemes, from v0 = u0 * u0."""
    v0 = u0 * u0
    return _quadratized_solve(ops, 1.0 / tau, u0, u0, v0, step_index=0)


def licn_step(state: SchemeState, ops: SpatialOperators, tau: float) -> SchemeState:
    if state.u_prev is None or state.v_curr is None:
        raise ValueError("licn_step needs a started state (u_prev / v_curr missing)")
    d = 1.5 * state.u_curr - 0.5 * state.u_prev
    u_new, v_new = _quadratized_solve(
        ops, 1.0 / tau, d, state.u_curr, state.v_curr, state.step_index
    )
    return replace(
        state,
        u_curr=u_new,
        u_prev=state.u_curr,
        v_curr=v_new,
        v_prev=state.v_curr,
        step_index=state.step_index + 1,
        solves_in_step=1,
    )


def lilf_step(state: SchemeState, ops: SpatialOperators, tau: float) -> SchemeState:
    if state.u_prev is None or state.v_prev is None:
        raise ValueError("lilf_step needs a started state (u_prev / v_prev missing)")
    d = state.u_curr
    u_new, v_new = _quadratized_solve(
        ops, 1.0 / (2.0 * tau), d, state.u_prev, state.v_prev, state.step_index
    )
    return replace(
        state,
        u_curr=u_new,
        u_prev=state.u_curr,
        v_curr=v_new,
        v_prev=state.v_curr,
        step_index=state.step_index + 1,
        solves_in_step=1,
    )


def advance(
    state: SchemeState,
    ops: SpatialOperators,
    tau: float,
    nl_cfg: NonlinearSolveConfig = NonlinearSolveConfig(),
) -> SchemeState:
    """Advance one level, dispatching on scheme and handling startup steps."""
    scheme = state.scheme
    if scheme == "FIEP":
        return fiep_step(state, ops, tau, nl_cfg)
    if scheme == "LIEP":
        if state.step_index == 0:
            u1, iters = _solve_two_level(ops, state.u_curr, tau, nl_cfg)
            return replace(
                state, u_curr=u1, u_prev=state.u_curr, step_index=1, solves_in_step=iters
            )
        return liep_step(state, ops, tau)
    if scheme in ("LICN", "LILF"):
        if state.step_index == 0:
            u1, v1 = licn_startup(state.u_curr, ops, tau)
            return replace(
                state,
                u_curr=u1,
                u_prev=state.u_curr,
                v_curr=v1,
                v_prev=state.u_curr * state.u_curr,
                step_index=1,
                solves_in_step=1,
            )
        return licn_step(state, ops, tau) if scheme == "LICN" else lilf_step(state, ops, tau)
    raise ValueError(f"unknown scheme {scheme!r}")
