"""Circulant stencil operators of the modified finite volume discretization.

The three stencils are

* weighted mass:      (h/8) [1, 6, 1]
* discrete Laplacian: (1/h) [1, -2, 1]
* central difference: (1/2) [-1, 0, 1]

applied with modular indices under periodic boundaries.  The constant
system matrix M = mass - sigma * laplacian is factored once per run; the
periodic corner entries are folded in through a rank-2 Woodbury
correction of a plain tridiagonal LU, so every solve stays O(N).

In Dirichlet mode (used for the bore inflow problem) rows 0 and N-1 of
any assembled system are replaced by identity rows that pin the boundary
values; interior rows keep the stencils unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import get_lapack_funcs

from .grid import ModelParams, PeriodicGrid

_gttrf, _gttrs = get_lapack_funcs(("gttrf", "gttrs"), (np.empty(0, dtype=np.float64),))


class SingularOperatorError(RuntimeError):
    """Raised when a factorization hits a pivot too small to trust."""


@dataclass(frozen=True)
class DirichletBC:
    """Pinned boundary values u(x_left) = left, u(x_right - h) = right."""

    left: float
    right: float


class TridiagFactor:
    """LU factorization of a tridiagonal matrix, optionally with the two
    periodic corner entries (0, N-1) and (N-1, 0) handled by a Woodbury
    correction.  Reusable for any number of right-hand sides."""

    def __init__(
        self,
        lower: np.ndarray,
        diag: np.ndarray,
        upper: np.ndarray,
        corner_tr: float = 0.0,
        corner_bl: float = 0.0,
        pivot_floor: float = 0.0,
    ):
        n = len(diag)
        self._bands = (np.array(lower), np.array(diag), np.array(upper))
        self._corners = (corner_tr, corner_bl)
        dl, d, du, du2, ipiv, info = _gttrf(lower, diag, upper)
        if info != 0:
            raise SingularOperatorError(f"tridiagonal factorization failed (info={info})")
        if pivot_floor > 0.0 and np.min(np.abs(d)) < pivot_floor:
            raise SingularOperatorError(
                f"pivot {np.min(np.abs(d)):.3e} below floor {pivot_floor:.3e}"
            )
        self._fac = (dl, d, du, du2, ipiv)
        self._corner = None
        if corner_tr != 0.0 or corner_bl != 0.0:
            # S = T + U V^T with U = [e_0, e_{N-1}], V = [c_tr e_{N-1}, c_bl e_0]
            uc = np.zeros((n, 2))
            uc[0, 0] = 1.0
            uc[n - 1, 1] = 1.0
            z = self._tri_solve(uc)
            cap = np.eye(2)
            cap[0, 0] += corner_tr * z[n - 1, 0]
            cap[0, 1] += corner_tr * z[n - 1, 1]
            cap[1, 0] += corner_bl * z[0, 0]
            cap[1, 1] += corner_bl * z[0, 1]
            if abs(np.linalg.det(cap)) < 1e-300:
                raise SingularOperatorError("singular periodic corner correction")
            self._corner = (z, np.linalg.inv(cap), corner_tr, corner_bl)

    def _tri_solve(self, b: np.ndarray) -> np.ndarray:
        x, info = _gttrs(*self._fac, b)
        if info != 0:
            raise SingularOperatorError(f"tridiagonal solve failed (info={info})")
        return x

    def matvec(self, x: np.ndarray) -> np.ndarray:
        lo, d, up = self._bands
        out = d * x
        out[:-1] += up * x[1:]
        out[1:] += lo * x[:-1]
        c_tr, c_bl = self._corners
        out[0] += c_tr * x[-1]
        out[-1] += c_bl * x[0]
        return out

    def _solve_once(self, b: np.ndarray) -> np.ndarray:
        y = self._tri_solve(np.ascontiguousarray(b, dtype=np.float64))
        if self._corner is None:
            return y
        z, cap_inv, c_tr, c_bl = self._corner
        t = cap_inv @ np.array([c_tr * y[-1], c_bl * y[0]])
        return y - z @ t

    def solve(self, b: np.ndarray) -> np.ndarray:
        # one pass of iterative refinement keeps per-step residuals near
        # machine epsilon, so conservation errors stay a pure random walk
        x = self._solve_once(b)
        return x + self._solve_once(b - self.matvec(x))


class SpatialOperators:
    """Assembled stencil operators bound to one grid and parameter set.

    Attributes ``stencil_a``, ``stencil_b``, ``stencil_c`` carry the raw
    3-point stencils; ``m_solves`` counts constant-system solves for
    efficiency instrumentation.
    """

    def __init__(
        self,
        grid: PeriodicGrid,
        params: ModelParams,
        boundary: DirichletBC | None = None,
    ):
        self.grid = grid
        self.params = params
        self.boundary = boundary
        h = grid.h
        self.stencil_a = (h / 8.0) * np.array([1.0, 6.0, 1.0])
        self.stencil_b = (1.0 / h) * np.array([1.0, -2.0, 1.0])
        self.stencil_c = 0.5 * np.array([-1.0, 0.0, 1.0])
        # constant system matrix: diagonal and off-diagonal entries
        self.m_diag = 6.0 * h / 8.0 + 2.0 * params.sigma / h
        self.m_off = h / 8.0 - params.sigma / h
        self.pivot_floor = 1e-14 * h
        self._m_factor = self.step_factor(1.0, np.zeros(grid.n_cells))
        self.m_solves = 0

    @property
    def is_periodic(self) -> bool:
        return self.boundary is None

    def _mask_boundary_rows(self, out: np.ndarray) -> np.ndarray:
        if self.boundary is not None:
            out[0] = 0.0
            out[-1] = 0.0
        return out

    def apply_a(self, u: np.ndarray) -> np.ndarray:
        self._check_length(u)
        h = self.grid.h
        out = (h / 8.0) * (np.roll(u, 1) + 6.0 * u + np.roll(u, -1))
        return self._mask_boundary_rows(out)

    def apply_b(self, u: np.ndarray) -> np.ndarray:
        self._check_length(u)
        h = self.grid.h
        out = (np.roll(u, -1) - 2.0 * u + np.roll(u, 1)) / h
        return self._mask_boundary_rows(out)

    def apply_c(self, u: np.ndarray) -> np.ndarray:
        self._check_length(u)
        out = 0.5 * (np.roll(u, -1) - np.roll(u, 1))
        return self._mask_boundary_rows(out)

    def apply_m(self, u: np.ndarray) -> np.ndarray:
        """Apply the constant system matrix (identity rows at pinned boundaries)."""
        self._check_length(u)
        out = self.m_diag * u + self.m_off * (np.roll(u, 1) + np.roll(u, -1))
        if self.boundary is not None:
            out[0] = u[0]
            out[-1] = u[-1]
        return out

    def solve_m(self, b: np.ndarray) -> np.ndarray:
        """Solve the constant system; the factorization is reused across calls."""
        self._check_length(b)
        self.m_solves += 1
        return self._m_factor.solve(b)

    def step_factor(self, scale: float, w: np.ndarray) -> TridiagFactor:
        """Factor scale*M + central_difference * diag(w).

        Every time integrator's per-step linear system has this shape; the
        product of the central difference with a diagonal keeps the
        tridiagonal-plus-corners sparsity, so one O(N) factorization covers
        a step.
        """
        n = self.grid.n_cells
        self._check_length(w)
        diag = np.full(n, scale * self.m_diag)
        upper = scale * self.m_off + 0.5 * w[1:]
        lower = scale * self.m_off - 0.5 * w[:-1]
        if self.boundary is None:
            corner_tr = scale * self.m_off - 0.5 * w[-1]
            corner_bl = scale * self.m_off + 0.5 * w[0]
            return TridiagFactor(lower, diag, upper, corner_tr, corner_bl, self.pivot_floor)
        diag[0] = 1.0
        diag[-1] = 1.0
        upper[0] = 0.0
        lower[-1] = 0.0
        return TridiagFactor(lower, diag, upper, pivot_floor=self.pivot_floor)

    def pin_boundary(self, rhs: np.ndarray) -> np.ndarray:
        """Overwrite boundary rows of a right-hand side with pinned values."""
        if self.boundary is not None:
            rhs[0] = self.boundary.left
            rhs[-1] = self.boundary.right
        return rhs

    def pin_boundary_increment(self, rhs: np.ndarray, u_base: np.ndarray) -> np.ndarray:
        """Boundary rows for an increment solve u_new = u_base + delta."""
        if self.boundary is not None:
            rhs[0] = self.boundary.left - u_base[0]
            rhs[-1] = self.boundary.right - u_base[-1]
        return rhs

    def _check_length(self, u: np.ndarray) -> None:
        if len(u) != self.grid.n_cells:
            raise ValueError(f"expected length {self.grid.n_cells}, got {len(u)}")


def assemble_operators(
    grid: PeriodicGrid,
    params: ModelParams,
    boundary: DirichletBC | None = None,
) -> SpatialOperators:
    return SpatialOperators(grid, params, boundary)
