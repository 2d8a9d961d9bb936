"""Uniform periodic grid, nodal grid functions and the discrete inner product.

A grid function is a plain numpy vector of N nodal values; node N is
identified with node 0, so vectors never carry a duplicated endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the long-wave model: advection ``a``,
    dispersion ``sigma`` (units length^2) and nonlinearity ``gamma``."""

    a: float = 1.0
    sigma: float = 1.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.sigma > 0 and self.gamma > 0):
            raise ValueError("model parameters a, sigma, gamma must all be positive")


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform mesh on [x_left, x_right] with N cells and N distinct nodes."""

    x_left: float
    x_right: float
    n_cells: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.x_left) or not np.isfinite(self.x_right):
            raise ValueError("grid bounds must be finite")
        if self.x_right <= self.x_left:
            raise ValueError("x_right must exceed x_left")
        if self.n_cells < 4:
            raise ValueError("n_cells must be at least 4 (stencils need 3 distinct neighbors)")

    @property
    def h(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    def nodes(self) -> np.ndarray:
        # nodes x_j = x_left + j*h, j = 0..N-1; node N is node 0
        return self.x_left + self.h * np.arange(self.n_cells)


def build_grid(x_left: float, x_right: float, n_cells: int) -> PeriodicGrid:
    return PeriodicGrid(x_left, x_right, int(n_cells))


def _check_same_length(u: np.ndarray, v: np.ndarray) -> None:
    if len(u) != len(v):
        raise ValueError(f"grid function length mismatch: {len(u)} vs {len(v)}")


def discrete_inner(u: np.ndarray, v: np.ndarray, h: float) -> float:
    """Discrete L2 inner product h * sum(u_j v_j)."""
    _check_same_length(u, v)
    return h * float(np.dot(u, v))


def grid_norm(u: np.ndarray, h: float) -> float:
    """Discrete L2 norm induced by :func:`discrete_inner`."""
    return float(np.sqrt(discrete_inner(u, u, h)))


def hadamard(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Entrywise product of two grid functions."""
    _check_same_length(u, v)
    return u * v
