"""Shared fixtures: dense oracle matrices for the stencil operators and a
smooth random field generator.

The dense builders assemble the operators entry by entry from their
definitions, independently of the vectorized production code, so that
operator tests compare two genuinely different constructions.
"""

import numpy as np
import pytest

from rlw import ModelParams, PeriodicGrid


def dense_mass(n: int, h: float) -> np.ndarray:
    a = np.zeros((n, n))
    for j in range(n):
        a[j, j] = 6.0 * h / 8.0
        a[j, (j - 1) % n] += h / 8.0
        a[j, (j + 1) % n] += h / 8.0
    return a


def dense_laplacian(n: int, h: float) -> np.ndarray:
    b = np.zeros((n, n))
    for j in range(n):
        b[j, j] = -2.0 / h
        b[j, (j - 1) % n] += 1.0 / h
        b[j, (j + 1) % n] += 1.0 / h
    return b


def dense_central(n: int) -> np.ndarray:
    c = np.zeros((n, n))
    for j in range(n):
        c[j, (j + 1) % n] += 0.5
        c[j, (j - 1) % n] -= 0.5
    return c


def dense_system(n: int, h: float, sigma: float) -> np.ndarray:
    return dense_mass(n, h) - sigma * dense_laplacian(n, h)


def smooth_field(n: int, seed: int, amplitude: float = 1.0) -> np.ndarray:
    """Random band-limited periodic field; smooth enough that stencil
    applications stay well scaled."""
    rng = np.random.default_rng(seed)
    x = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    u = np.zeros(n)
    for k in range(1, 4):
        u += rng.normal() * np.cos(k * x) + rng.normal() * np.sin(k * x)
    return amplitude * u / 3.0


@pytest.fixture
def params():
    return ModelParams()


@pytest.fixture
def small_grid():
    return PeriodicGrid(-1.0, 1.0, 16)
