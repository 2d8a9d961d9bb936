"""Initial conditions, exact solutions, error norms and the reference
experiment presets, plus the run harness that produces invariant and
error time series.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import invariants, schemes
from .grid import ModelParams, PeriodicGrid, build_grid
from .operators import DirichletBC, assemble_operators

EXAMPLES = ("single_soliton", "three_wave", "maxwellian", "undular_bore", "custom")


def exact_solitary(x, t: float, params: ModelParams, c: float, x0: float = 0.0):
    """Traveling sech^2 solution of amplitude 3c centered at x0 + speed*t."""
    inv = invariants.analytic_invariants(c, params)
    arg = inv.width * (np.asarray(x) - inv.speed * t - x0)
    return 3.0 * c / np.cosh(arg) ** 2


def ic_single(grid: PeriodicGrid, params: ModelParams, c: float, x0: float = 0.0):
    return exact_solitary(grid.nodes(), 0.0, params, c, x0)


def ic_three_wave(grid: PeriodicGrid, params: ModelParams, waves):
    """Superposition of sech^2 profiles; ``waves`` is a list of (c_i, x_i)."""
    if not waves:
        raise ValueError("waves must be a nonempty list of (c, x) pairs")
    x = grid.nodes()
    u = np.zeros_like(x)
    for c_i, x_i in waves:
        u += exact_solitary(x, 0.0, params, c_i, x_i)
    return u


def ic_maxwellian(grid: PeriodicGrid, center: float = 7.0):
    x = grid.nodes()
    return np.exp(-((x - center) ** 2))


def ic_undular_bore(grid: PeriodicGrid, u0_step: float, x0: float, d: float):
    if d <= 0:
        raise ValueError("slope width d must be positive")
    x = grid.nodes()
    return 0.5 * u0_step * (1.0 - np.tanh((x - x0) / d))


def l2_error(u_num: np.ndarray, u_exact: np.ndarray, h: float) -> float:
    if len(u_num) != len(u_exact):
        raise ValueError("length mismatch between numerical and exact samples")
    return float(np.sqrt(h * np.sum((u_exact - u_num) ** 2)))


def linf_error(u_num: np.ndarray, u_exact: np.ndarray) -> float:
    if len(u_num) != len(u_exact):
        raise ValueError("length mismatch between numerical and exact samples")
    return float(np.max(np.abs(u_exact - u_num)))


def convergence_order(err1: float, err2: float, delta1: float, delta2: float) -> float:
    """log(err1/err2) / log(delta1/delta2) for two step sizes."""
    if min(err1, err2, delta1, delta2) <= 0:
        raise ValueError("errors and step sizes must be positive")
    if delta1 == delta2:
        raise ValueError("step sizes must differ")
    return float(np.log(err1 / err2) / np.log(delta1 / delta2))


def bore_growth_rates(u0_step: float, params: ModelParams) -> tuple[float, float]:
    """Linear growth rates of mass and cubic energy under bore inflow."""
    if u0_step <= 0:
        raise ValueError("U0 must be positive")
    m1 = u0_step + 0.5 * u0_step**2
    m3 = (
        0.5 * u0_step**2
        + 0.5 * params.gamma * u0_step**3
        + 0.125 * params.gamma * u0_step**4
    )
    return m1, m3


@dataclass(frozen=True)
class ExperimentSpec:
    """Complete, reproducible description of one run."""

    example: str
    scheme: str
    params: ModelParams
    x_left: float
    x_right: float
    n_cells: int
    tau: float
    t_end: float
    c: float = 0.1
    x0: float = 0.0
    waves: tuple[tuple[float, float], ...] = ()
    u0_step: float = 0.1
    d: float = 2.0
    record_every: int = 1
    snapshot_times: tuple[float, ...] = ()
    nl_tol: float = 1e-13
    nl_max_iter: int = 200

    def __post_init__(self) -> None:
        if self.example not in EXAMPLES:
            raise ValueError(f"unknown example {self.example!r}")
        if self.scheme not in schemes.SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.record_every < 1:
            raise ValueError("record_every must be at least 1")

    @property
    def grid(self) -> PeriodicGrid:
        return build_grid(self.x_left, self.x_right, self.n_cells)

    def initial_condition(self) -> np.ndarray:
        grid = self.grid
        if self.example == "single_soliton":
            return ic_single(grid, self.params, self.c, self.x0)
        if self.example == "three_wave":
            return ic_three_wave(grid, self.params, self.waves)
        if self.example == "maxwellian":
            return ic_maxwellian(grid)
        if self.example == "undular_bore":
            return ic_undular_bore(grid, self.u0_step, self.x0, self.d)
        raise ValueError("custom experiments must supply their own initial condition")


# reference defaults per example; any field may be overridden
_PRESETS: dict[str, dict] = {
    "single_soliton": dict(
        x_left=-40.0, x_right=60.0, n_cells=800, tau=0.1, t_end=16.0, c=0.1
    ),
    "three_wave": dict(
        x_left=-200.0,
        x_right=400.0,
        n_cells=2400,
        tau=0.05,
        t_end=400.0,
        waves=((1.0, -20.0), (0.5, 15.0), (0.25, 45.0)),
    ),
    "maxwellian": dict(
        x_left=-40.0, x_right=100.0, n_cells=2800, tau=0.05, t_end=55.0
    ),
    # domain chosen so the tanh step is flat to roundoff at both ends
    "undular_bore": dict(
        x_left=-36.0, x_right=300.0, n_cells=1400, tau=0.1, t_end=250.0, u0_step=0.1, d=2.0
    ),
}

_PRESET_PARAMS: dict[str, ModelParams] = {
    "undular_bore": ModelParams(a=1.0, sigma=1.0 / 6.0, gamma=1.5),
}


def preset(example: str, scheme: str, **overrides) -> ExperimentSpec:
    """Spec for one of the reference experiments with defaults filled in."""
    if example not in _PRESETS:
        raise ValueError(f"no preset for example {example!r}")
    fields = dict(_PRESETS[example])
    params = overrides.pop("params", _PRESET_PARAMS.get(example, ModelParams()))
    fields.update(overrides)
    return ExperimentSpec(example=example, scheme=scheme, params=params, **fields)


@dataclass
class RunRecord:
    """Per-step invariant series and sampled errors of one run.

    For LIEP the energy at index n is the two-level functional of levels
    (n-1, n) -- the value at a time is known one step late, and index 0
    holds the functional of levels (0, 1).
    """

    spec: ExperimentSpec
    x: np.ndarray
    t: np.ndarray
    mass: np.ndarray
    energy: np.ndarray
    energy_kind: str
    l2: np.ndarray | None = None
    linf: np.ndarray | None = None
    snapshots: dict[float, np.ndarray] = field(default_factory=dict)
    solves_per_step: list[int] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    _u_final: np.ndarray | None = None

    def final_solution(self) -> np.ndarray:
        return self._u_final


def _energy_of(state: schemes.SchemeState, h: float, params: ModelParams) -> float:
    if state.scheme == "FIEP":
        return invariants.energy_cubic(state.u_curr, h, params)
    if state.scheme == "LIEP":
        if state.u_prev is None:  # before startup: no pair available yet
            return invariants.energy_cubic(state.u_curr, h, params)
        return invariants.energy_liep(state.u_prev, state.u_curr, h, params)
    return invariants.energy_quad(state.u_curr, state.v_curr, h, params)


def run_experiment(spec: ExperimentSpec, u0: np.ndarray | None = None) -> RunRecord:
    """Step the chosen scheme from t = 0 to t_end.

    Invariants are recorded every ``record_every`` steps, errors at the
    same cadence when an exact solution exists, and solution snapshots at
    the requested times.  Deterministic: identical specs give bitwise
    identical records.
    """
    grid = spec.grid
    h = grid.h
    x = grid.nodes()
    boundary = None
    if spec.example == "undular_bore":
        u_init = spec.initial_condition() if u0 is None else u0
        boundary = DirichletBC(float(u_init[0]), float(u_init[-1]))
    ops = assemble_operators(grid, spec.params, boundary)
    if u0 is None:
        u0 = spec.initial_condition()
    nl_cfg = schemes.NonlinearSolveConfig(spec.nl_tol, spec.nl_max_iter)
    time_cfg = schemes.TimeConfig.from_t_end(spec.tau, spec.t_end)
    has_exact = spec.example == "single_soliton"

    state = schemes.init_state(spec.scheme, u0)
    energy_kind = {
        "FIEP": "cubic",
        "LIEP": "liep_two_level",
        "LICN": "quadratic",
        "LILF": "quadratic",
    }[spec.scheme]

    # LIEP's two-level energy at t = 0 needs the first computed level; it is
    # patched in right after the startup step
    e0 = 0.0 if spec.scheme == "LIEP" else _energy_of(state, h, spec.params)
    ts, masses, energies = [0.0], [invariants.mass(u0, h)], [e0]
    l2s, linfs = ([0.0], [0.0]) if has_exact else (None, None)
    snapshots: dict[float, np.ndarray] = {}
    solves: list[int] = []
    snap_left = sorted(spec.snapshot_times)
    if snap_left and abs(snap_left[0]) <= spec.tau / 2:
        snapshots[snap_left.pop(0)] = u0.copy()

    t_start = time.perf_counter()
    for n in range(1, time_cfg.n_steps + 1):
        try:
            state = schemes.advance(state, ops, spec.tau, nl_cfg)
        except (schemes.NonConvergenceError, schemes.SingularStepError) as exc:
            raise RuntimeError(
                f"{spec.scheme} failed at step {n} (t = {n * spec.tau:g}): {exc}"
            ) from exc
        solves.append(state.solves_in_step)
        if n == 1 and spec.scheme == "LIEP":
            energies[0] = _energy_of(state, h, spec.params)
        t_n = n * spec.tau
        if n % spec.record_every == 0 or n == time_cfg.n_steps:
            ts.append(t_n)
            masses.append(invariants.mass(state.u_curr, h))
            energies.append(_energy_of(state, h, spec.params))
            if has_exact:
                u_ex = exact_solitary(x, t_n, spec.params, spec.c, spec.x0)
                l2s.append(l2_error(state.u_curr, u_ex, h))
                linfs.append(linf_error(state.u_curr, u_ex))
        if snap_left and abs(t_n - snap_left[0]) <= spec.tau / 2:
            snapshots[snap_left.pop(0)] = state.u_curr.copy()
    elapsed = time.perf_counter() - t_start

    rec = RunRecord(
        spec=spec,
        x=x,
        t=np.array(ts),
        mass=np.array(masses),
        energy=np.array(energies),
        energy_kind=energy_kind,
        l2=np.array(l2s) if l2s is not None else None,
        linf=np.array(linfs) if linfs is not None else None,
        snapshots=snapshots,
        solves_per_step=solves,
        elapsed_seconds=elapsed,
    )
    rec._u_final = state.u_curr
    return rec


def convergence_sweep(
    scheme: str,
    mesh_sizes=(0.2, 0.1, 0.05, 0.025, 0.0125),
    c: float = 1.0,
    t_end: float = 1.0,
    x_left: float = -40.0,
    x_right: float = 60.0,
):
    """Run a tau = h refinement study against the exact solitary wave.

    Returns a list of dicts with keys h, tau, l2, linf, order_l2, order_linf
    (orders computed against the previous level, None on the first).
    """
    rows = []
    span = x_right - x_left
    for h in mesh_sizes:
        n_cells = int(round(span / h))
        if abs(n_cells * h - span) > 1e-9 * span:
            raise ValueError(f"mesh size {h} does not divide the domain span {span}")
        spec = preset(
            "single_soliton",
            scheme,
            c=c,
            tau=h,
            t_end=t_end,
            n_cells=n_cells,
            x_left=x_left,
            x_right=x_right,
            record_every=max(1, int(round(t_end / h))),
        )
        rec = run_experiment(spec)
        row = {"h": h, "tau": h, "l2": rec.l2[-1], "linf": rec.linf[-1]}
        if rows:
            prev = rows[-1]
            row["order_l2"] = convergence_order(prev["l2"], row["l2"], prev["h"], h)
            row["order_linf"] = convergence_order(prev["linf"], row["linf"], prev["h"], h)
        else:
            row["order_l2"] = row["order_linf"] = None
        rows.append(row)
    return rows
