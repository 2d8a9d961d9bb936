"""Flat key = value run configuration with # comments.

Every key is validated; unknown keys are rejected by name.  Defaults come
from the experiment presets (a = sigma = gamma = 1 and the reference
domain/step sizes per example unless the config overrides them).
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .experiments import EXAMPLES, ExperimentSpec, preset
from .grid import ModelParams
from .schemes import SCHEMES


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Textual mirror of an experiment spec; None means 'use the preset'."""

    scheme: str = "FIEP"
    example: str = "single_soliton"
    a: float | None = None
    sigma: float | None = None
    gamma: float | None = None
    x_left: float | None = None
    x_right: float | None = None
    n_cells: int | None = None
    tau: float | None = None
    t_end: float | None = None
    c: float | None = None
    x0: float | None = None
    c1: float | None = None
    c2: float | None = None
    c3: float | None = None
    x1: float | None = None
    x2: float | None = None
    x3: float | None = None
    u0_step: float | None = None
    d: float | None = None
    record_every: int | None = None
    snapshot_times: str | None = None  # comma-separated
    outdir: str = "."
    nl_tol: float | None = None
    nl_max_iter: int | None = None


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_INT_KEYS = {"n_cells", "record_every", "nl_max_iter"}
_STR_KEYS = {"scheme", "example", "outdir", "snapshot_times"}


def _convert(key: str, raw: str):
    raw = raw.strip().strip('"').strip("'")
    if key in _STR_KEYS:
        return raw
    try:
        if key in _INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"invalid value {raw!r} for key {key!r}") from exc


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        setattr(cfg, key, _convert(key, raw))
    validate_config(cfg)
    return cfg


def validate_config(cfg: RunConfig) -> None:
    if cfg.scheme not in SCHEMES:
        raise ConfigError(f"scheme must be one of {SCHEMES}, got {cfg.scheme!r}")
    if cfg.example not in EXAMPLES:
        raise ConfigError(f"example must be one of {EXAMPLES}, got {cfg.example!r}")
    for key in ("tau", "t_end", "a", "sigma", "gamma", "c", "u0_step", "d", "nl_tol"):
        val = getattr(cfg, key)
        if val is not None and val <= 0:
            raise ConfigError(f"{key} must be positive, got {val}")
    for key in ("n_cells", "record_every", "nl_max_iter"):
        val = getattr(cfg, key)
        if val is not None and val < 1:
            raise ConfigError(f"{key} must be at least 1, got {val}")


def serialize_config(cfg: RunConfig) -> str:
    lines = []
    for f in fields(RunConfig):
        val = getattr(cfg, f.name)
        if val is None:
            continue
        lines.append(f"{f.name} = {val}")
    return "\n".join(lines) + "\n"


def config_to_spec(cfg: RunConfig) -> ExperimentSpec:
    """Build a full experiment spec, filling preset defaults for unset keys."""
    validate_config(cfg)
    if cfg.example == "custom":
        raise ConfigError(
            "example 'custom' needs a programmatic initial condition; "
            "use run_experiment from the library instead"
        )
    overrides: dict = {}
    for key in (
        "x_left",
        "x_right",
        "n_cells",
        "tau",
        "t_end",
        "c",
        "x0",
        "u0_step",
        "d",
        "record_every",
        "nl_tol",
        "nl_max_iter",
    ):
        val = getattr(cfg, key)
        if val is not None:
            overrides[key] = val
    if any(getattr(cfg, k) is not None for k in ("a", "sigma", "gamma")):
        base = ModelParams()
        if cfg.example == "undular_bore":
            base = ModelParams(a=1.0, sigma=1.0 / 6.0, gamma=1.5)
        overrides["params"] = ModelParams(
            a=cfg.a if cfg.a is not None else base.a,
            sigma=cfg.sigma if cfg.sigma is not None else base.sigma,
            gamma=cfg.gamma if cfg.gamma is not None else base.gamma,
        )
    if cfg.example == "three_wave" and cfg.c1 is not None:
        waves = []
        for ci, xi in (("c1", "x1"), ("c2", "x2"), ("c3", "x3")):
            c_val, x_val = getattr(cfg, ci), getattr(cfg, xi)
            if c_val is not None:
                waves.append((c_val, x_val if x_val is not None else 0.0))
        overrides["waves"] = tuple(waves)
    if cfg.snapshot_times:
        overrides["snapshot_times"] = tuple(
            float(s) for s in cfg.snapshot_times.split(",") if s.strip()
        )
    return preset(cfg.example, cfg.scheme, **overrides)
