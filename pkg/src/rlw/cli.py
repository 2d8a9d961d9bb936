"""Command-line driver: one command per reference table or figure.

Subcommands
-----------
run      one experiment from a config file, invariant/error CSV out
sweep    tau = h convergence study for one or all schemes
tables   regenerate the five reference tables as CSV
compare  run all four schemes on one spec, emit invariant-drift series

All outputs are plain CSV with a one-line header.  Numeric cells carry
full precision; the table files add rounded display columns matching the
reference digit counts.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import experiments, invariants
from .config import ConfigError, config_to_spec, parse_config
from .schemes import SCHEMES


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def _write_run_outputs(rec: experiments.RunRecord, outdir: Path, tag: str) -> list[Path]:
    paths = []
    header = ["t", "mass", "mass_drift", "energy", "energy_drift", "L2_err", "Linf_err"]
    rows = []
    for i, t in enumerate(rec.t):
        row = [
            _fmt(t),
            _fmt(rec.mass[i]),
            _fmt(rec.mass[i] - rec.mass[0]),
            _fmt(rec.energy[i]),
            _fmt(rec.energy[i] - rec.energy[0]),
            _fmt(rec.l2[i]) if rec.l2 is not None else "",
            _fmt(rec.linf[i]) if rec.linf is not None else "",
        ]
        rows.append(row)
    path = outdir / f"{tag}_invariants.csv"
    _write_csv(path, header, rows)
    paths.append(path)
    for t, u in sorted(rec.snapshots.items()):
        spath = outdir / f"{tag}_snapshot_t{t:g}.csv"
        _write_csv(spath, ["x", "u"], [[_fmt(x), _fmt(v)] for x, v in zip(rec.x, u)])
        paths.append(spath)
    return paths


def _load_config(args) -> "experiments.ExperimentSpec":
    text = Path(args.config).read_text()
    cfg = parse_config(text)
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        line = f"{key.strip()} = {val.strip()}"
        cfg2 = parse_config(serialize_with_extra(cfg, line))
        cfg = cfg2
    if args.outdir:
        cfg.outdir = args.outdir
    return cfg


def serialize_with_extra(cfg, extra_line: str) -> str:
    from .config import serialize_config

    return serialize_config(cfg) + extra_line + "\n"


def cmd_run(args) -> int:
    cfg = _load_config(args)
    spec = config_to_spec(cfg)
    rec = experiments.run_experiment(spec)
    tag = f"{spec.example}_{spec.scheme}"
    paths = _write_run_outputs(rec, Path(cfg.outdir), tag)
    for p in paths:
        print(p)
    return 0


def cmd_sweep(args) -> int:
    mesh_sizes = tuple(float(s) for s in args.levels.split(","))
    which = SCHEMES if args.scheme == "all" else (args.scheme,)
    rows = []
    for scheme in which:
        for row in experiments.convergence_sweep(
            scheme, mesh_sizes=mesh_sizes, c=args.c, t_end=args.t_end
        ):
            rows.append(
                [
                    scheme,
                    _fmt(row["h"]),
                    _fmt(row["tau"]),
                    _fmt(row["l2"]),
                    _fmt(row["linf"]),
                    _fmt(row["order_l2"]) if row["order_l2"] is not None else "",
                    _fmt(row["order_linf"]) if row["order_linf"] is not None else "",
                ]
            )
    path = Path(args.outdir) / "convergence_sweep.csv"
    _write_csv(path, ["scheme", "h", "tau", "L2", "Linf", "order_L2", "order_Linf"], rows)
    print(path)
    return 0


def _table_rows(scheme: str) -> list[list]:
    spec = experiments.preset("single_soliton", scheme, record_every=1)
    rec = experiments.run_experiment(spec)
    inv = invariants.analytic_invariants(spec.c, spec.params)
    rows = [
        ["analytical", _fmt(inv.mass), f"{inv.mass:.5f}", _fmt(inv.energy),
         f"{inv.energy:.5f}", "", "", "", ""]
    ]
    for t_mark in (0.0, 4.0, 8.0, 12.0, 16.0):
        i = int(round(t_mark / spec.tau))
        l2 = rec.l2[i] if t_mark > 0 else None
        linf = rec.linf[i] if t_mark > 0 else None
        rows.append(
            [
                f"{t_mark:g}",
                _fmt(rec.mass[i]),
                f"{rec.mass[i]:.5f}",
                _fmt(rec.energy[i]),
                f"{rec.energy[i]:.5f}",
                _fmt(l2) if l2 is not None else "",
                f"{l2:.3e}" if l2 is not None else "",
                _fmt(linf) if linf is not None else "",
                f"{linf:.3e}" if linf is not None else "",
            ]
        )
    return rows


def cmd_tables(args) -> int:
    outdir = Path(args.outdir)
    header = [
        "time", "mass", "mass_display", "energy", "energy_display",
        "L2_err", "L2_display", "Linf_err", "Linf_display",
    ]
    for idx, scheme in enumerate(SCHEMES, start=1):
        path = outdir / f"table{idx}_{scheme.lower()}.csv"
        _write_csv(path, header, _table_rows(scheme))
        print(path)
    # table 5: all schemes at T = 10 on the two finer meshes
    rows5 = []
    for scheme in SCHEMES:
        for n_cells in (800, 1600):
            spec = experiments.preset(
                "single_soliton", scheme, t_end=10.0, n_cells=n_cells,
                record_every=int(round(10.0 / 0.1)),
            )
            rec = experiments.run_experiment(spec)
            rows5.append(
                [
                    scheme,
                    _fmt(spec.grid.h),
                    _fmt(rec.l2[-1]),
                    f"{rec.l2[-1]:.3e}",
                    _fmt(rec.linf[-1]),
                    f"{rec.linf[-1]:.3e}",
                    _fmt(rec.elapsed_seconds),
                ]
            )
    path5 = outdir / "table5_comparison.csv"
    _write_csv(
        path5,
        ["scheme", "h", "L2_err", "L2_display", "Linf_err", "Linf_display", "cpu_seconds"],
        rows5,
    )
    print(path5)
    return 0


def cmd_compare(args) -> int:
    cfg = _load_config(args)
    rows = []
    for scheme in SCHEMES:
        cfg.scheme = scheme
        spec = config_to_spec(cfg)
        rec = experiments.run_experiment(spec)
        for i, t in enumerate(rec.t):
            rows.append(
                [
                    scheme,
                    _fmt(t),
                    _fmt(rec.mass[i] - rec.mass[0]),
                    _fmt(rec.energy[i] - rec.energy[0]),
                ]
            )
    path = Path(cfg.outdir) / "compare_invariants.csv"
    _write_csv(path, ["scheme", "t", "mass_drift", "energy_drift"], rows)
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rlw", description="Energy-conserving long-wave equation solvers"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment from a config file")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--set", action="append", metavar="key=value")
    p_run.add_argument("--outdir", default=None)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="tau = h convergence study")
    p_sweep.add_argument("--scheme", default="all", choices=SCHEMES + ("all",))
    p_sweep.add_argument("--levels", default="0.2,0.1,0.05,0.025,0.0125")
    p_sweep.add_argument("--c", type=float, default=1.0)
    p_sweep.add_argument("--t-end", type=float, default=1.0)
    p_sweep.add_argument("--outdir", default=".")
    p_sweep.set_defaults(func=cmd_sweep)

    p_tables = sub.add_parser("tables", help="regenerate the reference tables")
    p_tables.add_argument("--outdir", default=".")
    p_tables.set_defaults(func=cmd_tables)

    p_cmp = sub.add_parser("compare", help="all four schemes on one spec")
    p_cmp.add_argument("--config", required=True)
    p_cmp.add_argument("--set", action="append", metavar="key=value")
    p_cmp.add_argument("--outdir", default=None)
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"rlw: config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"rlw: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
