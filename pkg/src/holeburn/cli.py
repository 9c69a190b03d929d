"""Command-line front end.

Subcommands:
  holeburn run CONFIG.json        sweep per an experiment config, write CSV/JSON
  holeburn reproduce FIGURE_ID    run a bundled preset study, write data + plot script
  holeburn analytic CONFIG.json   closed-form profile and edge table for overlays
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .analytics import (
    AnalyticHoleModel,
    NoPlateauError,
    adiabaticity_margin,
    analytic_p3,
    delta_edge,
    delta_edge_leading,
)
from .config import ConfigError, ExperimentConfig
from .figures import FIGURE_IDS, run_preset
from .output import _atomic_write, _git_revision, fmt, write_sweep_csv, write_sweep_json
from .sweep import run_sweep


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holeburn",
        description="Spectral hole burning and qubit isolation sweeps for "
                    "three-level systems under adiabatic pulse pairs.",
    )
    parser.add_argument("--version", action="version", version=f"holeburn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run the sweep described by a JSON config")
    run_p.add_argument("config", help="path to the experiment config (JSON)")
    run_p.add_argument("--workers", type=int, default=1,
                       help="propagation worker threads (default 1)")
    run_p.add_argument("--tolerance", type=float, default=None,
                       help="override the integrator tolerance")

    rep_p = sub.add_parser("reproduce", help="run a bundled preset study")
    rep_p.add_argument("figure_id", choices=FIGURE_IDS)
    rep_p.add_argument("--out", default=".", help="output directory (default '.')")
    rep_p.add_argument("--workers", type=int, default=1)
    rep_p.add_argument("--tolerance", type=float, default=None)
    rep_p.add_argument("--delta-step", type=float, default=0.5,
                       help="detuning resolution override; larger is faster "
                            "(default 0.5)")

    ana_p = sub.add_parser("analytic",
                           help="closed-form transfer profile and edge predictions")
    ana_p.add_argument("config", help="path to the experiment config (JSON)")
    ana_p.add_argument("--out", default=None,
                       help="output CSV (default: config CSV path with "
                            "'_analytic' suffix)")
    return parser


def _load_config(path: str) -> ExperimentConfig:
    if not Path(path).is_file():
        raise ConfigError("config", f"no such file: {path}")
    return ExperimentConfig.from_file(path)


def _cmd_run(args) -> int:
    config = _load_config(args.config)
    cfg = config.integrator
    if args.tolerance is not None:
        cfg = replace(cfg, tolerance=args.tolerance)
        config = replace(config, integrator=cfg)
    result = run_sweep(config.grid, config.protocol, config.system, cfg,
                       workers=max(1, args.workers))
    csv_path = write_sweep_csv(config.output.csv, result, config=config)
    print(f"wrote {csv_path} ({len(result)} points)")
    if config.output.json:
        json_path = write_sweep_json(config.output.json, result, config=config)
        print(f"wrote {json_path}")
    failed = int((~result.converged).sum())
    if failed:
        print(f"warning: {failed} grid points did not converge "
              f"(see converged column)", file=sys.stderr)
    return 0


def _cmd_reproduce(args) -> int:
    written = run_preset(args.figure_id, args.out, workers=max(1, args.workers),
                         tolerance=args.tolerance, delta_step=args.delta_step,
                         progress=lambda msg: print(msg, flush=True))
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_analytic(args) -> int:
    config = _load_config(args.config)
    protocol = config.protocol
    model = AnalyticHoleModel.from_pulses(protocol.burn_omega_max,
                                          protocol.burn_tau, protocol.sigma)
    lines = [f"# holeburn {__version__}",
             f"# git: {_git_revision()}",
             f"# omega0: {fmt(model.omega0)}",
             f"# theta_dot: {fmt(model.theta_dot)}",
             f"# delta_edge_leading: {fmt(delta_edge_leading(model))}"]
    try:
        edge = delta_edge(model)
        lines.append(f"# delta_edge: {fmt(edge)}")
        lines.append(f"# hole_width: {fmt(2 * edge)}")
    except NoPlateauError as err:
        edge = 0.0
        lines.append("# delta_edge: 0")
        lines.append(f"# warning: {err}")
        print(f"warning: {err}", file=sys.stderr)
    lines.append("# columns: delta,P3_analytic,adiabaticity_margin")
    lines.append("delta,P3_analytic,adiabaticity_margin")
    for delta in config.grid.delta_values:
        lines.append(",".join([
            fmt(delta),
            fmt(analytic_p3(delta, model)),
            fmt(adiabaticity_margin(delta, model)),
        ]))
    if args.out is not None:
        out = Path(args.out)
    else:
        csv = Path(config.output.csv)
        out = csv.with_name(csv.stem + "_analytic" + csv.suffix)
    _atomic_write(out, "\n".join(lines) + "\n")
    print(f"wrote {out} ({len(config.grid.delta_values)} points, "
          f"delta_edge={fmt(edge)})")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "reproduce":
            return _cmd_reproduce(args)
        if args.command == "analytic":
            return _cmd_analytic(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
