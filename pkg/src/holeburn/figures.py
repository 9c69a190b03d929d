"""Named preset studies and their gnuplot scripts.

Each preset id maps to the hard-coded parameter set of one benchmark scenario
(delay-detuning transfer maps, hole profiles vs amplitude, cross-coupling
dips, isolation profiles and the five-target train). Running a preset writes
one CSV per curve plus a gnuplot script that renders the standard view of the
data; '#' preamble lines are ignored by gnuplot natively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from .analytics import AnalyticHoleModel, NoPlateauError, delta_edge, delta_edge_leading
from .core import SystemParams
from .dynamics import IntegratorConfig
from .output import _atomic_write, fmt, write_sweep_csv
from .protocols import ProtocolSpec, SQRT2
from .sweep import SweepGrid, SweepResult, run_sweep

FIGURE_IDS = ("fig2c", "fig3a", "fig3b", "fig3c", "fig4", "fig5b", "fig5c", "fig6b")


@dataclass(frozen=True)
class FigureRun:
    label: str
    protocol: ProtocolSpec
    system: SystemParams
    grid: SweepGrid
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FigurePreset:
    figure_id: str
    description: str
    runs: tuple[FigureRun, ...]
    gnuplot: str


def _axis(start: float, stop: float, step: float) -> tuple[float, ...]:
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(start + k * step for k in range(count))


def _grid(start: float, stop: float, step: float, secondary=None) -> SweepGrid:
    name, values = (None, None) if secondary is None else secondary
    return SweepGrid(delta_values=_axis(start, stop, step),
                     secondary_name=name, secondary_values=values)


def _plain_system() -> SystemParams:
    return SystemParams()


def _stirap(omega_max: float, tau: float = SQRT2) -> ProtocolSpec:
    return ProtocolSpec(burn_omega_max=omega_max, burn_tau=tau)


# 'autotitle columnhead' makes gnuplot consume the CSV header row; every plot
# clause still sets an explicit title.
_GP_HEADER = ("set datafile separator comma\n"
              "set key autotitle columnhead\n"
              "set xlabel 'detuning (1/sigma)'\n")


def _preset_fig2c(delta_step: float) -> FigurePreset:
    run = FigureRun(
        label="map",
        protocol=_stirap(10.0),
        system=_plain_system(),
        grid=_grid(-50.0, 50.0, delta_step,
                   secondary=("tau", _axis(0.0, 4.0, 0.1))),
        extra={"omega_max": 10.0},
    )
    gp = (_GP_HEADER
          + "set ylabel 'pulse delay tau (sigma)'\nset view map\nset pm3d\n"
          + "splot 'fig2c_map.csv' using 2:1:5 with pm3d title 'P3'\n")
    return FigurePreset(
        "fig2c",
        "final target-state population vs detuning and pulse delay at peak "
        "amplitude 10/sigma, no decoherence",
        (run,), gp)


def _preset_fig3a(delta_step: float) -> FigurePreset:
    run = FigureRun(
        label="map",
        protocol=_stirap(20.0),
        system=_plain_system(),
        grid=_grid(-100.0, 100.0, max(delta_step, 1.0),
                   secondary=("tau", _axis(0.25, 4.0, 0.125))),
        extra={"omega_max": 20.0},
    )
    gp = (_GP_HEADER
          + "set ylabel 'pulse delay tau (sigma)'\nset view map\nset pm3d\n"
          + "splot 'fig3a_map.csv' using 2:1:5 with pm3d title 'P3', \\\n"
          + "      'fig3a_edges.csv' using 2:1:(1) with lines lc 'blue' title 'edge', \\\n"
          + "      'fig3a_edges.csv' using (-$2):1:(1) with lines lc 'blue' notitle, \\\n"
          + "      'fig3a_edges.csv' using 3:1:(1) with lines lc 'green' title 'leading edge', \\\n"
          + "      'fig3a_edges.csv' using (-$3):1:(1) with lines lc 'green' notitle\n")
    return FigurePreset(
        "fig3a",
        "transfer map vs detuning and delay at amplitude 20/sigma, with the "
        "two analytic edge predictors",
        (run,), gp)


def _preset_fig3b(delta_step: float) -> FigurePreset:
    runs = tuple(
        FigureRun(
            label=f"omega{int(om)}",
            protocol=_stirap(om),
            system=_plain_system(),
            grid=_grid(-100.0, 100.0, delta_step),
            extra={"omega_max": om},
        )
        for om in (10.0, 15.0, 20.0)
    )
    gp = (_GP_HEADER + "set ylabel 'P3'\nplot "
          + ", \\\n     ".join(
              f"'fig3b_omega{int(om)}.csv' using 1:4 with lines title "
              f"'omega_max={int(om)}'" for om in (10.0, 15.0, 20.0))
          + "\n")
    return FigurePreset(
        "fig3b",
        "hole profiles (P3 vs detuning) for peak amplitudes 10, 15, 20 per sigma",
        runs, gp)


def _preset_fig3c(delta_step: float) -> FigurePreset:
    runs = []
    for om in range(6, 41, 2):
        model = AnalyticHoleModel.from_pulses(float(om), SQRT2)
        edge = delta_edge(model)
        xs = _axis(-1.5, 1.5, max(delta_step / 20.0, 0.05))
        deltas = tuple(round(x * edge, 12) for x in xs)
        runs.append(FigureRun(
            label=f"omega{om}",
            protocol=_stirap(float(om)),
            system=_plain_system(),
            grid=SweepGrid(delta_values=deltas),
            extra={"omega_max": float(om), "delta_edge": edge},
        ))
    gp = (_GP_HEADER
          + "set ylabel 'peak amplitude (1/sigma)'\nset xlabel 'detuning / edge'\n"
          + "set view map\nset pm3d\n"
          + "splot 'fig3c_combined.csv' using 3:1:6 with pm3d title 'P3'\n")
    return FigurePreset(
        "fig3c",
        "transfer vs amplitude and detuning normalized to the analytic edge",
        tuple(runs), gp)


def _preset_fig4(delta_step: float) -> FigurePreset:
    runs = [FigureRun(
        label="reference",
        protocol=_stirap(20.0),
        system=_plain_system(),
        grid=_grid(-60.0, 60.0, delta_step),
        extra={"cross_coupling": False},
    )]
    for w13 in (50.0, 100.0, 400.0):
        runs.append(FigureRun(
            label=f"w13_{int(w13)}",
            protocol=_stirap(20.0),
            system=SystemParams(omega13=w13, cross_coupling=True),
            grid=_grid(-60.0, 60.0, delta_step),
            extra={"omega13": w13},
        ))
    labels = ["reference"] + [f"w13_{int(w)}" for w in (50, 100, 400)]
    gp = (_GP_HEADER + "set ylabel 'P3'\nplot "
          + ", \\\n     ".join(
              f"'fig4_{lab}.csv' using 1:4 with lines title '{lab}'"
              for lab in labels)
          + "\n")
    return FigurePreset(
        "fig4",
        "hole profiles with cross coupling to the unintended transitions for "
        "ground splittings 50, 100, 400 per sigma, against the uncoupled reference",
        tuple(runs), gp)


def _preset_fig5b(delta_step: float) -> FigurePreset:
    run = FigureRun(
        label="map",
        protocol=ProtocolSpec(burn_omega_max=100.0, unburn=((5.0, 0.0),)),
        system=_plain_system(),
        grid=_grid(-30.0, 30.0, max(delta_step / 2.0, 0.25),
                   secondary=("omega_max_r", _axis(0.5, 20.0, 0.5))),
        extra={"burn_omega_max": 100.0},
    )
    gp = (_GP_HEADER
          + "set ylabel 'reversed-pulse amplitude (1/sigma)'\nset view map\nset pm3d\n"
          + "splot 'fig5b_map.csv' using 2:1:3 with pm3d title 'P1'\n")
    return FigurePreset(
        "fig5b",
        "restored ground population vs detuning and reversed-pulse amplitude "
        "after a 100/sigma burn",
        (run,), gp)


def _preset_fig5c(delta_step: float) -> FigurePreset:
    runs = []
    for gam in (0.0, 0.5):
        runs.append(FigureRun(
            label=f"Gamma{fmt(gam)}",
            protocol=ProtocolSpec(burn_omega_max=100.0, unburn=((5.0, 0.0),)),
            system=SystemParams(Gamma=gam),
            grid=_grid(-30.0, 30.0, max(delta_step / 5.0, 0.1)),
            extra={"Gamma": gam},
        ))
    gp = (_GP_HEADER + "set ylabel 'P1'\nplot "
          + ", \\\n     ".join(
              f"'fig5c_Gamma{fmt(g)}.csv' using 1:2 with lines title 'Gamma={fmt(g)}'"
              for g in (0.0, 0.5))
          + "\n")
    return FigurePreset(
        "fig5c",
        "isolated-peak profile inside the emptied band, with and without "
        "excited-state dephasing",
        tuple(runs), gp)


def _preset_fig6b(delta_step: float) -> FigurePreset:
    offsets = [n * 500.0 for n in (-2, -1, 0, 1, 2)]
    coarse = np.arange(-1200.0, 1200.0 + 1e-9, max(12.0, delta_step * 24))
    fine = np.concatenate([
        np.arange(off - 12.0, off + 12.0 + 1e-9, max(0.25, delta_step / 2.0))
        for off in offsets
    ])
    deltas = np.unique(np.round(np.concatenate([coarse, fine]), 9))
    run = FigureRun(
        label="train",
        protocol=ProtocolSpec(
            burn_omega_max=100.0,
            unburn=tuple((5.0, off) for off in offsets),
        ),
        system=_plain_system(),
        grid=SweepGrid(delta_values=tuple(deltas)),
        extra={"targets": offsets},
    )
    gp = (_GP_HEADER + "set ylabel 'P1'\n"
          + "plot 'fig6b_train.csv' using 1:2 with lines title 'P1 after train'\n")
    return FigurePreset(
        "fig6b",
        "five isolated bands restored at carrier offsets n*500/sigma inside a "
        "100/sigma hole",
        (run,), gp)


_PRESET_BUILDERS: dict[str, Callable[[float], FigurePreset]] = {
    "fig2c": _preset_fig2c,
    "fig3a": _preset_fig3a,
    "fig3b": _preset_fig3b,
    "fig3c": _preset_fig3c,
    "fig4": _preset_fig4,
    "fig5b": _preset_fig5b,
    "fig5c": _preset_fig5c,
    "fig6b": _preset_fig6b,
}


def get_preset(figure_id: str, delta_step: float = 0.5) -> FigurePreset:
    if figure_id not in _PRESET_BUILDERS:
        raise KeyError(
            f"unknown figure id {figure_id!r}; expected one of {', '.join(FIGURE_IDS)}"
        )
    if delta_step <= 0:
        raise ValueError("delta_step must be positive")
    return _PRESET_BUILDERS[figure_id](delta_step)


def _write_fig3a_edges(out_dir: Path, preset: FigurePreset) -> None:
    taus = preset.runs[0].grid.secondary_values
    lines = ["# columns: tau,delta_edge,delta_edge_leading",
             "tau,delta_edge,delta_edge_leading"]
    for tau in taus:
        model = AnalyticHoleModel.from_pulses(20.0, tau)
        try:
            edge = delta_edge(model)
        except NoPlateauError:
            continue
        lines.append(",".join([fmt(tau), fmt(edge), fmt(delta_edge_leading(model))]))
    _atomic_write(out_dir / "fig3a_edges.csv", "\n".join(lines) + "\n")


def _write_fig3c_combined(out_dir: Path, results: list[tuple[FigureRun, SweepResult]]) -> None:
    lines = ["# columns: omega_max,delta,delta_over_edge,P1,P2,P3,max_P2,converged",
             "omega_max,delta,delta_over_edge,P1,P2,P3,max_P2,converged"]
    for run, result in results:
        om = run.extra["omega_max"]
        edge = run.extra["delta_edge"]
        for i in range(len(result)):
            lines.append(",".join([
                fmt(om), fmt(result.delta[i]), fmt(result.delta[i] / edge),
                fmt(result.p1[i]), fmt(result.p2[i]), fmt(result.p3[i]),
                fmt(result.max_p2[i]), "1" if result.converged[i] else "0",
            ]))
        lines.append("")
    _atomic_write(out_dir / "fig3c_combined.csv", "\n".join(lines) + "\n")


def run_preset(figure_id: str, out_dir: str | Path, workers: int = 1,
               tolerance: float | None = None, delta_step: float = 0.5,
               progress: Callable[[str], None] | None = None) -> list[Path]:
    """Execute one preset and write its data files and gnuplot script.

    Returns the list of files written. delta_step rescales the preset's
    detuning resolution (coarser values give quick previews).
    """
    preset = get_preset(figure_id, delta_step)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg = IntegratorConfig()
    if tolerance is not None:
        cfg = replace(cfg, tolerance=tolerance)
    written: list[Path] = []
    collected: list[tuple[FigureRun, SweepResult]] = []
    for run in preset.runs:
        if progress is not None:
            progress(f"{figure_id}: running {run.label} ({len(run.grid)} points)")
        result = run_sweep(run.grid, run.protocol, run.system, cfg, workers=workers)
        collected.append((run, result))
        path = out_dir / f"{figure_id}_{run.label}.csv"
        write_sweep_csv(path, result, config=None,
                        extra={"figure": figure_id, "run": run.label, **run.extra})
        written.append(path)
    if figure_id == "fig3a":
        _write_fig3a_edges(out_dir, preset)
        written.append(out_dir / "fig3a_edges.csv")
    if figure_id == "fig3c":
        _write_fig3c_combined(out_dir, collected)
        written.append(out_dir / "fig3c_combined.csv")
    script = out_dir / f"{figure_id}.gp"
    _atomic_write(script, preset.gnuplot)
    written.append(script)
    return written
