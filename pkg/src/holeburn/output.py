"""Data-file output: CSV with '#' metadata preamble, optional JSON mirror.

Numbers are formatted with 12 significant digits, '.' decimal separator and
'\\n' line endings so identical inputs produce byte-identical bodies. Files
are written to a temporary sibling and atomically renamed into place, so a
failed run never leaves a partial output behind.
"""

from __future__ import annotations

import json
import os
import subprocess
import tempfile
from pathlib import Path

from . import __version__
from .config import ExperimentConfig
from .sweep import SweepResult

_FLOAT_FMT = "{:.12g}"


def _git_revision() -> str:
    # stamp the revision of the package's own checkout, not the caller's cwd
    try:
        out = subprocess.run(
            ["git", "rev-parse", "--short", "HEAD"],
            capture_output=True, text=True, timeout=5,
            cwd=Path(__file__).resolve().parent,
        )
    except (OSError, subprocess.TimeoutExpired):
        return "unknown"
    return out.stdout.strip() if out.returncode == 0 and out.stdout.strip() else "unknown"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def fmt(value: float) -> str:
    return _FLOAT_FMT.format(float(value))


def csv_columns(result: SweepResult) -> list[str]:
    cols = ["delta", "P1", "P2", "P3", "max_P2", "converged"]
    if result.secondary_name is not None:
        cols.insert(0, result.secondary_name)
    return cols


def render_sweep_csv(result: SweepResult, config: ExperimentConfig | None = None,
                     extra: dict | None = None) -> str:
    """Render a sweep as CSV text with a '#'-prefixed metadata preamble.

    When a secondary axis is present its column comes first and blocks with
    equal secondary value are separated by blank lines (gnuplot grid-data
    convention).
    """
    lines = [f"# holeburn {__version__}", f"# git: {_git_revision()}"]
    if config is not None:
        lines.append(f"# config: {config.to_json()}")
    for key, value in (extra or {}).items():
        lines.append(f"# {key}: {value}")
    for note in result.metadata.get("notes", ()):
        lines.append(f"# note: {note}")
    lines.append("# columns: " + ",".join(csv_columns(result)))
    lines.append(",".join(csv_columns(result)))
    previous_secondary = None
    for row in result.rows():
        if result.secondary_name is not None:
            if previous_secondary is not None and row[0] != previous_secondary:
                lines.append("")
            previous_secondary = row[0]
        *numbers, converged = row
        lines.append(",".join([fmt(v) for v in numbers] + ["1" if converged else "0"]))
    return "\n".join(lines) + "\n"


def write_sweep_csv(path: str | Path, result: SweepResult,
                    config: ExperimentConfig | None = None,
                    extra: dict | None = None) -> Path:
    path = Path(path)
    _atomic_write(path, render_sweep_csv(result, config, extra))
    return path


def write_sweep_json(path: str | Path, result: SweepResult,
                     config: ExperimentConfig | None = None) -> Path:
    """JSON mirror of the sweep: metadata header plus per-point records."""
    path = Path(path)
    points = []
    for i in range(len(result)):
        point = {
            "delta": result.delta[i],
            "P1": result.p1[i],
            "P2": result.p2[i],
            "P3": result.p3[i],
            "max_P2": result.max_p2[i],
            "converged": bool(result.converged[i]),
            "refinements": int(result.refinements[i]),
            "residual": result.residual[i],
        }
        if result.secondary_name is not None:
            point[result.secondary_name] = result.secondary[i]
        points.append(point)
    payload = {
        "version": __version__,
        "git": _git_revision(),
        "config": None if config is None else config.to_dict(),
        "notes": list(result.metadata.get("notes", ())),
        "points": points,
    }
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def read_config_echo(path: str | Path) -> ExperimentConfig:
    """Re-parse the config echoed in a CSV preamble written by this package."""
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("# config: "):
            return ExperimentConfig.from_json(line[len("# config: "):])
        if not line.startswith("#"):
            break
    raise ValueError(f"no config echo found in {path}")
