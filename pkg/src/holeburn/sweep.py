"""Detuning-grid sweeps and ensemble-weighted absorption profiles.

Each grid point is an independent propagation from the ground state |1><1|;
points are dispatched to a thread pool (the compiled kernels release the GIL)
and written into position-addressed slots, so results are ordered exactly as
the input grid and are bit-identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .core import SystemParams, basis_dm
from .dynamics import ConvergenceError, IntegratorConfig, propagate
from .protocols import ProtocolSpec

SECONDARY_AXES = ("tau", "omega_max", "omega_max_r", "gamma", "Gamma")


@dataclass(frozen=True)
class SweepGrid:
    """Detuning axis plus an optional secondary parameter axis.

    The secondary axis name selects which protocol or system parameter is
    varied: the pulse delay, the burn amplitude, the unburn amplitude(s), the
    decay rate (applied to both channels) or the dephasing rate.
    """

    delta_values: tuple[float, ...]
    secondary_name: str | None = None
    secondary_values: tuple[float, ...] | None = None

    def __post_init__(self):
        deltas = tuple(float(d) for d in self.delta_values)
        object.__setattr__(self, "delta_values", deltas)
        if not deltas:
            raise ValueError("delta axis must be nonempty")
        if any(b <= a for a, b in zip(deltas, deltas[1:])):
            raise ValueError("delta axis must be strictly increasing")
        if (self.secondary_name is None) != (self.secondary_values is None):
            raise ValueError("secondary axis needs both a name and values")
        if self.secondary_name is not None:
            if self.secondary_name not in SECONDARY_AXES:
                raise ValueError(
                    f"unknown secondary axis {self.secondary_name!r}; "
                    f"expected one of {SECONDARY_AXES}"
                )
            values = tuple(float(v) for v in self.secondary_values)
            object.__setattr__(self, "secondary_values", values)
            if not values:
                raise ValueError("secondary axis must be nonempty")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError("secondary axis must be strictly increasing")

    def __len__(self) -> int:
        n = len(self.delta_values)
        if self.secondary_values is not None:
            n *= len(self.secondary_values)
        return n


@dataclass(frozen=True)
class EnsembleDistribution:
    """Inhomogeneous line shape used to weight absorption profiles.

    The uniform shape weights every detuning equally over the swept window;
    the gaussian shape uses exp(-(delta - center)^2 / (2 width^2)).
    """

    shape: str = "uniform"
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if self.shape not in ("uniform", "gaussian"):
            raise ValueError(f"shape must be 'uniform' or 'gaussian', got {self.shape!r}")
        if self.shape == "gaussian" and self.width <= 0:
            raise ValueError("gaussian ensemble requires width > 0")

    def weight(self, delta: np.ndarray) -> np.ndarray:
        delta = np.asarray(delta, dtype=float)
        if self.shape == "uniform":
            return np.ones_like(delta)
        return np.exp(-((delta - self.center) ** 2) / (2.0 * self.width**2))


@dataclass(frozen=True)
class SweepResult:
    """Per-point final populations and convergence record, grid-ordered.

    Rows follow the input grid row-major: the secondary axis varies slowest.
    metadata echoes every input needed to reproduce the sweep.
    """

    delta: np.ndarray
    secondary_name: str | None
    secondary: np.ndarray | None
    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray
    max_p2: np.ndarray
    converged: np.ndarray
    refinements: np.ndarray
    residual: np.ndarray
    metadata: dict

    def __len__(self) -> int:
        return len(self.delta)

    def rows(self) -> Iterable[tuple]:
        """Yield per-point rows ([secondary,] delta, P1, P2, P3, max_P2, converged)."""
        for i in range(len(self.delta)):
            row = (self.delta[i], self.p1[i], self.p2[i], self.p3[i],
                   self.max_p2[i], bool(self.converged[i]))
            if self.secondary is not None:
                row = (self.secondary[i],) + row
            yield row


def apply_secondary(protocol: ProtocolSpec, params: SystemParams,
                    name: str, value: float) -> tuple[ProtocolSpec, SystemParams]:
    """Return protocol/params with one swept parameter replaced."""
    if name == "tau":
        return replace(protocol, burn_tau=value), params
    if name == "omega_max":
        return replace(protocol, burn_omega_max=value), params
    if name == "omega_max_r":
        unburn = tuple((value, off) for _, off in protocol.unburn)
        return replace(protocol, unburn=unburn), params
    if name == "gamma":
        return protocol, replace(params, gamma21=value, gamma23=value)
    if name == "Gamma":
        return protocol, replace(params, Gamma=value)
    raise ValueError(f"unknown secondary axis {name!r}")


def run_sweep(grid: SweepGrid, protocol: ProtocolSpec, params_template: SystemParams,
              cfg: IntegratorConfig | None = None, workers: int = 1) -> SweepResult:
    """Propagate |1><1| through the protocol at every grid point.

    Per-point convergence failures are recorded in place (converged=False,
    populations from the finest attempted run) and never abort the sweep.
    """
    cfg = cfg or IntegratorConfig()
    if workers < 1:
        raise ValueError("workers must be at least 1")

    secondary_vals: Sequence[float | None]
    if grid.secondary_name is None:
        secondary_vals = [None]
    else:
        secondary_vals = list(grid.secondary_values)

    tasks = []  # (index, delta, schedule, params)
    sec_column = [] if grid.secondary_name is not None else None
    index = 0
    for sec in secondary_vals:
        proto_k, params_k = (protocol, params_template) if sec is None else \
            apply_secondary(protocol, params_template, grid.secondary_name, sec)
        schedule = proto_k.build()
        for delta in grid.delta_values:
            tasks.append((index, delta, schedule, replace(params_k, delta=delta)))
            if sec_column is not None:
                sec_column.append(sec)
            index += 1

    n = len(tasks)
    p1 = np.empty(n)
    p2 = np.empty(n)
    p3 = np.empty(n)
    max_p2 = np.empty(n)
    converged = np.ones(n, dtype=bool)
    refinements = np.zeros(n, dtype=int)
    residual = np.zeros(n)
    rho0 = basis_dm(0)

    def solve(task):
        i, _, schedule, params = task
        try:
            res = propagate(rho0, schedule, params, cfg)
            ok = True
        except ConvergenceError as err:
            res = err.result
            ok = False
        pops = np.real(np.diag(res.rho_final))
        p1[i], p2[i], p3[i] = pops
        max_p2[i] = res.max_excited
        converged[i] = ok
        refinements[i] = res.refinements
        residual[i] = res.residual

    if workers == 1:
        for task in tasks:
            solve(task)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(solve, tasks))

    metadata = {
        "protocol": protocol,
        "params_template": params_template,
        "integrator": cfg,
        "grid": grid,
        "initial_state": "|1><1|",
        "notes": ("grid points are independent propagations; results are "
                  "position-addressed and worker-count independent",),
    }
    return SweepResult(
        delta=np.array([t[1] for t in tasks]),
        secondary_name=grid.secondary_name,
        secondary=None if sec_column is None else np.array(sec_column, dtype=float),
        p1=p1, p2=p2, p3=p3, max_p2=max_p2,
        converged=converged, refinements=refinements, residual=residual,
        metadata=metadata,
    )


def absorption_profile(result: SweepResult, dist: EnsembleDistribution) -> np.ndarray:
    """Ensemble-weighted absorption on the 1-2 line: weight(delta) * P1(delta).

    Returns an (n, 2) array of (delta, absorption). Only ions left in |1>
    absorb at the probed transition, so the emptied band appears as a notch
    and re-filled bands as peaks. Small negative populations from integrator
    round-off are clipped to zero.
    """
    weights = dist.weight(result.delta)
    absorption = weights * np.clip(result.p1, 0.0, None)
    return np.column_stack([result.delta, absorption])
