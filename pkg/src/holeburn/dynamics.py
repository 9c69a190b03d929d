"""Density-matrix and pure-state propagation through pulse schedules.

Integration is classical fixed-step RK4 with automatic step-halving
verification: every propagation is run at the base step and again at half the
step, and the result is accepted only when no final population moves by more
than the configured tolerance. Deterministic step grids make repeated runs
(and parallel sweeps) bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .core import (
    PulseSchedule,
    SystemParams,
    check_density_matrix,
    populations,
)

INTEGRATION_METHOD = "rk4-step-halving"

# Invariant bound: base_step * max(omega_max, |delta - offset|, omega13) <= 0.05
STEP_BOUND = 0.05

# Note attached to multi-segment results: each segment is integrated in its
# own rotating frame and the relative phase accumulated on the excited state
# between segments is dropped (excited population at boundaries is < 1e-6).
MULTI_SEGMENT_NOTE = (
    "per-segment rotating frames; inter-segment excited-state phases dropped"
)

_L21 = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], dtype=np.complex128)  # |1><2|
_L23 = np.array([[0, 0, 0], [0, 0, 0], [0, 1, 0]], dtype=np.complex128)  # |3><2|
_DEPH = np.diag([-1.0, 1.0, -1.0]).astype(np.complex128)  # |2><2|-|1><1|-|3><3|


class ConvergenceError(RuntimeError):
    """Step-halving did not converge within the allowed refinements.

    Carries the residual (largest final-population change under the last
    halving), the tolerance it was tested against, and the result of the
    finest attempted run.
    """

    def __init__(self, residual: float, tolerance: float, refinements: int, result):
        super().__init__(
            f"step halving residual {residual:.3e} exceeds tolerance "
            f"{tolerance:.1e} after {refinements} refinements"
        )
        self.residual = residual
        self.tolerance = tolerance
        self.refinements = refinements
        self.result = result


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 settings.

    base_step of None selects the default rule: each segment integrates with
    h = 0.05 / max(omega_max, |delta - carrier_offset|, omega13 if cross
    coupling, 1/sigma). An explicit base_step applies to every segment and is
    rejected if it violates that bound for any segment.
    """

    base_step: float | None = None
    tolerance: float = 1e-8
    max_refinements: int = 4
    samples_per_segment: int = 200
    method: str = INTEGRATION_METHOD

    def __post_init__(self):
        if self.base_step is not None and self.base_step <= 0:
            raise ValueError(f"base_step must be positive, got {self.base_step}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_refinements < 0:
            raise ValueError("max_refinements must be nonnegative")
        if self.samples_per_segment < 1:
            raise ValueError("samples_per_segment must be at least 1")
        if self.method != INTEGRATION_METHOD:
            raise ValueError(f"unsupported method {self.method!r}")


@dataclass(frozen=True)
class PropagationResult:
    """Final state plus sampled population trajectory and convergence record."""

    rho_final: np.ndarray
    times: np.ndarray
    populations: np.ndarray
    max_excited: float
    refinements: int
    residual: float
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PurePropagationResult:
    """Closed-system counterpart of PropagationResult for a state vector."""

    psi_final: np.ndarray
    times: np.ndarray
    populations: np.ndarray
    max_excited: float
    refinements: int
    residual: float
    metadata: dict = field(default_factory=dict)


def dissipator(operator: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Lindblad dissipator D[O] rho = O rho O^dag - (O^dag O rho + rho O^dag O)/2."""
    od = operator.conj().T
    odo = od @ operator
    return operator @ rho @ od - 0.5 * (odo @ rho + rho @ odo)


def lindblad_rhs(rho: np.ndarray, hamiltonian: np.ndarray, params: SystemParams) -> np.ndarray:
    """Master-equation right-hand side: coherent part plus decay and dephasing.

    The output is traceless and Hermitian for Hermitian inputs.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    h = np.asarray(hamiltonian, dtype=np.complex128)
    drho = -1j * (h @ rho - rho @ h)
    if params.gamma21 > 0:
        drho += params.gamma21 * dissipator(_L21, rho)
    if params.gamma23 > 0:
        drho += params.gamma23 * dissipator(_L23, rho)
    if params.Gamma > 0:
        drho += params.Gamma * dissipator(_DEPH, rho)
    return drho


def segment_scale(pair_omega_max: float, sigma: float, delta_eff: float,
                  params: SystemParams) -> float:
    """Fastest frequency scale governing the step bound for one segment."""
    scale = max(pair_omega_max, abs(delta_eff), 1.0 / sigma)
    if params.cross_coupling:
        scale = max(scale, params.omega13)
    return scale


def _segment_steps(schedule: PulseSchedule, params: SystemParams,
                   cfg: IntegratorConfig) -> list[float]:
    steps = []
    for seg in schedule.segments:
        scale = segment_scale(seg.pair.omega_max, seg.pair.sigma,
                              params.delta - seg.carrier_offset, params)
        bound = STEP_BOUND / scale
        if cfg.base_step is not None:
            if cfg.base_step > bound * (1 + 1e-12):
                raise ValueError(
                    f"base_step {cfg.base_step:.3e} violates the step bound "
                    f"{bound:.3e} for segment at t_center {seg.pair.t_center}"
                )
            steps.append(cfg.base_step)
        else:
            steps.append(bound)
    return steps


def _segment_windows(schedule: PulseSchedule) -> list[tuple[float, float]]:
    """Per-segment integration windows, clipped at midpoints if they touch."""
    windows = [seg.pair.window for seg in schedule.segments]
    for k in range(len(windows) - 1):
        end, start = windows[k][1], windows[k + 1][0]
        if start < end:
            mid = 0.5 * (end + start)
            windows[k] = (windows[k][0], mid)
            windows[k + 1] = (mid, windows[k + 1][1])
    return windows


def _run_levels(runner: Callable[[int], tuple], cfg: IntegratorConfig):
    """Run at successive step halvings until final populations stabilize.

    Returns (finest run, refinements used, residual, converged flag).
    """
    coarse = runner(0)
    residual = math.inf
    for refinement in range(cfg.max_refinements + 1):
        fine = runner(refinement + 1)
        residual = float(np.max(np.abs(coarse[0] - fine[0])))
        if residual <= cfg.tolerance:
            return fine, refinement, residual, True
        coarse = fine
    return coarse, cfg.max_refinements, residual, False


def _propagate_any(state0: np.ndarray, schedule: PulseSchedule, params: SystemParams,
                   cfg: IntegratorConfig, window_kernel, state_pops, extra_args):
    windows = _segment_windows(schedule)
    base_steps = _segment_steps(schedule, params, cfg)
    nseg = len(schedule.segments)

    def run(level: int):
        state = state0.copy()
        times = [np.array([windows[0][0]])]
        pops = [state_pops(state)[None, :]]
        max_exc = float(pops[0][0, 1])
        for seg, (t0, t1), h_base in zip(schedule.segments, windows, base_steps):
            h = h_base / (2 ** level)
            delta_eff = params.delta - seg.carrier_offset
            edges = np.linspace(t0, t1, cfg.samples_per_segment + 1)
            seg_pops = np.empty((cfg.samples_per_segment, 3))
            for i in range(cfg.samples_per_segment):
                n = max(1, int(math.ceil((edges[i + 1] - edges[i]) / h)))
                m = window_kernel(
                    state, edges[i], edges[i + 1], n,
                    seg.pair.omega_max, seg.pair.sigma, seg.pair.tau,
                    seg.pair.t_center, delta_eff, *extra_args(params),
                )
                if m > max_exc:
                    max_exc = m
                seg_pops[i] = state_pops(state)
            times.append(edges[1:])
            pops.append(seg_pops)
        final_pops = state_pops(state)
        return final_pops, state, np.concatenate(times), np.vstack(pops), max_exc

    finest, refinements, residual, converged = _run_levels(run, cfg)
    steps_used = [h / (2 ** (refinements + 1)) for h in base_steps]
    metadata = {
        "method": cfg.method,
        "tolerance": cfg.tolerance,
        "refinements": refinements,
        "residual": residual,
        "segment_steps": tuple(steps_used),
        "notes": (MULTI_SEGMENT_NOTE,) if nseg > 1 else (),
    }
    return finest, refinements, residual, converged, metadata


def propagate(rho0: np.ndarray, schedule: PulseSchedule, params: SystemParams,
              cfg: IntegratorConfig | None = None) -> PropagationResult:
    """Propagate a density matrix through the full schedule window.

    Segments are integrated serially, each in its own rotating frame with
    effective detuning delta - carrier_offset; the state is carried across
    the (drive-free) gaps unchanged. An empty schedule returns rho0 exactly.

    Raises ConvergenceError if step halving still moves a final population by
    more than cfg.tolerance after cfg.max_refinements refinements.
    """
    cfg = cfg or IntegratorConfig()
    rho0 = np.asarray(rho0, dtype=np.complex128)
    check_density_matrix(rho0)
    if len(schedule) == 0:
        pops = populations(rho0)
        return PropagationResult(
            rho_final=rho0.copy(),
            times=np.zeros(1),
            populations=pops[None, :],
            max_excited=float(pops[1]),
            refinements=0,
            residual=0.0,
            metadata={"method": cfg.method, "tolerance": cfg.tolerance,
                      "refinements": 0, "residual": 0.0,
                      "segment_steps": (), "notes": ()},
        )

    def extra(p: SystemParams):
        return (p.gamma21, p.gamma23, p.Gamma, p.cross_coupling, p.omega13)

    finest, refinements, residual, converged, metadata = _propagate_any(
        rho0, schedule, params, cfg, _kernels.lindblad_window,
        lambda rho: populations(rho), extra)
    result = _result_from(finest, refinements, residual, metadata)
    if not converged:
        raise ConvergenceError(residual, cfg.tolerance, refinements, result)
    return result


def _result_from(finest, refinements, residual, metadata) -> PropagationResult:
    _, state, times, pops, max_exc = finest
    return PropagationResult(
        rho_final=state,
        times=times,
        populations=pops,
        max_excited=max_exc,
        refinements=refinements,
        residual=residual,
        metadata=metadata,
    )


def propagate_pure(psi0: np.ndarray, schedule: PulseSchedule, params: SystemParams,
                   cfg: IntegratorConfig | None = None) -> PurePropagationResult:
    """Propagate a normalized state vector; valid only without decoherence.

    Provides the independent closed-system route against which density-matrix
    propagation is cross-checked.
    """
    cfg = cfg or IntegratorConfig()
    if params.gamma21 or params.gamma23 or params.Gamma:
        raise ValueError("propagate_pure requires all decoherence rates to be zero")
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if psi0.shape != (3,):
        raise ValueError(f"state vector must have shape (3,), got {psi0.shape}")
    norm = float(np.linalg.norm(psi0))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"state vector must be normalized, |psi| = {norm}")
    if len(schedule) == 0:
        pops = np.abs(psi0) ** 2
        return PurePropagationResult(
            psi_final=psi0.copy(),
            times=np.zeros(1),
            populations=pops[None, :],
            max_excited=float(pops[1]),
            refinements=0,
            residual=0.0,
            metadata={"method": cfg.method, "tolerance": cfg.tolerance,
                      "refinements": 0, "residual": 0.0,
                      "segment_steps": (), "notes": ()},
        )

    def extra(p: SystemParams):
        return (p.cross_coupling, p.omega13)

    finest, refinements, residual, converged, metadata = _propagate_any(
        psi0, schedule, params, cfg, _kernels.schrodinger_window,
        lambda psi: np.abs(psi) ** 2, extra)
    _, state, times, pops, max_exc = finest
    result = PurePropagationResult(
        psi_final=state,
        times=times,
        populations=pops,
        max_excited=max_exc,
        refinements=refinements,
        residual=residual,
        metadata=metadata,
    )
    if not converged:
        raise ConvergenceError(residual, cfg.tolerance, refinements, result)
    return result
