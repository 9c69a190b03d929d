"""Closed-form dressed-state spectrum, adiabaticity diagnostics and the
analytic hole-profile model with its independent numerical oracle.

The instantaneous eigensystem of the driven three-level Hamiltonian consists
of a zero-energy dark state |D> = cos(theta)|1> - sin(theta)|3> and two
bright states |+->, with energies eps_pm = (delta +- sqrt(delta^2 +
omega0^2)) / 2, where omega0^2 = omega12^2 + omega23^2, tan(theta) =
omega12/omega23 and tan(2 phi) = omega0/delta.

The idealized transfer model holds omega0 and phi constant while theta ramps
linearly from 0 to pi/2; first-order perturbation theory then gives the
transfer probability P3 = 1 - sinc^2(pi * gap / (4 theta_dot)) with gap =
(sqrt(delta^2 + omega0^2) - |delta|) / 2. The first zero of the sinc defines
the plateau edge delta_edge = omega0^2 / (16 theta_dot) - 4 theta_dot. The
linear_theta_oracle integrates the same idealized model exactly and serves as
the independent check of that formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .core import build_hamiltonian, SystemParams


class NoPlateauError(ValueError):
    """Raised when omega0 < 8 theta_dot: no adiabatic plateau exists."""


@dataclass(frozen=True)
class DressedState:
    """Instantaneous eigensystem at one point in time."""

    eps0: float
    eps_plus: float
    eps_minus: float
    theta: float
    phi: float
    omega0: float
    dark: np.ndarray
    plus: np.ndarray
    minus: np.ndarray


@dataclass(frozen=True)
class AnalyticHoleModel:
    """Midpoint parameters of the idealized linear-ramp transfer model.

    For a Gaussian pair of amplitude omega_max, width sigma and delay tau the
    values at the instant between the two pulses are
    omega0 = sqrt(2) exp(-tau^2 / 8 sigma^2) omega_max and
    theta_dot = tau / (2 sigma^2).
    """

    omega0: float
    theta_dot: float

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.theta_dot <= 0:
            raise ValueError(f"theta_dot must be positive, got {self.theta_dot}")

    @classmethod
    def from_pulses(cls, omega_max: float, tau: float, sigma: float = 1.0):
        if omega_max <= 0 or tau <= 0 or sigma <= 0:
            raise ValueError("omega_max, tau and sigma must all be positive")
        omega0 = math.sqrt(2.0) * math.exp(-tau**2 / (8.0 * sigma**2)) * omega_max
        return cls(omega0=omega0, theta_dot=tau / (2.0 * sigma**2))


def dressed_spectrum(delta: float, omega12: float, omega23: float) -> DressedState:
    """Eigen-decomposition of the driven Hamiltonian at given amplitudes."""
    if omega12 < 0 or omega23 < 0:
        raise ValueError("amplitudes must be nonnegative")
    omega0 = math.hypot(omega12, omega23)
    if omega0 == 0:
        raise ValueError("dressed spectrum undefined for zero amplitudes")
    theta = math.atan2(omega12, omega23)
    phi = 0.5 * math.atan2(omega0, delta)
    root = math.hypot(delta, omega0)
    eps_plus = 0.5 * (delta + root)
    eps_minus = 0.5 * (delta - root)
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    dark = np.array([ct, 0.0, -st])
    plus = np.array([st * sp, cp, ct * sp])
    minus = np.array([st * cp, -sp, ct * cp])
    return DressedState(eps0=0.0, eps_plus=eps_plus, eps_minus=eps_minus,
                        theta=theta, phi=phi, omega0=omega0,
                        dark=dark, plus=plus, minus=minus)


def nonadiabatic_coupling(state: DressedState, theta_dot: float) -> tuple[float, float]:
    """Magnitudes of the couplings from the dark state to the bright states.

    |<+|dD/dt>| = |theta_dot| sin(phi) and |<-|dD/dt>| = |theta_dot| cos(phi);
    their squares sum to theta_dot^2 exactly.
    """
    td = abs(theta_dot)
    return td * math.sin(state.phi), td * math.cos(state.phi)


def _sinc(x: float) -> float:
    return float(np.sinc(x / np.pi))


def energy_gap(delta: float, omega0: float) -> float:
    """Gap between the dark state and the nearest bright state, mirrored in delta."""
    return 0.5 * (math.hypot(delta, omega0) - abs(delta))


def analytic_p3(delta: float, model: AnalyticHoleModel) -> float:
    """Transfer probability of the idealized model, even in delta.

    P3 = 1 - sinc^2(pi * gap / (4 theta_dot)) with the dark-bright gap held at
    its value for the given detuning.
    """
    gap = energy_gap(delta, model.omega0)
    s = _sinc(math.pi * gap / (4.0 * model.theta_dot))
    return 1.0 - s * s


def delta_edge(model: AnalyticHoleModel) -> float:
    """Plateau edge: the detuning at which the transfer first returns to 1.

    Equals omega0^2 / (16 theta_dot) - 4 theta_dot; the emptied band spans
    twice this value. Raises NoPlateauError when omega0 < 8 theta_dot (the
    edge would be negative: no adiabatic plateau exists).
    """
    value = model.omega0**2 / (16.0 * model.theta_dot) - 4.0 * model.theta_dot
    if value < 0:
        raise NoPlateauError(
            f"no adiabatic plateau exists: omega0 = {model.omega0:.4g} is below "
            f"8 * theta_dot = {8 * model.theta_dot:.4g}"
        )
    return value


def delta_edge_leading(model: AnalyticHoleModel) -> float:
    """Leading-order edge predictor omega0^2 / (16 theta_dot), without the
    -4 theta_dot correction. Exposed alongside delta_edge for comparison."""
    return model.omega0**2 / (16.0 * model.theta_dot)


def adiabaticity_margin(delta: float, model: AnalyticHoleModel) -> float:
    """Smallest ratio of bright-state gap to nonadiabatic coupling.

    Values well above 1 indicate adiabatic transfer at this detuning.
    """
    state = dressed_spectrum(delta, model.omega0 / math.sqrt(2.0),
                             model.omega0 / math.sqrt(2.0))
    c_plus, c_minus = nonadiabatic_coupling(state, model.theta_dot)
    margins = []
    if c_plus > 0:
        margins.append(abs(state.eps_plus) / c_plus)
    if c_minus > 0:
        margins.append(abs(state.eps_minus) / c_minus)
    return min(margins) if margins else math.inf


def linear_theta_oracle(delta: float, omega0: float, theta_dot: float,
                        rtol: float = 1e-10, atol: float = 1e-12) -> float:
    """Exact transfer probability of the idealized model by direct integration.

    Propagates the Schrodinger equation with constant omega0 and a linear
    mixing-angle ramp theta(t) = theta_dot * t over t in [0, pi/(2 theta_dot)]
    (amplitudes omega12 = omega0 sin(theta), omega23 = omega0 cos(theta)),
    starting from |1>, and returns the final population of |3>. Uses an
    adaptive high-order integrator, fully independent of the fixed-step
    propagation used elsewhere.
    """
    if omega0 <= 0 or theta_dot <= 0:
        raise ValueError("omega0 and theta_dot must be positive")
    total_time = math.pi / (2.0 * theta_dot)
    params = SystemParams(delta=delta)

    def rhs(t, psi):
        th = min(max(theta_dot * t, 0.0), 0.5 * math.pi)  # clamp rounding overshoot
        h = build_hamiltonian(params, omega0 * math.sin(th), omega0 * math.cos(th))
        return -1j * (h @ psi)

    psi0 = np.array([1.0, 0.0, 0.0], dtype=np.complex128)
    sol = solve_ivp(rhs, (0.0, total_time), psi0, method="DOP853",
                    rtol=rtol, atol=atol)
    if not sol.success:
        raise RuntimeError(f"oracle integration failed: {sol.message}")
    return float(np.abs(sol.y[2, -1]) ** 2)
