"""Domain types and Hamiltonian construction for the three-level lambda system.

Basis convention throughout the package: index 0 is the initial ground state
|1>, index 1 is the excited state |2>, index 2 is the target ground state |3>.
The pulse width sigma defines the time unit; every frequency and rate is
expressed in units of 1/sigma (hbar = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Gaussian tails with log-amplitude below this are truncated to exactly zero;
# the corresponding envelope value e^-12.5 ~ 3.7e-6 is far below the
# integrator tolerance the package targets.
ENVELOPE_CUTOFF_LOG = -12.5

# Hard validity floor for the spacing between the nearest pulse centers of
# adjacent schedule segments, in units of the larger sigma of the two.
MIN_SEGMENT_GAP = 6.0

# Default spacing used by the protocol constructors: with tails truncated at
# 5 sigma from each peak, a 10 sigma gap means adjacent segments never drive
# the system at the same instant and their simulation windows exactly abut.
DEFAULT_SEGMENT_GAP = 10.0

STATE_LABELS = ("1", "2", "3")


def basis_ket(index: int) -> np.ndarray:
    """Return the basis state |1>, |2> or |3> (index 0, 1, 2) as a ket."""
    if index not in (0, 1, 2):
        raise ValueError(f"basis index must be 0, 1 or 2, got {index}")
    ket = np.zeros(3, dtype=np.complex128)
    ket[index] = 1.0
    return ket


def basis_dm(index: int) -> np.ndarray:
    """Return the projector |i><i| as a 3x3 density matrix."""
    ket = basis_ket(index)
    return np.outer(ket, ket.conj())


@dataclass(frozen=True)
class SystemParams:
    """Per-ion parameters: detuning, ground splitting and decoherence rates.

    delta is the single-photon detuning of the ion's 1-2 transition from the
    drive; the two-photon resonance condition is hard-wired, so there is no
    independent two-photon detuning. omega13 is the splitting between the two
    stable states and is only used when cross_coupling is enabled, in which
    case each pulse also drives the unintended optical transition with phase
    factors exp(+-i*omega13*t) on the global simulation clock.
    """

    delta: float = 0.0
    omega13: float = 0.0
    gamma21: float = 0.0
    gamma23: float = 0.0
    Gamma: float = 0.0
    cross_coupling: bool = False

    def __post_init__(self):
        for name in ("gamma21", "gamma23", "Gamma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if self.omega13 < 0:
            raise ValueError(f"omega13 must be nonnegative, got {self.omega13}")
        if self.cross_coupling and self.omega13 <= 0:
            raise ValueError("cross_coupling requires omega13 > 0")


@dataclass(frozen=True)
class PulsePair:
    """One Gaussian pulse pair with common amplitude and width.

    The 1-2 pulse peaks at t_center + tau/2 and the 2-3 pulse at
    t_center - tau/2, so a positive delay tau gives the counterintuitive
    ordering (2-3 pulse first) that transfers |1> -> |3>; a negative tau
    reverses the ordering and the transfer direction.
    """

    omega_max: float
    tau: float
    sigma: float = 1.0
    t_center: float = 0.0

    def __post_init__(self):
        if self.omega_max <= 0:
            raise ValueError(f"omega_max must be positive, got {self.omega_max}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @property
    def peak_12(self) -> float:
        return self.t_center + 0.5 * self.tau

    @property
    def peak_23(self) -> float:
        return self.t_center - 0.5 * self.tau

    @property
    def window(self) -> tuple[float, float]:
        """Simulation window [center - 5 sigma - |tau|/2, center + 5 sigma + |tau|/2]."""
        half = 5.0 * self.sigma + 0.5 * abs(self.tau)
        return (self.t_center - half, self.t_center + half)

    def amplitudes(self, t: float) -> tuple[float, float]:
        """Evaluate (omega12, omega23) at time t, truncating deep tails to 0."""
        inv = 1.0 / (2.0 * self.sigma * self.sigma)
        e12 = -((t - self.peak_12) ** 2) * inv
        e23 = -((t - self.peak_23) ** 2) * inv
        o12 = self.omega_max * math.exp(e12) if e12 > ENVELOPE_CUTOFF_LOG else 0.0
        o23 = self.omega_max * math.exp(e23) if e23 > ENVELOPE_CUTOFF_LOG else 0.0
        return o12, o23


@dataclass(frozen=True)
class PulseSegment:
    """A pulse pair together with the carrier offset delta_n of its drive.

    A segment with carrier offset delta_n addresses ions around that offset:
    during the segment the ion's effective detuning is delta - delta_n.
    """

    pair: PulsePair
    carrier_offset: float = 0.0


@dataclass(frozen=True)
class PulseSchedule:
    """Time-ordered sequence of pulse segments; may be empty (no drive).

    Adjacent segments must keep their nearest pulse centers at least
    MIN_SEGMENT_GAP sigma apart so that cross-segment envelope overlap stays
    negligible.
    """

    segments: tuple[PulseSegment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        segments = tuple(self.segments)
        object.__setattr__(self, "segments", segments)
        for k in range(len(segments) - 1):
            a, b = segments[k].pair, segments[k + 1].pair
            if b.t_center <= a.t_center:
                raise ValueError(
                    f"segments must be time-ordered: segment {k + 1} center "
                    f"{b.t_center} does not follow segment {k} center {a.t_center}"
                )
            gap = (b.t_center - 0.5 * abs(b.tau)) - (a.t_center + 0.5 * abs(a.tau))
            floor = MIN_SEGMENT_GAP * max(a.sigma, b.sigma)
            if gap < floor - 1e-12:
                raise ValueError(
                    f"segments {k} and {k + 1} overlap: nearest pulse centers are "
                    f"{gap:.3f} apart, need at least {floor:.3f}"
                )

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def window(self) -> tuple[float, float] | None:
        """Union of the per-segment windows, or None for an empty schedule."""
        if not self.segments:
            return None
        return (self.segments[0].pair.window[0], self.segments[-1].pair.window[1])


def pulse_amplitudes(schedule: PulseSchedule, t: float) -> tuple[float, float, float]:
    """Summed (omega12, omega23) envelopes at t plus the dominant carrier offset.

    The dominant segment is the one whose pair center is nearest to t; with
    the mandated segment spacing at most one segment has non-truncated
    envelopes at any instant, so the sum is effectively that segment's pair.
    """
    o12 = 0.0
    o23 = 0.0
    active_offset = 0.0
    best = math.inf
    for seg in schedule.segments:
        a12, a23 = seg.pair.amplitudes(t)
        o12 += a12
        o23 += a23
        dist = abs(t - seg.pair.t_center)
        if dist < best:
            best = dist
            active_offset = seg.carrier_offset
    return o12, o23, active_offset


def build_hamiltonian(
    params: SystemParams,
    omega12: float,
    omega23: float,
    carrier_offset: float = 0.0,
    t: float = 0.0,
) -> np.ndarray:
    """Three-level Hamiltonian for instantaneous amplitudes, as a 3x3 array.

    The diagonal carries the effective detuning (delta - carrier_offset) on
    the excited state; the off-diagonals carry half the Rabi amplitudes.
    With cross_coupling enabled, omega23 additionally drives the 1-2
    transition with phase e^{-i*omega13*t} and omega12 drives the 2-3
    transition with phase e^{+i*omega13*t} on |3><2|.
    """
    if omega12 < 0 or omega23 < 0:
        raise ValueError("pulse amplitudes must be nonnegative")
    h = np.zeros((3, 3), dtype=np.complex128)
    h[0, 1] = h[1, 0] = 0.5 * omega12
    h[1, 2] = h[2, 1] = 0.5 * omega23
    h[1, 1] = params.delta - carrier_offset
    if params.cross_coupling:
        if params.omega13 <= 0:
            raise ValueError("cross_coupling requires omega13 > 0")
        phase = np.exp(-1j * params.omega13 * t)
        h[0, 1] += 0.5 * omega23 * phase
        h[1, 0] += 0.5 * omega23 * np.conj(phase)
        h[2, 1] += 0.5 * omega12 * np.conj(phase)
        h[1, 2] += 0.5 * omega12 * phase
    return h


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Largest entrywise deviation from matrix == matrix^dagger."""
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def check_density_matrix(
    rho: np.ndarray,
    herm_tol: float = 1e-9,
    trace_tol: float = 1e-9,
    eig_floor: float = -1e-7,
) -> None:
    """Validate Hermiticity, unit trace and positivity of a density matrix.

    Raises ValueError describing the first violated property. The eigenvalue
    floor is slightly negative to accommodate integrator round-off.
    """
    rho = np.asarray(rho)
    if rho.shape != (3, 3):
        raise ValueError(f"density matrix must be 3x3, got shape {rho.shape}")
    defect = hermiticity_defect(rho)
    if defect > herm_tol:
        raise ValueError(f"density matrix not Hermitian: defect {defect:.3e} > {herm_tol:.1e}")
    trace_err = abs(np.trace(rho).real - 1.0)
    if trace_err > trace_tol:
        raise ValueError(f"density matrix trace deviates from 1 by {trace_err:.3e}")
    eigmin = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if eigmin < eig_floor:
        raise ValueError(f"density matrix has negative eigenvalue {eigmin:.3e}")


def populations(rho: np.ndarray) -> np.ndarray:
    """Real diagonal (P1, P2, P3) of a density matrix."""
    return np.real(np.diag(rho)).copy()
