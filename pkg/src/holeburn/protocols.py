"""Constructors for the named pulse sequences.

A forward pass ("burn", positive delay) empties a band of the inhomogeneous
line by transferring resonant ions |1> -> |3>; reversed passes ("unburn",
negative delay, weaker) bring a narrower band back to |1> at chosen carrier
offsets, isolating addressable sub-ensembles inside the emptied region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    DEFAULT_SEGMENT_GAP,
    MIN_SEGMENT_GAP,
    PulsePair,
    PulseSchedule,
    PulseSegment,
    pulse_amplitudes,
)

SQRT2 = math.sqrt(2.0)

# Smallest amplitude at which the mixing angle is still considered defined.
AMPLITUDE_FLOOR = 1e-300


def make_stirap(omega_max: float, tau: float, sigma: float = 1.0,
                t_center: float = 0.0) -> PulseSchedule:
    """Single pulse-pair schedule at zero carrier offset.

    Positive tau puts the 2-3 pulse first (transfer |1> -> |3>); negative tau
    reverses the ordering and the direction.
    """
    pair = PulsePair(omega_max=omega_max, tau=tau, sigma=sigma, t_center=t_center)
    return PulseSchedule(segments=(PulseSegment(pair=pair, carrier_offset=0.0),))


def make_qubit_isolation(
    burn_omega: float,
    unburn_specs: list[tuple[float, float]] | tuple[tuple[float, float], ...],
    burn_tau: float | None = None,
    unburn_tau: float | None = None,
    sigma: float = 1.0,
    gap: float | None = None,
) -> PulseSchedule:
    """Burn segment followed by reversed segments at the given carrier offsets.

    unburn_specs is a sequence of (omega_r, carrier_offset) applied serially in
    list order. Segment centers are spaced so that the nearest pulse centers of
    adjacent segments sit `gap` sigma apart (default 10 sigma, at which the
    truncated envelopes of different segments never overlap). A custom gap
    below the 6 sigma validity floor is rejected.
    """
    if burn_tau is None:
        burn_tau = SQRT2 * sigma
    if unburn_tau is None:
        unburn_tau = -SQRT2 * sigma
    if gap is None:
        gap = DEFAULT_SEGMENT_GAP
    if burn_tau <= 0:
        raise ValueError(f"burn delay must be positive, got {burn_tau}")
    if unburn_tau >= 0:
        raise ValueError(f"unburn delay must be negative, got {unburn_tau}")
    if gap < MIN_SEGMENT_GAP:
        raise ValueError(
            f"segment spacing {gap} sigma violates the {MIN_SEGMENT_GAP} sigma floor"
        )
    for k, (omega_r, _) in enumerate(unburn_specs):
        if omega_r >= burn_omega:
            raise ValueError(
                f"unburn segment {k}: amplitude {omega_r} must be below the "
                f"burn amplitude {burn_omega} (isolation band must be narrower "
                f"than the emptied band)"
            )
    segments = [PulseSegment(
        pair=PulsePair(omega_max=burn_omega, tau=burn_tau, sigma=sigma, t_center=0.0),
        carrier_offset=0.0,
    )]
    prev_tau = burn_tau
    center = 0.0
    for omega_r, offset in unburn_specs:
        center += 0.5 * abs(prev_tau) + gap * sigma + 0.5 * abs(unburn_tau)
        segments.append(PulseSegment(
            pair=PulsePair(omega_max=omega_r, tau=unburn_tau, sigma=sigma,
                           t_center=center),
            carrier_offset=offset,
        ))
        prev_tau = unburn_tau
    return PulseSchedule(segments=tuple(segments))


@dataclass(frozen=True)
class ProtocolSpec:
    """Declarative description of a burn / unburn sequence.

    unburn entries are (amplitude, carrier_offset) pairs; all reversed
    segments share unburn_tau. With unburn segments present the burn delay
    must be positive, every unburn amplitude below the burn amplitude, and
    the unburn delay negative. A pure-burn spec places no sign constraint on
    the delay so that plain delay sweeps (including reversed and simultaneous
    pulses) can be expressed.
    """

    burn_omega_max: float
    burn_tau: float = SQRT2
    unburn: tuple[tuple[float, float], ...] = field(default_factory=tuple)
    unburn_tau: float = -SQRT2
    sigma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "unburn",
                           tuple((float(o), float(d)) for o, d in self.unburn))
        if self.burn_omega_max <= 0:
            raise ValueError(f"burn amplitude must be positive, got {self.burn_omega_max}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.unburn:
            if self.burn_tau <= 0:
                raise ValueError("burn delay must be positive when unburn segments exist")
            if self.unburn_tau >= 0:
                raise ValueError("unburn delay must be negative")
            for k, (omega_r, _) in enumerate(self.unburn):
                if omega_r <= 0:
                    raise ValueError(f"unburn segment {k}: amplitude must be positive")
                if omega_r >= self.burn_omega_max:
                    raise ValueError(
                        f"unburn segment {k}: amplitude {omega_r} must be below "
                        f"the burn amplitude {self.burn_omega_max}"
                    )

    def build(self) -> PulseSchedule:
        if not self.unburn:
            return make_stirap(self.burn_omega_max, self.burn_tau, sigma=self.sigma)
        return make_qubit_isolation(
            self.burn_omega_max, list(self.unburn),
            burn_tau=self.burn_tau, unburn_tau=self.unburn_tau, sigma=self.sigma,
        )


def mixing_angle(schedule: PulseSchedule, t: float) -> tuple[float, float]:
    """Mixing angle theta = atan2(omega12, omega23) in [0, pi/2] and its rate.

    The rate uses the closed form for a Gaussian pair,
    theta_dot(t) = (tau / 2 sigma^2) * sech((t - t_center) * tau / sigma^2),
    evaluated for the segment whose center is nearest to t. Raises ValueError
    when both summed amplitudes are below the representable floor.
    """
    o12, o23, _ = pulse_amplitudes(schedule, t)
    if o12 <= AMPLITUDE_FLOOR and o23 <= AMPLITUDE_FLOOR:
        raise ValueError(f"mixing angle undefined at t={t}: both amplitudes vanish")
    theta = math.atan2(o12, o23)
    nearest = min(schedule.segments, key=lambda seg: abs(t - seg.pair.t_center))
    pair = nearest.pair
    x = (t - pair.t_center) * pair.tau / (pair.sigma * pair.sigma)
    sech = 1.0 / math.cosh(x) if abs(x) < 700.0 else 0.0
    theta_dot = pair.tau / (2.0 * pair.sigma * pair.sigma) * sech
    return theta, theta_dot
