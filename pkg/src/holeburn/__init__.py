"""holeburn: spectral hole burning and qubit isolation in three-level systems.

Numerically propagates driven three-level lambda systems through
counterintuitive Gaussian pulse pairs (forward and reversed) under a master
equation with decay and dephasing, sweeps inhomogeneous detunings to obtain
hole and isolation profiles, and provides the closed-form dressed-state model
those profiles are compared against.
"""

__version__ = "0.1.0"

from .analytics import (
    AnalyticHoleModel,
    DressedState,
    NoPlateauError,
    adiabaticity_margin,
    analytic_p3,
    delta_edge,
    delta_edge_leading,
    dressed_spectrum,
    energy_gap,
    linear_theta_oracle,
    nonadiabatic_coupling,
)
from .config import ConfigError, ExperimentConfig, OutputSpec
from .core import (
    PulsePair,
    PulseSchedule,
    PulseSegment,
    SystemParams,
    basis_dm,
    basis_ket,
    build_hamiltonian,
    check_density_matrix,
    hermiticity_defect,
    populations,
    pulse_amplitudes,
)
from .dynamics import (
    ConvergenceError,
    IntegratorConfig,
    PropagationResult,
    PurePropagationResult,
    dissipator,
    lindblad_rhs,
    propagate,
    propagate_pure,
)
from .protocols import ProtocolSpec, make_qubit_isolation, make_stirap, mixing_angle
from .sweep import (
    EnsembleDistribution,
    SweepGrid,
    SweepResult,
    absorption_profile,
    run_sweep,
)

__all__ = [
    "AnalyticHoleModel",
    "ConfigError",
    "ConvergenceError",
    "DressedState",
    "EnsembleDistribution",
    "ExperimentConfig",
    "IntegratorConfig",
    "NoPlateauError",
    "OutputSpec",
    "PropagationResult",
    "ProtocolSpec",
    "PulsePair",
    "PulseSchedule",
    "PulseSegment",
    "PurePropagationResult",
    "SweepGrid",
    "SweepResult",
    "SystemParams",
    "absorption_profile",
    "adiabaticity_margin",
    "analytic_p3",
    "basis_dm",
    "basis_ket",
    "build_hamiltonian",
    "check_density_matrix",
    "delta_edge",
    "delta_edge_leading",
    "dissipator",
    "dressed_spectrum",
    "energy_gap",
    "hermiticity_defect",
    "lindblad_rhs",
    "linear_theta_oracle",
    "make_qubit_isolation",
    "make_stirap",
    "mixing_angle",
    "nonadiabatic_coupling",
    "populations",
    "propagate",
    "propagate_pure",
    "pulse_amplitudes",
    "run_sweep",
    "__version__",
]
