"""Exact Fock-space simulator for flow-state cats on a three-site ring lattice.

The package computes everything exactly at desk scale: the symmetric Fock
basis of N bosons on three modes, the ring Bose-Hubbard operator and its
limits, the quasi-momentum mode change and its N-particle lift, sudden
quench-and-hold protocols that create three-branch flow superpositions, and
the three-port interferometer they enable.
"""

from ._kernels import BACKEND
from .basis import (
    dimension,
    enumerate_basis,
    log_factorials,
    multinomial_amplitude,
    multinomial_amplitudes,
    pair_counts,
    rank,
    unrank,
)
from .evolution import SpectralPropagator, evolve_interaction_phase, evolve_spectral
from .hamiltonian import (
    HermitianOperator,
    HubbardParams,
    build_bose_hubbard,
    build_rotating_momentum_hamiltonian,
)
from .interferometer import (
    FringeScan,
    FringeSettings,
    cat_matrix,
    fringe_probabilities,
    fringe_scan,
    full_simulation_fringes,
    phase_matrix,
    protocol_subspace_matrix,
)
from .modes import (
    FockLift,
    dft_lift,
    dft_mode_matrix,
    extremal_columns,
    extremal_mode_probabilities,
    lift_to_fock,
    momentum_distribution,
)
from .protocol import (
    CAT_HOLD_PHASE,
    BracketError,
    ProtocolResult,
    analytic_P3,
    calibrate_u,
    cattiness,
    cattiness_sweep,
    run_protocol,
    sweep_protocol_probabilities,
    timing_tolerance,
)
from .state import (
    Representation,
    StateVector,
    fock_state,
    overlap,
    site_number_distribution,
    superfluid_ground_state,
)

__version__ = "0.1.0"
