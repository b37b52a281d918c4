"""Time evolution engines.

The convention is e^{-iHt} throughout (hbar = 1).  Interaction-only holds
are diagonal in the site basis and evolve by exact phases; arbitrary
Hermitian operators evolve through a dense eigendecomposition, which at
this basis size is cheap and keeps the propagation exactly unitary.
Quenches are treated as sudden: the state is unchanged while the
Hamiltonian switches form.
"""

from __future__ import annotations

import numpy as np

from .basis import pair_counts
from .hamiltonian import HermitianOperator
from .state import Representation, StateVector

__all__ = [
    "evolve_interaction_phase",
    "SpectralPropagator",
    "evolve_spectral",
]


def evolve_interaction_phase(s: StateVector, ut: float) -> StateVector:
    """Hold under the pairwise interaction for dimensionless phase ut = U*t.

    The amplitude on occupation (p, q, r) picks up
    e^{-i (ut/2) [p(p-1) + q(q-1) + r(r-1)]}; magnitudes are untouched.
    """
    if s.rep is not Representation.SITE:
        raise ValueError("interaction hold is diagonal in the site representation only")
    phases = np.exp(-0.5j * ut * pair_counts(s.n))
    return StateVector(s.n, s.rep, s.amps * phases)


class SpectralPropagator:
    """Reusable e^{-iHt} engine for one Hermitian operator.

    Diagonal operators evolve by direct phases; anything else gets a dense
    eigendecomposition, computed once and reused for every requested time.
    """

    def __init__(self, op: HermitianOperator):
        self.op = op
        self._diag = None
        if op.is_diagonal:
            diag = op.diagonal()
            if np.max(np.abs(diag.imag), initial=0.0) > 1e-12:
                raise ValueError("diagonal operator has a non-real diagonal; not Hermitian")
            self._diag = diag.real
        self._eig = None

    def _decomposition(self):
        if self._eig is None:
            dense = self.op.to_dense()
            defect = np.max(np.abs(dense - dense.conj().T))
            if defect > 1e-12:
                raise ValueError(f"operator is not Hermitian (defect {defect:.3e})")
            self._eig = np.linalg.eigh(dense)
        return self._eig

    def evolve(self, s: StateVector, t: float) -> StateVector:
        if s.amps.shape[0] != self.op.dim:
            raise ValueError(f"dimension mismatch: state {s.amps.shape[0]}, operator {self.op.dim}")
        if s.rep is not self.op.rep:
            raise ValueError(f"representation mismatch: state {s.rep}, operator {self.op.rep}")
        if self._diag is not None:
            amps = s.amps * np.exp(-1j * t * self._diag)
        else:
            evals, evecs = self._decomposition()
            amps = evecs @ (np.exp(-1j * t * evals) * (evecs.conj().T @ s.amps))
        return StateVector(s.n, s.rep, amps)


def evolve_spectral(s: StateVector, op: HermitianOperator, t: float) -> StateVector:
    """One-shot e^{-iHt} evolution of ``s`` under ``op``."""
    return SpectralPropagator(op).evolve(s, t)
