"""Quasi-momentum modes of the three-site ring and their N-particle lift.

The single-particle mode change is the unitary 3x3 discrete Fourier matrix
``F``: row k (mode) and column j (site) carry (1/sqrt(3)) exp(i 2 pi k j / 3).
Row 0 is the zero-momentum mode alpha; rows 1 and 2 are the flow modes beta
and gamma with angular momentum +hbar and -hbar around the ring.  The ring's
periodic boundary makes these three modes a complete basis: shifting the
momentum label by three leaves the mode unchanged.

For N particles the mode change acts on the symmetric Fock space as the
N-th symmetric tensor power of F.  The lift is built by recursion over
particle-number sectors (one creation operator per step; see the kernels
module), every intermediate being a normalized state, so it stays unitary
to machine precision.  The resulting dense matrix maps site amplitudes to
momentum amplitudes; lifts compose the way the 3x3 matrices do, which the
test suite checks rather than assumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .basis import dimension, enumerate_basis, multinomial_amplitudes
from .state import Representation, StateVector

__all__ = [
    "dft_mode_matrix",
    "FockLift",
    "lift_to_fock",
    "dft_lift",
    "extremal_columns",
    "extremal_mode_probabilities",
    "momentum_distribution",
]

# ranks of the three extremal occupations (n,0,0), (0,n,0), (0,0,n)
def _extremal_ranks(n: int) -> tuple[int, int, int]:
    d = dimension(n)
    return 0, d - n - 1, d - 1


@lru_cache(maxsize=None)
def dft_mode_matrix() -> np.ndarray:
    """The 3x3 site-to-mode Fourier matrix, mode rows (alpha, beta, gamma)."""
    k = np.arange(3).reshape(3, 1)
    j = np.arange(3).reshape(1, 3)
    f = np.exp(2j * np.pi * k * j / 3.0) / np.sqrt(3.0)
    f.setflags(write=False)
    return f


@dataclass(frozen=True)
class FockLift:
    """Dense N-particle unitary induced by a 3x3 mode matrix.

    ``matrix`` maps site-representation amplitudes to momentum-representation
    amplitudes over the canonical basis.
    """

    n: int
    matrix: np.ndarray = field(repr=False)

    def to_momentum(self, s: StateVector) -> StateVector:
        if s.rep is not Representation.SITE:
            raise ValueError("to_momentum expects a site-representation state")
        return StateVector(s.n, Representation.MOMENTUM, self.matrix @ s.amps)

    def to_site(self, s: StateVector) -> StateVector:
        if s.rep is not Representation.MOMENTUM:
            raise ValueError("to_site expects a momentum-representation state")
        return StateVector(s.n, Representation.SITE, self.matrix.conj().T @ s.amps)


def lift_to_fock(f: np.ndarray, n: int) -> FockLift:
    """Lift a unitary 3x3 mode matrix to the ``n``-particle Fock space."""
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (3, 3):
        raise ValueError(f"mode matrix must be 3x3, got shape {f.shape}")
    defect = np.max(np.abs(f @ f.conj().T - np.eye(3)))
    if defect > 1e-12:
        raise ValueError(f"mode matrix is not unitary (defect {defect:.3e})")
    # columns of the mode Fock kets in the site basis; the lift is their adjoint
    columns = _kernels.lift_columns(f.conj(), n)
    matrix = columns.conj().T
    matrix.setflags(write=False)
    return FockLift(n, matrix)


@lru_cache(maxsize=None)
def dft_lift(n: int) -> FockLift:
    """Cached lift of the Fourier mode matrix."""
    return lift_to_fock(dft_mode_matrix(), n)


@lru_cache(maxsize=None)
def extremal_columns(n: int) -> np.ndarray:
    """Site-basis vectors of the three n-fold mode occupations, as columns.

    Column k is the ket with every particle in mode k.  Its site amplitudes
    have the closed form sqrt(n!/(p! q! r!)) prod_j conj(F[k, j])^(n_j),
    so no full lift is needed.
    """
    occ = enumerate_basis(n)
    weights = multinomial_amplitudes(n) * 3.0 ** (0.5 * n)
    fc = dft_mode_matrix().conj()
    cols = np.empty((dimension(n), 3), dtype=np.complex128)
    for k in range(3):
        cols[:, k] = (
            weights
            * fc[k, 0] ** occ[:, 0]
            * fc[k, 1] ** occ[:, 1]
            * fc[k, 2] ** occ[:, 2]
        )
    cols.setflags(write=False)
    return cols


def extremal_mode_probabilities(s: StateVector) -> tuple[float, float, float]:
    """Probabilities of finding every particle in mode alpha, beta or gamma.

    For a site-representation state this takes three overlaps against the
    closed-form extremal kets, O(dimension) each; in the momentum
    representation the probabilities are read off directly.
    """
    if s.rep is Representation.MOMENTUM:
        probs = s.probabilities()
        ia, ib, ig = _extremal_ranks(s.n)
        return float(probs[ia]), float(probs[ib]), float(probs[ig])
    amps = extremal_columns(s.n).conj().T @ s.amps
    pa, pb, pg = (float(abs(a)) ** 2 for a in amps)
    return pa, pb, pg


def momentum_distribution(s: StateVector) -> np.ndarray:
    """Full mode-occupation distribution |<m|s>|^2 over the canonical basis."""
    if s.rep is Representation.MOMENTUM:
        return s.probabilities()
    return dft_lift(s.n).to_momentum(s).probabilities()
