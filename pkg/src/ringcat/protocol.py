"""The cat-creation protocol and its figures of merit.

One protocol run: prepare the even condensate with the barriers low, raise
the barriers suddenly, hold under the pairwise interaction for a
dimensionless phase theta = U*t, lower the barriers again, and read out the
probabilities of finding every particle in a single quasi-momentum mode.
All observables depend on theta only, never on U and t separately.

At theta = 2*pi/3 and particle numbers divisible by three the final state
is an even three-branch superposition of the flow modes; the geometric-mean
measure ``cattiness`` equals one exactly there and drops to zero when any
branch is empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from . import _kernels
from .basis import multinomial_amplitudes, pair_counts
from .evolution import evolve_interaction_phase
from .modes import extremal_columns, extremal_mode_probabilities
from .state import StateVector, superfluid_ground_state

__all__ = [
    "CAT_HOLD_PHASE",
    "ProtocolResult",
    "BracketError",
    "run_protocol",
    "sweep_protocol_probabilities",
    "analytic_P3",
    "cattiness",
    "cattiness_sweep",
    "timing_tolerance",
    "calibrate_u",
]

CAT_HOLD_PHASE = 2.0 * math.pi / 3.0

# Closed forms for the three-particle mode-condensate probabilities as
# cosine series in theta: P = (c0 + c1 cos t + c2 cos 2t + c3 cos 3t) / 81.
# The beta constant term is pinned to 14 by normalization (P_beta(0) = 0)
# and confirmed against the brute-force simulation; see the README notes.
_P3_ALPHA = (41.0, 24.0, 12.0, 4.0)
_P3_BETA = (14.0, -12.0, -6.0, 4.0)


class BracketError(ValueError):
    """A scan bracket does not contain an interior peak."""


@dataclass(frozen=True)
class ProtocolResult:
    """Outcome of one protocol run at hold phase ``theta``."""

    n: int
    theta: float
    p_alpha: float
    p_beta: float
    p_gamma: float
    cattiness: float
    state: StateVector = field(repr=False)

    def __post_init__(self):
        total = self.p_alpha + self.p_beta + self.p_gamma
        if min(self.p_alpha, self.p_beta, self.p_gamma) < 0 or total > 1 + 1e-10:
            raise ValueError(f"inconsistent probabilities {self}")
        expected = cattiness(self.p_alpha, self.p_beta, self.p_gamma)
        if abs(self.cattiness - expected) > 1e-12:
            raise ValueError("stored cattiness disagrees with the probabilities")


def run_protocol(n: int, theta: float = CAT_HOLD_PHASE) -> ProtocolResult:
    """Run the quench-hold-quench sequence for ``n`` particles."""
    if n < 1:
        raise ValueError(f"need at least one particle, got {n}")
    final = evolve_interaction_phase(superfluid_ground_state(n), theta)
    pa, pb, pg = extremal_mode_probabilities(final)
    return ProtocolResult(n, theta, pa, pb, pg, cattiness(pa, pb, pg), final)


@lru_cache(maxsize=None)
def _sweep_inputs(n: int):
    ground = multinomial_amplitudes(n)
    counts = pair_counts(n)
    wconj = np.ascontiguousarray(extremal_columns(n).conj())
    return ground, counts, wconj


def sweep_protocol_probabilities(n: int, thetas) -> np.ndarray:
    """Mode-condensate probabilities (len(thetas), 3) over a hold-phase grid.

    Each grid point is an independent pure computation, so callers may fan
    points out to workers freely; this vectorized path exists because the
    tolerance and calibration searches evaluate thousands of them.
    """
    if n < 1:
        raise ValueError(f"need at least one particle, got {n}")
    ground, counts, wconj = _sweep_inputs(n)
    return _kernels.protocol_sweep(ground, counts, wconj, np.asarray(thetas, dtype=np.float64))


def analytic_P3(theta) -> tuple:
    """Closed-form (P_alpha, P_beta) for three particles; accepts arrays.

    P_gamma equals P_beta.  The cosine series is exact for the three-atom
    protocol and is used as an independent oracle for the simulator.
    """
    theta = np.asarray(theta, dtype=np.float64)
    pa = np.zeros_like(theta)
    pb = np.zeros_like(theta)
    for k in range(4):
        pa = pa + _P3_ALPHA[k] * np.cos(k * theta)
        pb = pb + _P3_BETA[k] * np.cos(k * theta)
    if theta.ndim == 0:
        return float(pa) / 81.0, float(pb) / 81.0
    return pa / 81.0, pb / 81.0


def cattiness(p_alpha: float, p_beta: float, p_gamma: float) -> float:
    """Geometric-mean cat quality 3 (P_a P_b P_g)^(1/3), in [0, 1].

    Equals one exactly when all three probabilities are 1/3 (the largest
    value compatible with a unit total) and zero when any branch is empty.
    """
    probs = (p_alpha, p_beta, p_gamma)
    for p in probs:
        if not -1e-12 <= p <= 1 + 1e-12:
            raise ValueError(f"probabilities must lie in [0, 1], got {probs}")
    product = max(p_alpha, 0.0) * max(p_beta, 0.0) * max(p_gamma, 0.0)
    return 3.0 * float(np.cbrt(product))


def cattiness_sweep(n_values, theta: float = CAT_HOLD_PHASE) -> list[ProtocolResult]:
    """Protocol results for each particle number, at a common hold phase."""
    return [run_protocol(int(n), theta) for n in n_values]


def _cattiness_on_grid(n: int, thetas) -> np.ndarray:
    probs = sweep_protocol_probabilities(n, thetas)
    return 3.0 * np.cbrt(np.prod(probs, axis=1))


def timing_tolerance(
    n: int,
    c_target: float = 0.9,
    grid_step: float | None = None,
    delta_max: float = 1.5,
) -> float:
    """Largest timing error delta keeping cattiness at or above ``c_target``.

    The hold phase is theta = (1 + delta) * 2*pi/3 and the returned value is
    the first downward crossing of the cattiness curve, located by a coarse
    grid scan (step at most 1e-4/n) and refined by bisection to 1e-9.  A
    plain bisection from delta = 0 would risk landing on a revival lobe of
    the oscillatory curve instead of the first crossing.
    """
    if n < 1 or n % 3 != 0:
        raise ValueError(f"particle number must be a positive multiple of 3, got {n}")
    if not 0.0 < c_target < 1.0:
        raise ValueError(f"cattiness target must lie in (0, 1), got {c_target}")
    step = grid_step if grid_step is not None else 1e-4 / n
    if step <= 0 or step > 1e-4 / n:
        raise ValueError(f"grid step must lie in (0, 1e-4/n], got {step}")

    def c_of_delta(deltas):
        return _cattiness_on_grid(n, (1.0 + np.asarray(deltas)) * CAT_HOLD_PHASE)

    if c_of_delta(np.array([0.0]))[0] < c_target:
        raise ValueError(f"target {c_target} unreachable: cattiness below it at delta = 0")

    # block scan until the curve first dips below the target
    lo = 0.0
    block = 4096
    crossing = None
    start = 0.0
    while start < delta_max and crossing is None:
        deltas = start + step * np.arange(1, block + 1)
        deltas = deltas[deltas <= delta_max]
        if deltas.size == 0:
            break
        values = c_of_delta(deltas)
        below = np.nonzero(values < c_target)[0]
        if below.size:
            k = int(below[0])
            lo = deltas[k - 1] if k > 0 else start
            crossing = deltas[k]
        else:
            start = deltas[-1]
            lo = start
    if crossing is None:
        raise ValueError(f"no crossing below {c_target} found for delta <= {delta_max}")

    hi = float(crossing)
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if c_of_delta(np.array([mid]))[0] >= c_target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def calibrate_u(n: int, theta_samples) -> float:
    """Locate the cat resonance: the hold phase maximizing cattiness.

    ``theta_samples`` must bracket the peak near 2*pi/3.  The best grid
    sample seeds a golden-section refinement; running the protocol for a
    range of hold times and reading the resonance off this way pins the
    interaction strength, since the peak sharpens like 1/n.
    """
    thetas = np.sort(np.asarray(theta_samples, dtype=np.float64))
    if thetas.size < 3:
        raise BracketError("need at least three samples to bracket a peak")
    values = _cattiness_on_grid(n, thetas)
    best = int(np.argmax(values))
    if best == 0 or best == thetas.size - 1:
        raise BracketError("scan maximum sits on the bracket edge; no interior peak")
    result = minimize_scalar(
        lambda t: -_cattiness_on_grid(n, np.array([t]))[0],
        bracket=(thetas[best - 1], thetas[best], thetas[best + 1]),
        method="golden",
        options={"xtol": 1e-12},
    )
    return float(result.x)
