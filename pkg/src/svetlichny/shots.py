"""Finite-shot simulation of local projective measurements.

Samples joint outcomes from the exact Born distribution and estimates the
Svetlichny expectation from eight measured triple correlators; squaring the
estimate and dividing by 32 turns a fixed equatorial measurement set into a
tangle meter for GGHZ states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import SvetlichnySetting
from .maximize import gghz_xy_setting
from .qalg import I2, kron, pauli_projection
from .states import PureState3

# Joint outcomes (s1, s2, s3) in binary order with bit 0 -> +1, bit 1 -> -1.
OUTCOMES = tuple(
    (1 - 2 * (n >> 2 & 1), 1 - 2 * (n >> 1 & 1), 1 - 2 * (n & 1)) for n in range(8)
)

# Signs of the eight correlators in the expansion of S over
# (A|A', B|B', C|C') combinations, in binary order (a b c, a b c', ...).
CORRELATOR_SIGNS = (1, 1, 1, -1, 1, -1, -1, -1)


@dataclass(frozen=True)
class CorrelatorEstimate:
    """Sample mean of a +/-1 outcome product with its binomial standard error."""

    value: float
    shots: int
    std_error: float


@dataclass(frozen=True)
class TauEstimate:
    """Tangle read off a measured Svetlichny expectation as s^2/32."""

    s_estimate: float
    tau_hat: float
    shots_per_setting: int
    seed: int


def _joint_probabilities(state: PureState3, dirs) -> np.ndarray:
    """Born probabilities for the 8 joint outcomes, in OUTCOMES order."""
    obs = [pauli_projection(d) for d in dirs]
    psi = state.amplitudes
    probs = np.empty(8)
    for n, (s1, s2, s3) in enumerate(OUTCOMES):
        proj = kron(kron(0.5 * (I2 + s1 * obs[0]), 0.5 * (I2 + s2 * obs[1])), 0.5 * (I2 + s3 * obs[2]))
        probs[n] = np.vdot(psi, proj @ psi).real
    probs = np.maximum(probs, 0.0)
    return probs / probs.sum()


def sample_outcomes(state: PureState3, dirs, shots: int, seed) -> dict[tuple[int, int, int], int]:
    """Counts of joint +/-1 outcomes for one measurement of each qubit.

    Draws `shots` samples from the exact joint Born distribution by
    inverse-CDF lookup; deterministic for a fixed seed.
    """
    if shots < 1:
        raise ValueError("shots must be at least 1")
    probs = _joint_probabilities(state, dirs)
    rng = np.random.default_rng(seed)
    idx = np.searchsorted(np.cumsum(probs), rng.random(shots), side="right")
    counts = np.bincount(np.minimum(idx, 7), minlength=8)
    return {outcome: int(n) for outcome, n in zip(OUTCOMES, counts)}


def estimate_correlator(counts: dict[tuple[int, int, int], int]) -> CorrelatorEstimate:
    """Mean of the outcome product s1*s2*s3 over recorded counts."""
    total = sum(counts.values())
    if total == 0:
        raise ValueError("counts must record at least one outcome")
    value = sum(n * s1 * s2 * s3 for (s1, s2, s3), n in counts.items()) / total
    std_error = math.sqrt(max(1.0 - value * value, 0.0) / total)
    return CorrelatorEstimate(value=float(value), shots=total, std_error=std_error)


def estimate_svetlichny(state: PureState3, setting: SvetlichnySetting, shots_per_setting: int, seed) -> float:
    """Signed sum of the eight estimated correlators of the S expansion.

    Each (A|A', B|B', C|C') combination is sampled in its own run with a
    seed derived from (seed, combination index), mirroring the independence
    of experimental measurement contexts.
    """
    if shots_per_setting < 1:
        raise ValueError("shots_per_setting must be at least 1")
    firsts = (setting.a, setting.a_prime)
    seconds = (setting.b, setting.b_prime)
    thirds = (setting.c, setting.c_prime)
    total = 0.0
    for n, sign in enumerate(CORRELATOR_SIGNS):
        dirs = (firsts[n >> 2 & 1], seconds[n >> 1 & 1], thirds[n & 1])
        counts = sample_outcomes(state, dirs, shots_per_setting, seed=[seed, n])
        total += sign * estimate_correlator(counts).value
    return total


def estimate_tau_gghz(state: PureState3, shots_per_setting: int, seed: int) -> TauEstimate:
    """Estimate the 3-tangle of a (presumed) GGHZ state from finite shots.

    Measures S at the fixed equatorial setting, where the expectation of a
    GGHZ state is 4*sqrt(2*tau) regardless of its angle, and inverts to
    tau_hat = s^2/32 clamped into [0, 1].
    """
    s = estimate_svetlichny(state, gghz_xy_setting(), shots_per_setting, seed)
    tau_hat = min(1.0, max(0.0, s * s / 32.0))
    return TauEstimate(s_estimate=s, tau_hat=tau_hat, shots_per_setting=shots_per_setting, seed=seed)
