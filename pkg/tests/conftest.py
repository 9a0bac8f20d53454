"""Shared random-object helpers for the test suite."""

from __future__ import annotations

import math

import numpy as np

from svetlichny import Direction, PureState3, from_amplitudes


def haar_state(rng: np.random.Generator) -> PureState3:
    """Haar-random 3-qubit pure state."""
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    return from_amplitudes(v)


def random_direction(rng: np.random.Generator) -> Direction:
    return Direction(float(rng.uniform(0.0, math.pi)), float(rng.uniform(0.0, 2.0 * math.pi)))


def random_unitary2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2x2 unitary via QR with phase fixing."""
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
