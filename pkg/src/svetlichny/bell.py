"""Svetlichny and CHSH observables built from measurement directions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qalg import Direction, kron, pauli_projection
from .states import PureState3

__all__ = [
    "Direction",
    "SvetlichnySetting",
    "DPrimeSetting",
    "svetlichny_operator",
    "chsh_operator",
    "expectation",
    "bb_from_dd",
]


@dataclass(frozen=True)
class SvetlichnySetting:
    """Six measurement directions (a, a', b, b', c, c'), two per qubit."""

    a: Direction
    a_prime: Direction
    b: Direction
    b_prime: Direction
    c: Direction
    c_prime: Direction


@dataclass(frozen=True)
class DPrimeSetting:
    """Orthogonal unit vectors d, d' plus a mixing angle theta.

    Encodes the qubit-2 directions through b + b' = 2 d cos(theta) and
    b - b' = 2 d' sin(theta); orthogonality is what keeps b and b' unit.
    """

    d: Direction
    d_prime: Direction
    theta: float

    def __post_init__(self):
        dot = float(np.dot(self.d.unit_vector(), self.d_prime.unit_vector()))
        if abs(dot) > 1e-10:
            raise ValueError(f"d and d_prime must be orthogonal (d.d' = {dot:.3e})")


def svetlichny_operator(setting: SvetlichnySetting) -> np.ndarray:
    """8x8 Hermitian S = A(BK + B'K') + A'(BK' - B'K) with K = C + C', K' = C - C'.

    Expanded, the eight triple products carry signs
    +ABC +ABC' +AB'C -AB'C' +A'BC -A'BC' -A'B'C -A'B'C'.
    """
    a = pauli_projection(setting.a)
    a_p = pauli_projection(setting.a_prime)
    b = pauli_projection(setting.b)
    b_p = pauli_projection(setting.b_prime)
    c = pauli_projection(setting.c)
    c_p = pauli_projection(setting.c_prime)
    k = c + c_p
    k_p = c - c_p
    return kron(a, kron(b, k) + kron(b_p, k_p)) + kron(a_p, kron(b, k_p) - kron(b_p, k))


def chsh_operator(a: Direction, a_prime: Direction, b: Direction, b_prime: Direction) -> np.ndarray:
    """4x4 Hermitian AB + AB' + A'B - A'B'."""
    am = pauli_projection(a)
    apm = pauli_projection(a_prime)
    bm = pauli_projection(b)
    bpm = pauli_projection(b_prime)
    return kron(am, bm + bpm) + kron(apm, bm - bpm)


def expectation(state, observable: np.ndarray) -> float:
    """<psi|M|psi> for a Hermitian observable; the imaginary residue is dropped.

    Accepts a PureState3 or a raw amplitude vector (e.g. a 4-component
    2-qubit state for the CHSH path).
    """
    psi = state.amplitudes if isinstance(state, PureState3) else np.asarray(state, dtype=complex).reshape(-1)
    obs = np.asarray(observable, dtype=complex)
    if obs.shape != (psi.size, psi.size):
        raise ValueError(f"observable shape {obs.shape} does not match state dimension {psi.size}")
    return float(np.vdot(psi, obs @ psi).real)


def bb_from_dd(dp: DPrimeSetting) -> tuple[Direction, Direction]:
    """b = d cos(theta) + d' sin(theta) and b' = d cos(theta) - d' sin(theta)."""
    dv = dp.d.unit_vector()
    dpv = dp.d_prime.unit_vector()
    ct, st = math.cos(dp.theta), math.sin(dp.theta)
    return Direction.from_vector(dv * ct + dpv * st), Direction.from_vector(dv * ct - dpv * st)
