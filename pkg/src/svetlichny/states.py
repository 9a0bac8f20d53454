"""Constructors for the 3-qubit pure-state families under study.

Basis convention: qubit 1 is the most significant bit, so |q1 q2 q3> sits
at amplitude index 4*q1 + 2*q2 + q3 (see qalg).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

_TWO_PI = 2.0 * math.pi


class Family(enum.Enum):
    GGHZ = "gghz"
    MS = "ms"
    THREE_PARAM = "three-param"


@dataclass(frozen=True, eq=False)
class PureState3:
    """Normalized 8-component amplitude vector of a 3-qubit pure state."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 8:
            raise ValueError(f"expected 8 amplitudes, got {amps.size}")
        if abs(np.linalg.norm(amps) - 1.0) > 1e-12:
            raise ValueError("amplitudes must have unit norm")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class FamilyParams:
    """Family label plus the three construction angles (unused ones stay 0).

    Angles are reduced modulo 2*pi; every family is 2*pi-periodic in each
    of its angles.
    """

    family: Family
    theta1: float = 0.0
    theta2: float = 0.0
    theta3: float = 0.0

    def __post_init__(self):
        for name in ("theta1", "theta2", "theta3"):
            object.__setattr__(self, name, getattr(self, name) % _TWO_PI)


def gghz(theta1: float) -> PureState3:
    """Generalized GHZ state cos(t1)|000> + sin(t1)|111>."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = math.cos(theta1)
    amps[7] = math.sin(theta1)
    return PureState3(amps)


def maximal_slice(theta3: float) -> PureState3:
    """Maximal slice state (|000> + cos(t3)|110> + sin(t3)|111>) / sqrt(2)."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0
    amps[6] = math.cos(theta3)
    amps[7] = math.sin(theta3)
    return PureState3(amps / math.sqrt(2.0))


def three_param(theta1: float, theta2: float, theta3: float) -> PureState3:
    """cos(t1)|000> + sin(t1)|1>(cos(t2)|0> + sin(t2)|1>)(cos(t3)|0> + sin(t3)|1>).

    Reduces to gghz(t1) at t2 = t3 = pi/2 and to maximal_slice(t3) at
    t1 = pi/4, t2 = pi/2.
    """
    q2 = np.array([math.cos(theta2), math.sin(theta2)])
    q3 = np.array([math.cos(theta3), math.sin(theta3)])
    amps = np.zeros(8, dtype=complex)
    amps[0] = math.cos(theta1)
    amps[4:] = math.sin(theta1) * np.kron(q2, q3)
    return PureState3(amps)


_BIT = {1: 2, 2: 1, 3: 0}  # qubit label -> bit position in the basis index


def swap_qubits(state: PureState3, i: int, j: int) -> PureState3:
    """Exchange qubits i and j by permuting the basis indices."""
    if i not in (1, 2, 3) or j not in (1, 2, 3) or i == j:
        raise ValueError("qubit indices must be distinct members of {1, 2, 3}")
    bi, bj = _BIT[i], _BIT[j]
    perm = np.empty(8, dtype=int)
    for idx in range(8):
        u, v = (idx >> bi) & 1, (idx >> bj) & 1
        perm[idx] = (idx & ~(1 << bi) & ~(1 << bj)) | (v << bi) | (u << bj)
    return PureState3(state.amplitudes[perm])


def from_amplitudes(raw) -> PureState3:
    """Normalized state from 8 raw complex amplitudes."""
    amps = np.asarray(raw, dtype=complex).reshape(-1)
    if amps.size != 8:
        raise ValueError(f"expected 8 amplitudes, got {amps.size}")
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ValueError("amplitudes must not all be zero")
    return PureState3(amps / norm)


def make_state(params: FamilyParams) -> PureState3:
    if params.family is Family.GGHZ:
        return gghz(params.theta1)
    if params.family is Family.MS:
        return maximal_slice(params.theta3)
    return three_param(params.theta1, params.theta2, params.theta3)


def states_equal(a: PureState3, b: PureState3, atol: float = 1e-12) -> bool:
    """State equality up to a global phase: |<a|b>| = 1 within atol."""
    return abs(abs(np.vdot(a.amplitudes, b.amplitudes)) - 1.0) <= atol
