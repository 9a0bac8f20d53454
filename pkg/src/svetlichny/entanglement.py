"""Concurrences and the 3-tangle for 3-qubit pure states.

The 3-tangle is computed as C_{1(23)}^2 - C_12^2 - C_13^2 (any qubit may
serve as the pivot; the value is permutation invariant).  Note that for
maximal-slice states the qubit-1/2 pair concurrence is |cos t3|, which is
exactly what makes the tangle come out as sin^2 t3 with C_{1(23)} = 1 and
C_13 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qalg import SIGMA_Y, eigenvalues, kron, partial_trace
from .states import PureState3

_SPIN_FLIP = kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class EntanglementSummary:
    """Pairwise concurrences, one-vs-rest concurrence, and 3-tangle."""

    c12: float
    c13: float
    c23: float
    c1_23: float
    tau: float


def concurrence_pair(state: PureState3, i: int, j: int) -> float:
    """Wootters concurrence of the reduced state of qubits i and j.

    max(0, l1 - l2 - l3 - l4) where l1 >= ... >= l4 are the square roots of
    the eigenvalues of rho (sy x sy) rho* (sy x sy).
    """
    if i == j:
        raise ValueError("pair concurrence needs two distinct qubits")
    rho = partial_trace(state.density_matrix(), keep=(i, j))
    rho_tilde = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    vals = eigenvalues(rho @ rho_tilde).real
    # The exact spectrum is nonnegative; clamp rounding noise before sqrt.
    lam = np.sort(np.sqrt(np.maximum(vals, 0.0)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_one_vs_rest(state: PureState3, i: int) -> float:
    """Concurrence between qubit i and the remaining pair: 2*sqrt(det rho_i)."""
    rho = partial_trace(state.density_matrix(), keep=(i,))
    det = float(np.linalg.det(rho).real)
    return 2.0 * math.sqrt(max(det, 0.0))


def three_tangle(state: PureState3, pivot: int = 1) -> float:
    """Residual 3-tangle in [0, 1]; 0 for separable states, 1 for GHZ."""
    if pivot not in (1, 2, 3):
        raise ValueError("pivot must be 1, 2, or 3")
    rest = [q for q in (1, 2, 3) if q != pivot]
    tau = (
        concurrence_one_vs_rest(state, pivot) ** 2
        - concurrence_pair(state, pivot, rest[0]) ** 2
        - concurrence_pair(state, pivot, rest[1]) ** 2
    )
    return float(min(1.0, max(0.0, tau)))


def summary(state: PureState3) -> EntanglementSummary:
    """All five entanglement figures for one state."""
    return EntanglementSummary(
        c12=concurrence_pair(state, 1, 2),
        c13=concurrence_pair(state, 1, 3),
        c23=concurrence_pair(state, 2, 3),
        c1_23=concurrence_one_vs_rest(state, 1),
        tau=three_tangle(state),
    )
