"""Fixed-size complex linear algebra for up to three qubits.

Everything operates on plain numpy arrays of dimension 2, 4, or 8.  Qubit 1
is the most significant bit of a basis index, so |q1 q2 q3> sits at index
4*q1 + 2*q2 + q3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Direction:
    """Measurement direction on the Bloch sphere (polar theta, azimuthal phi)."""

    theta: float
    phi: float

    def unit_vector(self) -> np.ndarray:
        """Cartesian unit vector (sin t cos p, sin t sin p, cos t)."""
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    @classmethod
    def canonical(cls, theta: float, phi: float) -> "Direction":
        """Same direction with theta reduced to [0, pi] and phi to [0, 2*pi)."""
        theta = theta % _TWO_PI
        if theta > math.pi:
            theta = _TWO_PI - theta
            phi = phi + math.pi
        return cls(theta, phi % _TWO_PI)

    @classmethod
    def from_vector(cls, v) -> "Direction":
        """Direction of a Cartesian vector (normalized first)."""
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm < 1e-12:
            raise ValueError("cannot take the direction of a zero vector")
        x, y, z = v / norm
        return cls(math.acos(min(1.0, max(-1.0, z))), math.atan2(y, x) % _TWO_PI)


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def is_hermitian(m: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(np.allclose(m, dag(m), rtol=0.0, atol=atol))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, capped at the three-qubit size 8x8."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[0] * b.shape[0] > 8 or a.shape[1] * b.shape[1] > 8:
        raise ValueError("Kronecker product would exceed the supported 8x8 size")
    return np.kron(a, b)


def pauli_projection(n: Direction) -> np.ndarray:
    """Spin projection n.sigma: Hermitian, traceless, eigenvalues +/-1."""
    x, y, z = n.unit_vector()
    return x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix over the kept qubits (labels in {1, 2, 3})."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ValueError(f"partial_trace expects an 8x8 matrix, got shape {rho.shape}")
    kept = sorted(set(keep))
    if not 1 <= len(kept) <= 2 or any(q not in (1, 2, 3) for q in kept):
        raise ValueError("keep must name one or two of qubits {1, 2, 3}")
    # Row axes a, b, c are qubits 1, 2, 3; traced qubits get their column
    # axis identified with the row axis.
    row, col = "abc", "def"
    sub = list(row + col)
    for q in (1, 2, 3):
        if q not in kept:
            sub[3 + q - 1] = row[q - 1]
    out = "".join(row[q - 1] for q in kept) + "".join(col[q - 1] for q in kept)
    reduced = np.einsum("".join(sub) + "->" + out, rho.reshape(2, 2, 2, 2, 2, 2))
    dim = 2 ** len(kept)
    return reduced.reshape(dim, dim)


def eigenvalues(m: np.ndarray) -> np.ndarray:
    """All eigenvalues with algebraic multiplicity, in no particular order."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] > 8:
        raise ValueError("eigenvalues supports square matrices up to 8x8")
    return np.linalg.eigvals(m)
