"""Truncated matrix form of the three-parameter optomechanical Hamiltonian.

H / hbar = omega_c a'a + omega_phi b'b + g a'a (b + b'), represented in the
product number basis |n_a, n_b>.  All matrix elements are real, so the
representation is a real symmetric matrix, block diagonal in the photon
number.  This module is a verification instrument (spectrum-level checks),
not a dynamics engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DIM_CAP = 10_000


@dataclass(frozen=True)
class OmSystem:
    omega_c: float    # rad/s
    omega_phi: float  # rad/s
    g: float          # rad/s

    def __post_init__(self):
        if self.omega_c <= 0 or self.omega_phi <= 0:
            raise ValueError("omega_c and omega_phi must be > 0")
        if not math.isfinite(self.g):
            raise ValueError("g must be finite")


@dataclass(frozen=True)
class TruncatedHamiltonian:
    n_a_max: int
    n_b_max: int
    matrix: np.ndarray  # H / hbar, shape ((n_a_max+1)(n_b_max+1),)^2

    def photon_block(self, n_a: int) -> np.ndarray:
        """The n_a-photon diagonal block."""
        nb = self.n_b_max + 1
        sl = slice(n_a * nb, (n_a + 1) * nb)
        return self.matrix[sl, sl]


def assemble(coupling_result, cavity) -> OmSystem:
    """Package the coupling pipeline output as Hamiltonian parameters."""
    return OmSystem(omega_c=cavity.omega_c0, omega_phi=cavity.omega_phi, g=coupling_result.g)


def ladder(n_max: int) -> np.ndarray:
    """Phonon annihilation operator truncated at n_max quanta."""
    b = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max):
        b[n, n + 1] = math.sqrt(n + 1.0)
    return b


def build_matrix(sys: OmSystem, n_a_max: int, n_b_max: int) -> TruncatedHamiltonian:
    """Dense H / hbar in the |n_a, n_b> basis.

    Diagonal omega_c n_a + omega_phi n_b; the coupling links |n_a, n_b> to
    |n_a, n_b + 1> with element g n_a sqrt(n_b + 1).
    """
    if n_a_max < 1 or n_b_max < 1:
        raise ValueError("cutoffs must be >= 1")
    dim = (n_a_max + 1) * (n_b_max + 1)
    if dim > DIM_CAP:
        raise ValueError(f"product dimension {dim} exceeds cap {DIM_CAP}")
    h = np.zeros((dim, dim))
    nb = n_b_max + 1
    for na in range(n_a_max + 1):
        for m in range(nb):
            i = na * nb + m
            h[i, i] = sys.omega_c * na + sys.omega_phi * m
            if m + 1 < nb:
                elem = sys.g * na * math.sqrt(m + 1.0)
                h[i, i + 1] = elem
                h[i + 1, i] = elem
    return TruncatedHamiltonian(n_a_max=n_a_max, n_b_max=n_b_max, matrix=h)


def polaron_shift(sys: OmSystem, n_a: int, n_b_max: int = 200):
    """(numeric, analytic) ground-state shift of the n_a-photon block.

    Displacing the phonon mode diagonalizes the block exactly, giving the
    shift -g^2 n_a^2 / omega_phi below omega_c n_a.  The numeric value comes
    from the truncated eigen-solve of the phonon part alone, which keeps the
    tiny shift clear of the huge omega_c n_a offset.
    """
    m = np.arange(n_b_max + 1, dtype=float)
    block = np.diag(sys.omega_phi * m)
    off = sys.g * n_a * np.sqrt(m[1:])
    block[np.arange(n_b_max), np.arange(1, n_b_max + 1)] = off
    block[np.arange(1, n_b_max + 1), np.arange(n_b_max)] = off
    numeric = float(np.linalg.eigvalsh(block)[0])
    analytic = -sys.g**2 * n_a**2 / sys.omega_phi
    return numeric, analytic
