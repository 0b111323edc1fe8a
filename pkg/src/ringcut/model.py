"""Lattice conventions and single-particle hopping matrices.

A ring of 2M spin-1/2 sites carries a single weak/strong bond of strength
j (all other bonds have unit strength) and a uniform field h.  Sites are
labelled by half-integers n = -M+1/2, ..., M-1/2; the defect bond sits
between n = -1/2 and n = +1/2.  After the Jordan-Wigner map the problem
is quadratic in spinless fermions, with hopping matrix

    A[p, p+1] = -1   (off-defect bonds),   A[M-1, M] = -j  (defect),
    A[0, 2M-1] = -wrap_sign                (ring boundaries only),
    A[p, p]    = -2h.

With this sign convention the uniform-ring dispersion is
eps(k) = -2 cos k - 2h and a field h >= 1 completely fills the band
(fully polarized spins, <sigma^z> = +1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Boundary",
    "ModelParams",
    "SingleParticleHamiltonian",
    "build_hamiltonian",
    "site_to_pos",
    "pos_to_site",
]


class Boundary(enum.Enum):
    """Boundary treatment of the lattice."""

    RING_NAIVE = "ring_naive"
    RING_PARITY_EXACT = "ring_parity_exact"
    OPEN_SEGMENT = "open_segment"


@dataclass(frozen=True)
class ModelParams:
    """Full problem description.

    half_length
        M; the lattice has 2M sites.
    defect_strength
        j >= 0, in units of the homogeneous coupling (J = 1).  Ignored for
        OPEN_SEGMENT, where the lattice is a uniform open chain of 2M sites.
    field
        h, in units of J.
    boundary
        RING_NAIVE keeps the wrap hopping at -1 regardless of fermion
        parity (exact only as M -> infinity).  RING_PARITY_EXACT carries
        both wrap-sign sectors and selects the parity-consistent one.
    """

    half_length: int
    defect_strength: float
    field: float
    boundary: Boundary = Boundary.RING_NAIVE

    def __post_init__(self):
        floor = 1 if self.boundary is Boundary.OPEN_SEGMENT else 2
        if self.half_length < floor:
            raise ValueError(
                f"half_length must be >= {floor} for {self.boundary.value}, "
                f"got {self.half_length}"
            )
        if self.defect_strength < 0:
            raise ValueError(
                f"defect_strength must be >= 0, got {self.defect_strength}"
            )

    @property
    def n_sites(self) -> int:
        return 2 * self.half_length


def site_to_pos(n, M: int) -> int:
    """Array position of half-integer site label n (bijection p = n + M - 1/2)."""
    p = Fraction(n) + M - Fraction(1, 2)
    if p.denominator != 1:
        raise ValueError(f"site label {n} is not half-integer")
    p = int(p)
    if not 0 <= p < 2 * M:
        raise ValueError(f"site label {n} outside lattice of 2M={2 * M} sites")
    return p


def pos_to_site(p: int, M: int) -> float:
    """Half-integer site label of array position p."""
    if not 0 <= p < 2 * M:
        raise ValueError(f"position {p} outside lattice of 2M={2 * M} sites")
    return p - M + 0.5


@dataclass(frozen=True)
class SingleParticleHamiltonian:
    """Real symmetric hopping matrix (or the two wrap-sign sector matrices).

    ``matrices`` maps wrap sign (+1, -1) to the corresponding 2M x 2M
    matrix; open chains and naive rings carry the single entry +1.
    """

    params: ModelParams
    matrices: dict

    @property
    def matrix(self) -> np.ndarray:
        """The unique matrix, for boundaries with a single sector."""
        if len(self.matrices) != 1:
            raise ValueError(
                "parity-exact ring has two sector matrices; pick one explicitly"
            )
        return next(iter(self.matrices.values()))


def _hopping_matrix(params: ModelParams, wrap_sign: float) -> np.ndarray:
    M = params.half_length
    N = 2 * M
    A = np.zeros((N, N))
    off = -np.ones(N - 1)
    if params.boundary is not Boundary.OPEN_SEGMENT:
        off[M - 1] = -params.defect_strength
    A[np.arange(N - 1), np.arange(1, N)] = off
    A[np.arange(1, N), np.arange(N - 1)] = off
    if params.boundary is not Boundary.OPEN_SEGMENT:
        A[0, N - 1] = A[N - 1, 0] = -wrap_sign
    np.fill_diagonal(A, -2.0 * params.field)
    return A


def build_hamiltonian(params: ModelParams) -> SingleParticleHamiltonian:
    """Hopping matrix for the given lattice.

    RING_PARITY_EXACT returns both wrap-sign candidates keyed by the sign
    of the wrap hopping entry (A[0, 2M-1] = -wrap_sign); the physically
    consistent sector is selected downstream from the fermion parity of
    each filled Dirac sea.
    """
    if params.boundary is Boundary.RING_PARITY_EXACT:
        mats = {s: _hopping_matrix(params, s) for s in (+1.0, -1.0)}
    else:
        mats = {+1.0: _hopping_matrix(params, +1.0)}
    return SingleParticleHamiltonian(params=params, matrices=mats)


def open_chain_matrix(n_sites: int, h: float) -> np.ndarray:
    """Uniform open chain of arbitrary length (helper for segment states)."""
    A = np.zeros((n_sites, n_sites))
    A[np.arange(n_sites - 1), np.arange(1, n_sites)] = -1.0
    A[np.arange(1, n_sites), np.arange(n_sites - 1)] = -1.0
    np.fill_diagonal(A, -2.0 * h)
    return A
