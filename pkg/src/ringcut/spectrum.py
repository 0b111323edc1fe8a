"""Diagonalization, Dirac-sea occupation and out-of-band localized modes.

The ground state of the quadratic fermion problem fills every mode with
eigenvalue below zero.  Eigenvalues within EPS_ZERO of zero are left
empty and flagged: silently choosing an occupation for an exact zero mode
would corrupt comparisons, so the flag is propagated to every derived
quantity.

For the parity-exact ring the Jordan-Wigner wrap bond couples to the
fermion parity: the sector with wrap hopping equal to the bulk hopping
(wrap sign +1) describes states with an odd number of fermions, the
flipped sector even ones.  The physical ground state is the lower-energy
parity-consistent filled sea; the rule's orientation is pinned by the
many-body oracle and frozen in PARITY_RULE.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import Boundary, ModelParams, SingleParticleHamiltonian, build_hamiltonian

__all__ = [
    "EPS_ZERO",
    "EPS_BAND",
    "Spectrum",
    "Occupation",
    "diagonalize",
    "occupation",
    "bound_state_energies",
    "ground_state_spectrum",
]

EPS_ZERO = 1e-9   # eigenvalues within this of 0 are ambiguous zero modes
EPS_BAND = 1e-6   # margin for classifying out-of-band (bound) states

# wrap sign -> required fermion-number parity of the filled sea
PARITY_RULE = {+1.0: 1, -1.0: 0}


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns)."""

    params: ModelParams
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    wrap_sign: float = +1.0

    @property
    def band_interval(self):
        h = self.params.field
        return (-2.0 * h - 2.0, -2.0 * h + 2.0)


@dataclass(frozen=True)
class Occupation:
    """Boolean mask of occupied (negative-energy) modes."""

    occupied: np.ndarray
    zero_mode_flag: bool

    @property
    def count(self) -> int:
        return int(self.occupied.sum())


def _eigh_checked(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lam, V = np.linalg.eigh(A)
    scale = max(np.abs(lam).max(), 1.0)
    resid = np.abs(A @ V - V * lam).max()
    if resid > 1e-10 * scale:
        worst = int(np.abs(A @ V - V * lam).max(axis=0).argmax())
        raise ArithmeticError(
            f"eigensolver residual {resid:.3e} exceeds tolerance at index {worst}"
        )
    return lam, V


def diagonalize(H: SingleParticleHamiltonian, wrap_sign: float = +1.0) -> Spectrum:
    """Spectrum of one sector of the hopping matrix."""
    A = H.matrices[wrap_sign]
    lam, V = _eigh_checked(A)
    return Spectrum(
        params=H.params, eigenvalues=lam, eigenvectors=V, wrap_sign=wrap_sign
    )


def occupation(spec: Spectrum) -> Occupation:
    occ = spec.eigenvalues < -EPS_ZERO
    zero = bool(np.any(np.abs(spec.eigenvalues) <= EPS_ZERO))
    return Occupation(occupied=occ, zero_mode_flag=zero)


def bound_state_energies(spec: Spectrum) -> list[tuple[float, str]]:
    """Eigenvalues strictly outside the band, with their side.

    Returns [(energy, 'below'|'above'), ...]; empty for j <= 1.
    """
    lo, hi = spec.band_interval
    out = []
    for lam in spec.eigenvalues:
        if lam < lo - EPS_BAND:
            out.append((float(lam), "below"))
        elif lam > hi + EPS_BAND:
            out.append((float(lam), "above"))
    return out


@lru_cache(maxsize=8)
def ground_state_spectrum(params: ModelParams) -> tuple[Spectrum, Occupation]:
    """Spectrum and ground-state occupation for the requested boundary.

    For RING_PARITY_EXACT both wrap-sign sectors are diagonalized; the
    filled sea whose fermion parity matches its sector is kept (lower
    energy wins if both qualify).  If a zero mode makes neither sector
    consistent, the lower-energy sea is returned with the flag set.
    """
    H = build_hamiltonian(params)
    if params.boundary is not Boundary.RING_PARITY_EXACT:
        spec = diagonalize(H)
        return spec, occupation(spec)

    candidates = []
    for s in (+1.0, -1.0):
        spec = diagonalize(H, wrap_sign=s)
        occ = occupation(spec)
        energy = float(spec.eigenvalues[occ.occupied].sum())
        consistent = occ.count % 2 == PARITY_RULE[s]
        candidates.append((energy, consistent, spec, occ))
    valid = [c for c in candidates if c[1]]
    if valid:
        energy, _, spec, occ = min(valid, key=lambda c: c[0])
        return spec, occ
    # both seas parity-inconsistent: only possible with zero-mode ambiguity
    energy, _, spec, occ = min(candidates, key=lambda c: c[0])
    return spec, Occupation(occupied=occ.occupied, zero_mode_flag=True)
