"""Ground-state contractions and spin-spin correlators via Wick's theorem.

Everything observable derives from the two-point contraction matrix
C[n][m] = <c^dag_n c_m>, the projector onto the occupied single-particle
subspace.  Transverse correlators use the determinant construction with
the operator pair A_n = c^dag_n + c_n, B_n = c^dag_n - c_n, for which
<B_l A_r> = 2 C[l][r] - delta_lr.  The sign convention of that
contraction is frozen by matching the many-body oracle on the two-site
chain (see tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, site_to_pos
from .spectrum import Occupation, Spectrum, ground_state_spectrum

__all__ = [
    "CorrelationMatrix",
    "correlation_matrix",
    "ground_correlation_matrix",
    "magnetization",
    "zz_correlator",
    "xx_correlator",
    "yy_correlator",
    "bond_profile",
]


@dataclass(frozen=True)
class CorrelationMatrix:
    """<c^dag_n c_m> over all site pairs, plus the zero-mode flag.

    `particle_modes` / `hole_modes` keep the occupied and empty
    eigenvector columns when the matrix comes from a finite spectrum.
    They allow 2x2 minors of C and 1-C to be evaluated as Gram
    determinants of amplitude vectors, which stays relatively accurate
    where the algebraic minors cancel to the noise floor (saturated
    pairs).  Thermodynamic-limit windows leave them as None.
    """

    params: ModelParams
    C: np.ndarray
    zero_mode_flag: bool
    particle_modes: np.ndarray | None = None
    hole_modes: np.ndarray | None = None

    def entry(self, n, m) -> float:
        M = self.params.half_length
        return float(self.C[site_to_pos(n, M), site_to_pos(m, M)])


def correlation_matrix(spec: Spectrum, occ: Occupation) -> CorrelationMatrix:
    W = spec.eigenvectors[:, occ.occupied]
    C = W @ W.T
    C = 0.5 * (C + C.T)
    return CorrelationMatrix(
        params=spec.params,
        C=C,
        zero_mode_flag=occ.zero_mode_flag,
        particle_modes=W,
        hole_modes=spec.eigenvectors[:, ~occ.occupied],
    )


def ground_correlation_matrix(params: ModelParams) -> CorrelationMatrix:
    """Convenience: contraction matrix of the ground state for params."""
    spec, occ = ground_state_spectrum(params)
    return correlation_matrix(spec, occ)


def _gram_minor(modes: np.ndarray, p: int, q: int) -> float:
    """Gram determinant |x|^2 |y|^2 - (x.y)^2 of two amplitude rows.

    Evaluated as |x|^2 |y - proj_x y|^2 (project onto the longer row),
    a sum of squares: exact zero when the rows are parallel or either
    vanishes, instead of cancelling two O(1) products.
    """
    x, y = modes[p], modes[q]
    nx2, ny2 = float(x @ x), float(y @ y)
    if ny2 > nx2:
        x, nx2 = y, ny2
        y = modes[p]
    if nx2 == 0.0:
        return 0.0
    r = y - (float(x @ y) / nx2) * x
    return nx2 * float(r @ r)


def pair_minors(C: CorrelationMatrix, n, m) -> tuple[float, float]:
    """Stable 2x2 minors of 1-C and C on the site pair (n, m).

    Returns (h_minor, p_minor) = ((1-a)(1-b) - c^2, a b - c^2) with
    a = C_nn, b = C_mm, c = C_nm.  These are the outer populations of
    the pair's reduced state and the radical factors of the closed-form
    concurrence.  When mode amplitudes are available they are computed
    as Gram determinants of the hole / particle amplitude rows, which
    remains relatively accurate near saturation where the algebraic
    difference cancels to the noise floor.
    """
    M = C.params.half_length
    p, q = site_to_pos(n, M), site_to_pos(m, M)
    if C.particle_modes is not None and C.hole_modes is not None:
        return _gram_minor(C.hole_modes, p, q), _gram_minor(C.particle_modes, p, q)
    a, b, c = C.entry(n, n), C.entry(m, m), C.entry(n, m)
    return (1.0 - a) * (1.0 - b) - c * c, a * b - c * c


def magnetization(C: CorrelationMatrix, n) -> float:
    """<sigma^z_n> = 2 C[n][n] - 1."""
    return 2.0 * C.entry(n, n) - 1.0


def zz_correlator(C: CorrelationMatrix, n, m) -> float:
    """<sigma^z_n sigma^z_m> for n != m."""
    if n == m:
        raise ValueError("zz correlator of a site with itself is identically 1")
    return magnetization(C, n) * magnetization(C, m) - 4.0 * C.entry(n, m) ** 2


def _string_block(C: CorrelationMatrix, p: int, q: int) -> np.ndarray:
    """Matrix G[r][s] = <B_{p+r} A_{p+1+s}> for r, s = 0..q-p-1."""
    d = q - p
    block = 2.0 * C.C[p : p + d, p + 1 : p + 1 + d]
    idx = np.arange(d)
    block = block.copy()
    block[idx[1:], idx[:-1]] -= 1.0  # delta_{l r} at l = p+r = p+1+s
    return block


def xx_correlator(C: CorrelationMatrix, n, m) -> float:
    """<sigma^x_n sigma^x_m> as a |m-n| x |m-n| contraction determinant.

    The Jordan-Wigner string runs along array order, so n must precede m;
    relabel the pair (the state is what matters) if it does not.
    """
    M = C.params.half_length
    p, q = site_to_pos(n, M), site_to_pos(m, M)
    if p >= q:
        raise ValueError(
            "operator string must run with increasing array position; "
            f"relabel the pair so that {n} precedes {m}"
        )
    return float(np.linalg.det(_string_block(C, p, q)))


def yy_correlator(C: CorrelationMatrix, n, m) -> float:
    """<sigma^y_n sigma^y_m>, same machinery with A/B roles swapped."""
    M = C.params.half_length
    p, q = site_to_pos(n, M), site_to_pos(m, M)
    if p >= q:
        raise ValueError(
            "operator string must run with increasing array position; "
            f"relabel the pair so that {n} precedes {m}"
        )
    d = q - p
    # G'[r][s] = <B_{p+1+s} A_{p+r}> = 2C[p+1+s][p+r] - delta, with the
    # (-1)^d from commuting each A past its B absorbed entrywise
    block = 2.0 * C.C[p : p + d, p + 1 : p + 1 + d].T
    idx = np.arange(d)
    block = block.copy()
    block[idx[:-1], idx[1:]] -= 1.0
    return float(np.linalg.det(block))


def bond_profile(params: ModelParams, alpha: str, b_range) -> list[tuple[int, float]]:
    """Nearest-neighbor correlator g^{aa}_b at bonds b (sites b -/+ 1/2)."""
    if alpha not in ("x", "z"):
        raise ValueError(f"alpha must be 'x' or 'z', got {alpha!r}")
    C = ground_correlation_matrix(params)
    out = []
    for b in b_range:
        n, m = b - 0.5, b + 0.5
        if alpha == "x":
            g = xx_correlator(C, n, m)
        else:
            g = zz_correlator(C, n, m)
        out.append((int(b), g))
    return out
