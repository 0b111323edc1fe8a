"""Thermodynamic-limit solution via the lattice Green function and T matrix.

The infinite ring is solved in closed form: the free lattice Green
function G0 has an explicit expression in the variable x = z/2 + h, the
defect bond is a rank-2 impurity H_I = -(j-1) sigma^x on the sites
(-1/2, +1/2), and the full scattering information is the 2x2 T matrix
T = (1 - H_I G0)^{-1} H_I.  Scattering states are plane waves times
(1 + f_kn) with a closed-form distortion f, bound states (present for
j > 1, one below and one above the band) have exponentially localized
amplitudes sqrt(sinh q) e^{-q|n|} with q = ln j.  Ground-state
contractions are band integrals over occupied momenta plus occupied
bound-state projectors,

    C[n][m] = int_{|k|<k_c} dk/2pi e^{-ik(n-m)} (1+f_kn)(1+f_km)^*
              + sum_{occupied bound} w(n) w(m),

with k_c = arccos(-h) the Fermi momentum of the dispersion
eps(k) = -2 cos k - 2h.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .corr import CorrelationMatrix
from .model import Boundary, ModelParams
from .quadrature import adaptive_gauss_legendre
from .spectrum import EPS_ZERO

__all__ = [
    "TLEntry",
    "g0",
    "impurity_potential",
    "t_matrix",
    "bound_state_poles",
    "distortion_f",
    "localized_amplitude",
    "occupied_bound_states",
    "tl_correlation_entry",
    "tl_correlation_matrix",
    "completeness_defect",
]

_IMPURITY_SITES = (-0.5, 0.5)


@dataclass(frozen=True)
class TLEntry:
    """One contraction entry with its quadrature bookkeeping."""

    value: float
    error_estimate: float
    n_evaluations: int
    band_part: float
    bound_part: float
    zero_mode_flag: bool


def g0(n, m, z, h: float, branch: str = "+"):
    """Free Green function <n|(z - H0)^{-1}|m> of the uniform ring.

    Closed form in x = z/2 + h: G0 = w^|n-m| / (2 sqrt(x^2 - 1)) with
    w = -x + sqrt(x^2 - 1) on the branch |w| <= 1.  For real in-band z
    the boundary value is taken: `branch` '+' gives the retarded limit
    w = e^{i|k|}, '-' the advanced one.
    """
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    d = abs(round(float(n - m)))
    x = complex(z) / 2.0 + h
    in_band = x.imag == 0.0 and abs(x.real) < 1.0
    if in_band:
        xr = x.real
        root = (1j if branch == "+" else -1j) * math.sqrt(1.0 - xr * xr)
    else:
        root = cmath.sqrt(x * x - 1.0)
        if abs(-x + root) > 1.0:
            root = -root
    if abs(root) < 1e-13:
        raise ValueError(f"energy z = {z} sits on a band edge; G0 diverges")
    return (-x + root) ** d / (2.0 * root)


def impurity_potential(j: float) -> np.ndarray:
    """H_I on the defect pair: the bond strength deviation -(j-1) sigma^x."""
    return -(j - 1.0) * np.array([[0.0, 1.0], [1.0, 0.0]])


def _g0_block(z, h: float, branch: str = "+") -> np.ndarray:
    a, b = _IMPURITY_SITES
    gaa = g0(a, a, z, h, branch)
    gab = g0(a, b, z, h, branch)
    return np.array([[gaa, gab], [gab, gaa]])


def t_matrix(z, j: float, h: float, branch: str = "+") -> np.ndarray:
    """2x2 T matrix on the defect pair, T = (1 - H_I G0)^{-1} H_I."""
    HI = impurity_potential(j)
    D = np.eye(2) - HI @ _g0_block(z, h, branch)
    if abs(np.linalg.det(D)) < 1e-13:
        raise ValueError(f"z = {z} is a pole of the T matrix (bound state)")
    return np.linalg.solve(D, HI)


def _pole_function(z: float, j: float, h: float) -> float:
    HI = impurity_potential(j)
    return float(np.linalg.det(np.eye(2) - HI @ _g0_block(z, h)).real)


def bound_state_poles(j: float, h: float, z_max: float = 1e3) -> list[float]:
    """Real T-matrix poles outside the band, by bracketed bisection.

    det(1 - H_I G0(z)) is scanned on geometric grids below and above the
    band; each sign change is bisected to machine-level accuracy.  Empty
    for j <= 1 (the weak bond binds no state).
    """
    lo, hi = -2.0 * h - 2.0, -2.0 * h + 2.0
    roots = []
    for side in (-1.0, +1.0):
        edge = lo if side < 0 else hi
        offsets = np.geomspace(1e-7, z_max, 4000)
        zs = edge + side * offsets
        vals = [_pole_function(z, j, h) for z in zs]
        for i in range(len(zs) - 1):
            if vals[i] == 0.0:
                roots.append(float(zs[i]))
                continue
            if vals[i] * vals[i + 1] < 0.0:
                a, b = sorted((zs[i], zs[i + 1]))
                fa = _pole_function(a, j, h)
                for _ in range(200):
                    mid = 0.5 * (a + b)
                    fm = _pole_function(mid, j, h)
                    if fm == 0.0 or (b - a) < 1e-14 * max(1.0, abs(mid)):
                        break
                    if fa * fm < 0.0:
                        b = mid
                    else:
                        a, fa = mid, fm
                roots.append(0.5 * (a + b))
    return sorted(roots)


def distortion_f(k, n, j: float):
    """Scattering distortion f_kn of the mode e^{-ikn}(1 + f_kn)/sqrt(2M).

    Closed form from the T matrix; the two branches distinguish the
    transmitted side (k n > 0) from the incident side.  Vectorized over k.
    """
    k = np.asarray(k, dtype=float)
    if j == 1.0:
        return np.zeros(k.shape, dtype=complex)
    s = np.sin(np.abs(k))
    e = np.exp(1j * np.abs(k))
    den = 2.0 * s - 1j * (j * j - 1.0) * e
    f_same = 1j * (j * j - 1.0) * np.exp(2j * k * n) / den
    f_opp = (2.0 * (j - 1.0) * s + 1j * (j * j - 1.0) * e) / den
    return np.where(k * n > 0.0, f_same, f_opp)


def localized_amplitude(n, j: float, side: str) -> float:
    """Bound-state wavefunction at site n for the pole below/above the band.

    Both share the envelope sqrt(sinh q) e^{-q|n|}, q = ln j; the state
    split off above the band alternates in sign from site to site.
    """
    if j <= 1.0:
        raise ValueError(f"no bound state for j = {j} <= 1")
    if side not in ("below", "above"):
        raise ValueError(f"side must be 'below' or 'above', got {side!r}")
    q = math.log(j)
    amp = math.sqrt(math.sinh(q)) * math.exp(-q * abs(float(n)))
    if side == "above":
        amp *= (-1.0) ** int(round(float(n) + 0.5))
    return amp


def occupied_bound_states(j: float, h: float):
    """Occupied localized levels: [(energy, side), ...] and a zero-mode flag.

    Energies are E_pm = -2h -/+ (j + 1/j); a level is filled when it lies
    below zero.  A level within EPS_ZERO of zero raises the flag.
    """
    if j <= 1.0:
        return [], False
    gap = j + 1.0 / j
    levels = [(-2.0 * h - gap, "below"), (-2.0 * h + gap, "above")]
    occ = [(E, side) for E, side in levels if E < -EPS_ZERO]
    flag = any(abs(E) <= EPS_ZERO for E, _ in levels)
    return occ, flag


def tl_correlation_entry(
    n, m, j: float, h: float, tol: float = 1e-10, max_evaluations: int = 10**6
) -> TLEntry:
    """Contraction <c^dag_n c_m> of the infinite defected ring."""
    n = float(n)
    m = float(m)
    kc = math.acos(min(1.0, max(-1.0, -h)))
    n_evals = 0
    err = 0.0
    band = 0.0
    if kc > 0.0:

        def integrand(k):
            fn = distortion_f(k, n, j)
            fm = distortion_f(k, m, j)
            return np.exp(-1j * k * (n - m)) * (1.0 + fn) * np.conj(1.0 + fm)

        res = adaptive_gauss_legendre(
            integrand,
            -kc,
            kc,
            tol=tol,
            max_evaluations=max_evaluations,
            initial_splits=(0.0, -kc / 2, kc / 2),
        )
        val = res.value / (2.0 * math.pi)
        band = float(val.real)
        err = res.error_estimate / (2.0 * math.pi) + abs(val.imag)
        n_evals = res.n_evaluations
    bound = 0.0
    occ, flag = occupied_bound_states(j, h)
    for _, side in occ:
        bound += localized_amplitude(n, j, side) * localized_amplitude(m, j, side)
    return TLEntry(
        value=band + bound,
        error_estimate=err,
        n_evaluations=n_evals,
        band_part=band,
        bound_part=bound,
        zero_mode_flag=flag,
    )


def tl_correlation_matrix(
    j: float, h: float, half_width: int, tol: float = 1e-10
) -> tuple[CorrelationMatrix, float]:
    """Contractions on the window |n| < half_width around the defect.

    Packaged as a CorrelationMatrix so the determinant correlators and
    two-qubit reductions apply unchanged: window site labels coincide
    with those of a finite lattice of half_length = half_width, and only
    the site labelling of the params is meaningful here.
    """
    W = int(half_width)
    if W < 1:
        raise ValueError("half_width must be >= 1")
    sites = [p - W + 0.5 for p in range(2 * W)]
    C = np.zeros((2 * W, 2 * W))
    max_err = 0.0
    flag = False
    for p, n in enumerate(sites):
        for q in range(p, 2 * W):
            ent = tl_correlation_entry(n, sites[q], j, h, tol=tol)
            C[p, q] = C[q, p] = ent.value
            max_err = max(max_err, ent.error_estimate)
            flag = flag or ent.zero_mode_flag
    params = ModelParams(
        half_length=W, defect_strength=j, field=h, boundary=Boundary.RING_NAIVE
    )
    return CorrelationMatrix(params=params, C=C, zero_mode_flag=flag), max_err


def completeness_defect(n, j: float, h: float, tol: float = 1e-10) -> float:
    """Deviation of mode completeness at site n (zero for an exact basis).

    Integrates |1 + f_kn|^2 over the full Brillouin zone and adds both
    localized weights; the result minus one measures the construction's
    internal consistency.
    """
    n = float(n)

    def integrand(k):
        f = distortion_f(k, n, j)
        return np.abs(1.0 + f) ** 2 + 0.0j

    res = adaptive_gauss_legendre(
        integrand,
        -math.pi,
        math.pi,
        tol=tol,
        initial_splits=(0.0, -math.pi / 2, math.pi / 2),
    )
    total = float(res.value.real) / (2.0 * math.pi)
    if j > 1.0:
        for side in ("below", "above"):
            total += localized_amplitude(n, j, side) ** 2
    return total - 1.0
