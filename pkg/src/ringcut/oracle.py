"""Brute-force many-body reference on up to 10 spins.

Dense exact diagonalization of the spin Hamiltonian

    H = -(1/2) sum_b J_b (sx sx + sy sy) - h sum sz,    J_b in {1, j},

with total-magnetization sector blocking, plus a Jordan-Wigner
representation of arbitrary quadratic fermion Hamiltonians in the same
qubit basis (used to validate the naive-wrap fermion picture
independently of the parity-exact one).  Everything here trades speed
for exactness; it exists to validate the free-fermion pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Boundary, ModelParams

__all__ = [
    "DenseGroundState",
    "ed_ground_state",
    "ed_ground_state_fermion",
    "ed_correlator",
    "ed_rdm",
    "ed_fidelity",
    "spin_hamiltonian",
]

MAX_SITES = 10

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
_PAULI = {"x": _SX, "y": _SY, "z": _SZ}


@dataclass(frozen=True)
class DenseGroundState:
    """Ground-state vector in the full 2^L tensor basis."""

    vector: np.ndarray
    energy: float
    degenerate_flag: bool
    n_sites: int


def _check_size(L: int):
    if L > MAX_SITES:
        raise ValueError(f"dense oracle capped at {MAX_SITES} sites, got {L}")


def _bond_list(params: ModelParams):
    M = params.half_length
    L = 2 * M
    bonds = [(p, p + 1, 1.0) for p in range(L - 1)]
    if params.boundary is Boundary.OPEN_SEGMENT:
        return bonds
    bonds[M - 1] = (M - 1, M, params.defect_strength)
    bonds.append((L - 1, 0, 1.0))
    return bonds


def _kron_chain(ops):
    m = ops[0]
    for o in ops[1:]:
        m = np.kron(m, o)
    return m


def _site_op(L: int, op: np.ndarray, p: int) -> np.ndarray:
    mats = [np.eye(2)] * L
    mats[p] = op
    return _kron_chain(mats)


def spin_hamiltonian(params: ModelParams) -> np.ndarray:
    """Dense 2^L x 2^L spin Hamiltonian."""
    L = params.n_sites
    _check_size(L)
    dim = 2**L
    H = np.zeros((dim, dim))
    for p, q, coup in _bond_list(params):
        if coup == 0.0:
            continue
        hop = _site_op(L, _SX, p) @ _site_op(L, _SX, q)
        hop = hop + np.real(_site_op(L, _SY, p) @ _site_op(L, _SY, q))
        H -= 0.5 * coup * hop
    diag = np.zeros(dim)
    for p in range(L):
        diag += np.diag(_site_op(L, _SZ, p)).real
    H -= params.field * np.diag(diag)
    return H


def jw_annihilators(L: int) -> list[np.ndarray]:
    """JW fermion annihilators c_p in the qubit basis (|1> = occupied)."""
    _check_size(L)
    c_loc = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1|
    z_loc = np.diag([1.0, -1.0])
    ops = []
    for p in range(L):
        ops.append(_kron_chain([z_loc] * p + [c_loc] + [np.eye(2)] * (L - p - 1)))
    return ops


def quadratic_fock_hamiltonian(A: np.ndarray) -> np.ndarray:
    """Many-body H = sum A_pq c^dag_p c_q in the full Fock (qubit) basis."""
    L = A.shape[0]
    _check_size(L)
    cs = jw_annihilators(L)
    H = np.zeros((2**L, 2**L))
    for p in range(L):
        for q in range(L):
            if A[p, q] != 0.0:
                H += A[p, q] * (cs[p].T @ cs[q])
    return H


def _sector_ground(H: np.ndarray, L: int) -> DenseGroundState:
    """Lowest eigenpair, exploiting conservation of total magnetization."""
    dim = 2**L
    nup = np.array([bin(i).count("1") for i in range(dim)])
    best = None
    for k in range(L + 1):
        idx = np.where(nup == k)[0]
        block = H[np.ix_(idx, idx)]
        lam, V = np.linalg.eigh(block)
        if best is None or lam[0] < best[0] - 1e-14:
            vec = np.zeros(dim)
            vec[idx] = V[:, 0]
            gap = lam[1] - lam[0] if len(lam) > 1 else np.inf
            best = (lam[0], vec, gap)
        elif abs(lam[0] - best[0]) <= 1e-10:
            best = (best[0], best[1], 0.0)
    energy, vec, gap = best
    resid = np.linalg.norm(H @ vec - energy * vec)
    if resid > 1e-10 * max(1.0, abs(energy)):
        raise ArithmeticError(f"ground-state residual {resid:.3e} too large")
    return DenseGroundState(
        vector=vec, energy=float(energy), degenerate_flag=gap <= 1e-10, n_sites=L
    )


def ed_ground_state(params: ModelParams) -> DenseGroundState:
    """Ground state of the spin Hamiltonian."""
    return _sector_ground(spin_hamiltonian(params), params.n_sites)


def ed_ground_state_fermion(A: np.ndarray) -> DenseGroundState:
    """Ground state of a quadratic fermion Hamiltonian in the qubit basis."""
    return _sector_ground(quadratic_fock_hamiltonian(A), A.shape[0])


def ed_correlator(state: DenseGroundState, operator_spec) -> float:
    """<prod_i pauli_i at position_i>; operator_spec = [(pos, 'x'|'y'|'z'), ...]."""
    if state.degenerate_flag:
        raise ValueError(
            "degenerate ground state: correlators ill-defined; perturb the field"
        )
    L = state.n_sites
    op = np.eye(2**L, dtype=complex)
    for p, axis in operator_spec:
        op = op @ _site_op(L, _PAULI[axis], p)
    val = state.vector.conj() @ op @ state.vector
    return float(np.real(val))


def ed_rdm(state: DenseGroundState, sites) -> np.ndarray:
    """Reduced density matrix on `sites` (tensor order as given)."""
    L = state.n_sites
    keep = list(sites)
    rest = [i for i in range(L) if i not in keep]
    psi = state.vector.reshape([2] * L)
    psi = np.transpose(psi, keep + rest)
    m = psi.reshape(2 ** len(keep), 2 ** len(rest))
    return m @ m.conj().T


def _permute_qubits(vec: np.ndarray, perm) -> np.ndarray:
    L = len(perm)
    return np.transpose(vec.reshape([2] * L), perm).reshape(-1)


def ed_fidelity(params: ModelParams, ring_state: DenseGroundState | None = None) -> float:
    """<Sigma| Tr_{impurity pair}[|Omega><Omega|] |Sigma> by explicit partial trace.

    The segment is the open chain on the 2M-2 remaining sites (its path runs
    through the ring's wrap bond); `ring_state` defaults to the spin ED
    ground state but may be any state in the same qubit basis, e.g. the
    naive-wrap fermionic ground state.
    """
    M = params.half_length
    L = 2 * M
    _check_size(L)
    if ring_state is None:
        ring_state = ed_ground_state(params)
    keep = list(range(0, M - 1)) + list(range(M + 1, L))
    rho = ed_rdm(ring_state, keep)
    seg = ModelParams(
        half_length=M - 1,
        defect_strength=params.defect_strength,
        field=params.field,
        boundary=Boundary.OPEN_SEGMENT,
    )
    sigma = ed_ground_state(seg)
    # chain index l lives at ring position (M+1+l) mod L; put amplitudes in
    # the tensor order of `keep`
    chain_pos = [(M + 1 + l) % L for l in range(L - 2)]
    perm = [chain_pos.index(p) for p in keep]
    phi = _permute_qubits(sigma.vector, perm)
    return float(np.real(phi.conj() @ rho @ phi))
