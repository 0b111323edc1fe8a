"""Exact correlations, entanglement and ring-cut fidelity of an XX ring
with a single bond defect.

The lattice is a ring of 2M spin-1/2 sites with XX exchange, a uniform
transverse field h and one bond of strength j (all others unity).  The
package solves the model three ways: finite free-fermion
diagonalization (naive or parity-exact wrap), the closed-form
thermodynamic-limit Green-function/T-matrix solution, and a dense
many-body oracle on up to 10 spins used for validation.
"""

from .model import Boundary, ModelParams
from .spectrum import ground_state_spectrum
from .corr import (
    bond_profile,
    ground_correlation_matrix,
    magnetization,
    xx_correlator,
    yy_correlator,
    zz_correlator,
)
from .qinfo import (
    classical_correlations,
    concurrence_paper,
    concurrence_wootters,
    correlation_measures,
    mutual_information,
    quantum_discord,
    two_qubit_rdm,
)
from .fid import ring_cut_fidelity
from .tlimit import tl_correlation_entry, tl_correlation_matrix

__version__ = "0.1.0"

__all__ = [
    "Boundary",
    "ModelParams",
    "ground_state_spectrum",
    "ground_correlation_matrix",
    "magnetization",
    "xx_correlator",
    "yy_correlator",
    "zz_correlator",
    "bond_profile",
    "two_qubit_rdm",
    "concurrence_wootters",
    "concurrence_paper",
    "mutual_information",
    "classical_correlations",
    "quantum_discord",
    "correlation_measures",
    "ring_cut_fidelity",
    "tl_correlation_entry",
    "tl_correlation_matrix",
    "__version__",
]
