import numpy as np
import pytest

from ringcut.corr import ground_correlation_matrix
from ringcut.model import Boundary, ModelParams, site_to_pos
from ringcut.oracle import ed_ground_state, ed_rdm
from ringcut.qinfo import (
    TwoQubitState,
    classical_correlations,
    concurrence_paper,
    concurrence_wootters,
    correlation_measures,
    mutual_information,
    quantum_discord,
    rdm_from_correlators,
    two_qubit_rdm,
)
from ringcut.qinfo import _cc_for_theta, _ptrace, _vn_entropy


def _bell_state():
    v = np.zeros(4)
    v[0] = v[3] = 1.0 / np.sqrt(2.0)
    return TwoQubitState(rho=np.outer(v, v), sites=(None, None), provenance={})


def _product_state():
    rho = np.diag([1.0, 0.0, 0.0, 0.0])
    return TwoQubitState(rho=rho, sites=(None, None), provenance={})


def test_state_validation_rejects_garbage():
    with pytest.raises(ValueError):
        TwoQubitState(rho=np.diag([0.7, 0.4, 0.0, 0.0]), sites=(0, 1), provenance={})
    with pytest.raises(ValueError):
        TwoQubitState(rho=np.diag([1.2, -0.2, 0.0, 0.0]), sites=(0, 1), provenance={})


def test_known_states():
    bell = _bell_state()
    assert concurrence_wootters(bell) == pytest.approx(1.0, abs=1e-12)
    assert mutual_information(bell) == pytest.approx(2.0, abs=1e-12)
    assert classical_correlations(bell) == pytest.approx(1.0, abs=1e-9)
    assert quantum_discord(bell) == pytest.approx(1.0, abs=1e-9)
    prod = _product_state()
    assert concurrence_wootters(prod) == pytest.approx(0.0, abs=1e-12)
    assert mutual_information(prod) == pytest.approx(0.0, abs=1e-12)
    assert quantum_discord(prod) == pytest.approx(0.0, abs=1e-9)


def test_rdm_matches_oracle():
    M = 4
    p = ModelParams(half_length=M, defect_strength=2.0, field=0.3,
                    boundary=Boundary.RING_PARITY_EXACT)
    C = ground_correlation_matrix(p)
    gs = ed_ground_state(p)
    for n, m in [(-0.5, 0.5), (-1.5, 1.5), (0.5, 2.5), (-2.5, -0.5)]:
        st = two_qubit_rdm(C, n, m)
        rho_ed = ed_rdm(gs, [site_to_pos(n, M), site_to_pos(m, M)])
        assert np.abs(st.rho - rho_ed).max() < 1e-10


def test_rdm_site_order_is_canonicalized():
    p = ModelParams(half_length=4, defect_strength=2.0, field=0.3)
    C = ground_correlation_matrix(p)
    a = two_qubit_rdm(C, -1.5, 1.5)
    b = two_qubit_rdm(C, 1.5, -1.5)
    assert np.abs(a.rho - b.rho).max() < 1e-14
    assert a.sites == b.sites


def test_concurrence_formulas_agree():
    for j, h in [(0.5, 0.0), (2.0, 0.3), (6.0, 0.6), (1.0, 1.05)]:
        p = ModelParams(half_length=5, defect_strength=j, field=h,
                        boundary=Boundary.RING_PARITY_EXACT)
        C = ground_correlation_matrix(p)
        for n, m in [(-0.5, 0.5), (0.5, 1.5), (-1.5, 1.5)]:
            st = two_qubit_rdm(C, n, m)
            assert concurrence_paper(C, n, m) == pytest.approx(
                concurrence_wootters(st), abs=1e-10)


def test_discord_phi_independence_for_x_states():
    p = ModelParams(half_length=4, defect_strength=2.0, field=0.3,
                    boundary=Boundary.RING_PARITY_EXACT)
    C = ground_correlation_matrix(p)
    st = two_qubit_rdm(C, -1.5, 1.5)
    sa = _vn_entropy(_ptrace(st.rho, 0))
    for theta in (0.3, 0.9, 1.4):
        vals = [_cc_for_theta(st.rho, sa, theta, phi) for phi in (0.0, 0.7, 2.1, 4.4)]
        assert max(vals) - min(vals) < 1e-12


def test_measures_bundle_is_consistent():
    rho = rdm_from_correlators(gxx=0.3, gyy=0.3, gzz=0.1, mz_a=0.2, mz_b=0.2)
    out = correlation_measures(rho)
    assert out["quantum_discord"] == pytest.approx(
        out["mutual_information"] - out["classical_correlations"], abs=1e-12)
    assert 0.0 <= out["classical_correlations"] <= out["mutual_information"] + 1e-9
