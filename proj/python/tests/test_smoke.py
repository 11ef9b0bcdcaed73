import math
import os
from pathlib import Path

import numpy as np
import pytest

import dynent

SOURCE = Path(os.environ.get("DYNENT_SOURCE_DIR", Path(__file__).resolve().parents[2]))


def test_spectrum_matches_numpy():
    rng = np.random.default_rng(3)
    for J, B in zip(rng.uniform(0.0, 2.0, 20), rng.uniform(-2.0, 2.0, 20)):
        s = dynent.spectrum(J, B)
        h = dynent.hamiltonian(J, B)
        assert np.allclose(s["energies"], np.linalg.eigvalsh(h), atol=1e-12)
        v = s["states"]
        assert np.allclose(h @ v, v * np.asarray(s["energies"]), atol=1e-12)


def test_bell_state_is_maximally_entangled():
    psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    assert dynent.concurrence(np.outer(psi, psi.conj())) == pytest.approx(1.0, abs=1e-12)
    assert dynent.concurrence(np.eye(4, dtype=complex) / 4) == 0.0


def test_ground_state_concurrence_is_j_over_e():
    J, B = 0.7, 0.4
    ground = dynent.spectrum(J, B)["states"][:, 0]
    rho = np.outer(ground, ground.conj())
    assert dynent.concurrence(rho) == pytest.approx(dynent.ground_state_concurrence(J, B), abs=1e-12)
    assert dynent.ground_state_concurrence(J, B) == pytest.approx(J / math.hypot(J, 2 * B), abs=1e-12)


def test_thermal_state_is_gibbs():
    J, B, beta = 0.9, 0.3, 2.0
    h = dynent.hamiltonian(J, B)
    w, v = np.linalg.eigh(h)
    gibbs = v @ np.diag(np.exp(-beta * w)) @ v.conj().T
    gibbs /= np.trace(gibbs)
    rho = dynent.thermal_state(J, B, beta)
    assert np.allclose(rho, gibbs, atol=1e-12)
    assert dynent.thermal_concurrence(J, B, beta) == pytest.approx(dynent.concurrence(rho), abs=1e-10)


def test_detailed_balance_of_rates():
    kappa, beta, omega = 0.01, 1.5, 0.8
    assert dynent.rate(omega, kappa, beta) / dynent.rate(-omega, kappa, beta) == pytest.approx(
        math.exp(beta * omega), rel=1e-12
    )


def test_spin_gas_helpers():
    rho = dynent.spin_gas_steady_state(1.0, 0.5, 0.025, 0.16)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(rho, rho.conj().T)
    # J / sqrt(4B^2 + gamma^2) = 1/sqrt(2) maximizes the critical s.
    gamma = 0.025
    B = math.sqrt(2.0 - gamma**2) / 2.0
    assert dynent.critical_s(1.0, B, gamma) == pytest.approx(0.5 * (1 - 1 / math.sqrt(2)), abs=1e-12)


def test_point_at_distance():
    J, B = dynent.point_at_distance(40.0)
    assert J == pytest.approx(1e4 / 40.0**3, abs=1e-15)
    assert B == pytest.approx(1.3 - 2.4 * math.exp(-1600.0 / 480.0), abs=1e-12)


def test_run_config_writes_artifacts(tmp_path):
    result = dynent.run_config(str(SOURCE / "configs" / "fig_fte.cfg"), str(tmp_path))
    assert "fig_fte.csv" in result["files"]
    rows = (tmp_path / "fig_fte.csv").read_text().splitlines()
    assert rows[0] == "beta,x,J,B,C_static"
    assert len(rows) == 1 + 4 * 101


def test_invalid_config_raises(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[run]\nscenario = bosonic\n[bath]\nkappa = -1\n")
    with pytest.raises(dynent.Error, match="kappa >= 0"):
        dynent.canonical_config(str(cfg))
