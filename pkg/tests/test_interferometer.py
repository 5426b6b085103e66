import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mzi import oracle
from mzi.detection import DifferenceIntensity, SingleModeIntensity, observable_stats
from mzi.exceptions import InvalidEfficiency
from mzi.interferometer import BsConvention, MziScenario, mode_map
from mzi.states import GaussianPort

CONVENTIONS = list(BsConvention)
PHASES = np.linspace(-3, 7, 11)


def test_symmetric_routing():
    mm = mode_map(BsConvention.SYMMETRIC)
    assert_allclose(mm.matrix(0.0), [[0, 1], [1, 0]], atol=1e-15)
    assert_allclose(mm.matrix(math.pi), [[-1, 0], [0, 1]], atol=1e-15)


@pytest.mark.parametrize('convention', CONVENTIONS)
def test_unitary_and_factorized(convention):
    mm = mode_map(convention)
    for phi in PHASES:
        u = mm.matrix(phi)
        assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-12)
        p1, p2 = mm.arm_phases(phi)
        assert_allclose(mm.second @ np.diag(np.exp(1j * np.array([p1, p2]))) @ mm.first, u,
                        atol=1e-12)


@pytest.mark.parametrize('convention', CONVENTIONS)
def test_derivative(convention):
    mm = mode_map(convention)
    h = 1e-6
    for phi in PHASES:
        numeric = (mm.matrix(phi + h) - mm.matrix(phi - h)) / (2 * h)
        assert_allclose(mm.derivative(phi), numeric, atol=1e-8)


def test_cube_single_photon_splits_evenly():
    state = oracle.FockVector.basis(0, 1, n_max=3)
    out = oracle.evolve(state, 0.5 * math.pi, BsConvention.CUBE)
    assert out.mean_number(0) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize('convention', CONVENTIONS)
def test_energy_conservation(convention):
    scenario = MziScenario(port1=GaussianPort.from_polar(1.1, 0.3, 0.4, 2.0),
                           port0=GaussianPort.from_polar(0.6, 1.9, 0.5, 0.7),
                           convention=convention)
    photons = 1.1**2 + math.sinh(0.4)**2 + 0.6**2 + math.sinh(0.5)**2
    for phi in PHASES:
        here = scenario.with_phase(phi)
        n4 = observable_stats(SingleModeIntensity(), here).mean
        nd = observable_stats(DifferenceIntensity(), here).mean
        # n4 + n5 = 2 n4 - nd
        assert 2 * n4 - nd == pytest.approx(photons, rel=1e-12)


def test_scenario_validation_and_copies():
    with pytest.raises(InvalidEfficiency):
        MziScenario(efficiency=0.0)
    with pytest.raises(ValueError):
        MziScenario(efficiency=1.5)
    s = MziScenario(convention='cube')
    assert s.convention is BsConvention.CUBE
    assert s.with_phase(1.0).phase == 1.0
    assert s.with_efficiency(0.5).efficiency == 0.5
    port = GaussianPort.from_polar(1.0)
    assert s.with_ports(port1=port).port1 == port
    assert s.with_ports(port1=port).port0 == s.port0
