import math

import numpy as np
import pytest

from mzi.detection import (DifferenceIntensity, Homodyne, SingleModeIntensity,
                           optimal_working_point, sensitivity)
from mzi.exceptions import InvalidEfficiency
from mzi.interferometer import MziScenario
from mzi.losses import (check_efficiency, lossy_optimal_working_point, lossy_sensitivity,
                        lossy_variance)
from mzi.pmc import PmcSet, apply_pmc
from mzi.states import GaussianPort

SCHEMES = [DifferenceIntensity(), SingleModeIntensity(), Homodyne()]


def squeezed_pair(alpha, r, z, phase=0.5 * math.pi, efficiency=1.0):
    port1, port0 = apply_pmc(PmcSet.SQZVAC_OPTIMAL, 0.0, alpha, 0.0, r, z)
    return MziScenario(port1=port1, port0=port0, phase=phase, efficiency=efficiency)


@pytest.mark.parametrize('scheme', SCHEMES)
def test_unit_efficiency_is_lossless(scheme):
    scenario = MziScenario(port1=GaussianPort.from_polar(1.3, 0.2, 0.4, 0.9),
                           port0=GaussianPort.from_polar(0.7, 1.1, 0.6, 2.0), phase=1.2)
    assert lossy_sensitivity(scheme, scenario) == sensitivity(scheme, scenario)


@pytest.mark.parametrize('scheme', SCHEMES)
@pytest.mark.parametrize('eta', [0.9, 0.5, 0.1])
def test_coherent_input_degrades_as_root_eta(scheme, eta):
    scenario = MziScenario(port1=GaussianPort.from_polar(3.0, 0.4), phase=1.0)
    lossless = sensitivity(scheme, scenario).delta_phi
    lossy = lossy_sensitivity(scheme, scenario.with_efficiency(eta)).delta_phi
    assert lossy == pytest.approx(lossless / math.sqrt(eta), rel=1e-12)


@pytest.mark.parametrize('scheme', SCHEMES)
def test_sensitivity_worsens_monotonically_with_loss(scheme):
    scenario = squeezed_pair(2.0, 0.8, 0.5, phase=2.0)
    values = [lossy_sensitivity(scheme, scenario.with_efficiency(eta)).delta_phi
              for eta in np.linspace(1.0, 0.2, 9)]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize('scheme', SCHEMES)
def test_continuous_at_unit_efficiency(scheme):
    scenario = squeezed_pair(2.0, 0.8, 0.5, phase=2.0)
    near = lossy_sensitivity(scheme, scenario.with_efficiency(0.999999)).delta_phi
    assert near == pytest.approx(sensitivity(scheme, scenario).delta_phi, rel=1e-5)


def test_single_mode_noise_grows_with_detected_photons():
    scenario = squeezed_pair(2.0, 0.8, 0.5, phase=2.0, efficiency=0.8)
    variance, slope, _ = lossy_variance(SingleModeIntensity(), scenario)
    lossless, lossless_slope, _ = lossy_variance(SingleModeIntensity(),
                                                 scenario.with_efficiency(1.0))
    n4 = math.sinh(0.8)**2 * math.sin(1.0)**2 + (4 + math.sinh(0.5)**2) * math.cos(1.0)**2
    assert slope == lossless_slope
    assert variance - lossless == pytest.approx(0.25 * n4, rel=1e-12)


def test_rejects_bad_efficiency():
    for eta in (0.0, -0.1, 1.5, float('nan')):
        with pytest.raises(InvalidEfficiency):
            check_efficiency(eta)
        with pytest.raises(InvalidEfficiency):
            MziScenario(efficiency=eta)
    assert check_efficiency(1) == 1.0


def test_lossy_homodyne_optimum():
    alpha, r, eta = 2.0, 0.7, 0.8
    scenario = squeezed_pair(alpha, r, 0.3, efficiency=eta)
    point = lossy_optimal_working_point(Homodyne(), scenario)
    assert point.phase == pytest.approx(math.pi, abs=1e-9)
    expected = math.sqrt(math.exp(-2 * r) + (1 - eta) / eta) / alpha
    assert point.delta_phi == pytest.approx(expected, rel=1e-9)


def test_lossy_difference_optimum_stays_at_half_pi():
    scenario = squeezed_pair(2.0, 0.7, 0.3, efficiency=0.6)
    point = lossy_optimal_working_point(DifferenceIntensity(), scenario)
    assert point.phase == pytest.approx(0.5 * math.pi, abs=1e-9)


@pytest.mark.parametrize('scheme', SCHEMES)
def test_lossy_working_point_matches_lossless_at_unit_efficiency(scheme):
    scenario = squeezed_pair(1.5, 0.6, 0.4)
    assert lossy_optimal_working_point(scheme, scenario).delta_phi == pytest.approx(
        optimal_working_point(scheme, scenario).delta_phi, rel=1e-12)


@pytest.mark.parametrize('scheme', SCHEMES)
def test_lossy_working_point_beats_a_scan(scheme):
    scenario = squeezed_pair(1.5, 0.6, 0.4, efficiency=0.7)
    best = lossy_optimal_working_point(scheme, scenario).delta_phi
    grid = np.linspace(0, 2 * math.pi, 2000, endpoint=False)
    scanned = min(lossy_sensitivity(scheme, scenario, phi).delta_phi for phi in grid)
    assert best <= scanned * (1 + 1e-9)
