"""Non-unit photo-detection efficiency.

Each detector is modelled as a perfect one behind a fictitious beam splitter
of transmission sqrt(eta) whose other port is in vacuum. For a detected
photon number n' this gives <n'> = eta <n> and

    Var(n') = eta^2 Var(n) + eta (1 - eta) <n>,

so after rescaling the slope by eta the number-type sensitivities pick up an
extra (1 - eta)/eta <n> under the root. For homodyne detection the extra
quadrature noise is (1 - eta)/(4 eta). A single eta is shared by all
detectors.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import math

from .detection import Homodyne, observable_stats, point_from_slope, working_point
from .exceptions import InvalidEfficiency

__all__ = ['check_efficiency', 'lossy_variance', 'lossy_sensitivity',
           'lossy_optimal_working_point']

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def check_efficiency(eta):
    eta = float(eta)
    if not 0 < eta <= 1:
        raise InvalidEfficiency('detector efficiency must lie in (0, 1], got %r' % eta)
    return eta


def lossy_variance(scheme, scenario, phi=None):
    """Detected-noise variance, referred back to the lossless slope.

    Returns
    -------
    variance, slope, scale : float
    """
    eta = check_efficiency(scenario.efficiency)
    stats = observable_stats(scheme, scenario, phi)
    excess = (1 - eta) / eta
    if isinstance(scheme, Homodyne):
        variance = stats.variance + 0.25 * excess
    else:
        variance = stats.variance + excess * stats.detected_photons
    return variance, stats.slope, stats.scale


def lossy_sensitivity(scheme, scenario, phi=None):
    """Sensitivity of a detection scheme with detector efficiency
    ``scenario.efficiency``.

    Parameters
    ----------
    scheme : DetectionScheme
    scenario : MziScenario
    phi : float, optional
        Working point; defaults to ``scenario.phase``.

    Returns
    -------
    point : SensitivityPoint
        Equal to the lossless sensitivity when the efficiency is 1.

    Examples
    --------
    >>> from mzi.detection import SingleModeIntensity
    >>> from mzi.interferometer import MziScenario
    >>> from mzi.states import GaussianPort
    >>> s = MziScenario(port1=GaussianPort.from_polar(1.0), phase=1.0, efficiency=0.25)
    >>> lossless = lossy_sensitivity(SingleModeIntensity(), s.with_efficiency(1.0))
    >>> round(lossy_sensitivity(SingleModeIntensity(), s).delta_phi / lossless.delta_phi, 10)
    2.0
    """
    variance, slope, scale = lossy_variance(scheme, scenario, phi)
    phi = scenario.phase if phi is None else phi
    return point_from_slope(phi, variance, slope, scale)


def lossy_optimal_working_point(scheme, scenario):
    """Working point minimizing the lossy sensitivity.

    The extra noise of difference-intensity and homodyne detection does not
    depend on the phase, so the harmonic stationary point is solved on the
    lossy variance directly. Single-mode intensity picks up noise
    proportional to <n4> and is located numerically unless eta is 1.
    """
    eta = check_efficiency(scenario.efficiency)
    return working_point(
        scheme, scenario,
        variance_at=lambda phi: lossy_variance(scheme, scenario, phi)[0],
        evaluate=lambda phi: lossy_sensitivity(scheme, scenario, phi),
        quartic=eta == 1)
