"""Means, variances, sensitivities and working points of the three detection
schemes.

All observables are evaluated from the five PortMoments of each input port and
the interferometer's ModeMap, so the same code serves every Gaussian input and
both beam-splitter conventions:

* difference intensity   N_d = n4 - n5
* single-mode intensity  n4
* homodyne               X = Re(exp(-i phi_L) a4) on output 4

The sensitivity is the error-propagation formula

    dphi = sqrt(Var O) / |d<O>/dphi|.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import FlatObjective, NegativeVariance
from .interferometer import bilinear_moments, mode_map, number_kernel
from .states import TWO_PI, canonical_angle, port_moments

__all__ = ['DetectionScheme', 'DifferenceIntensity', 'SingleModeIntensity',
           'Homodyne', 'SCHEME_NAMES', 'scheme_from_name', 'SensitivityPoint',
           'ObservableStats', 'observable_stats', 'observable_mean',
           'observable_variance', 'observable_slope', 'point_from_slope', 'sensitivity',
           'working_point', 'optimal_working_point', 'minimize_over_phase']

logger = logging.getLogger(__name__)

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

SCAN_POINTS = 720
PHASE_XTOL = 1e-10

# relative to the natural scale of each observable
SLOPE_RTOL = 1e-12
VARIANCE_RTOL = 1e-9

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class DetectionScheme(object):
    """Base class of the detection schemes."""
    name = None

    def kernels(self, scenario, phi):
        """Hermitian kernels (K, dK/dphi) of a number-type observable."""
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and vars(self) == vars(other)

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(vars(self).items()))))

    def __repr__(self):
        return '%s()' % self.__class__.__name__


class DifferenceIntensity(DetectionScheme):
    name = 'difference'

    def kernels(self, scenario, phi):
        mm = mode_map(scenario.convention)
        u, du = mm.matrix(phi), mm.derivative(phi)
        kernel = number_kernel(u[0]) - number_kernel(u[1])
        slope = (np.outer(np.conj(du[0]), u[0]) + np.outer(np.conj(u[0]), du[0])
                 - np.outer(np.conj(du[1]), u[1]) - np.outer(np.conj(u[1]), du[1]))
        return kernel, slope


class SingleModeIntensity(DetectionScheme):
    name = 'single'

    def kernels(self, scenario, phi):
        mm = mode_map(scenario.convention)
        u, du = mm.matrix(phi), mm.derivative(phi)
        kernel = number_kernel(u[0])
        slope = np.outer(np.conj(du[0]), u[0]) + np.outer(np.conj(u[0]), du[0])
        return kernel, slope


class Homodyne(DetectionScheme):
    """Quadrature X = Re(exp(-i local_phase) a4).

    With ``local_phase=None`` the local oscillator is locked to theta_alpha,
    the phase of the port 1 coherent amplitude.
    """
    name = 'homodyne'

    def __init__(self, local_phase=None):
        self.local_phase = None if local_phase is None else float(local_phase)

    def resolve_phase(self, scenario):
        if self.local_phase is None:
            return scenario.port1.displacement.phase
        return self.local_phase

    def __repr__(self):
        return 'Homodyne(local_phase=%r)' % (self.local_phase,)


SCHEME_NAMES = {cls.name: cls for cls in (DifferenceIntensity, SingleModeIntensity, Homodyne)}


@dataclass(frozen=True)
class SensitivityPoint(object):
    """A working point and its sensitivity; delta_phi is math.inf where the
    slope of the mean vanishes."""
    phase: float
    delta_phi: float

    @property
    def is_finite(self):
        return math.isfinite(self.delta_phi)


@dataclass(frozen=True)
class ObservableStats(object):
    mean: float
    variance: float
    slope: float
    # photon number reaching the detectors, used by the loss model
    detected_photons: float
    scale: float

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def scheme_from_name(name, local_phase=None):
    """Parse a scheme name as used in config files.

    Examples
    --------
    >>> scheme_from_name('homodyne', 0.5)
    Homodyne(local_phase=0.5)
    """
    try:
        cls = SCHEME_NAMES[name.strip().lower()]
    except KeyError:
        raise ValueError('unknown detection scheme %r, choose from %s'
                         % (name, ', '.join(sorted(SCHEME_NAMES))))
    if cls is Homodyne:
        return Homodyne(local_phase)
    return cls()


def _homodyne_stats(scheme, scenario, phi, m0, m1):
    mm = mode_map(scenario.convention)
    rotation = np.exp(-1j * scheme.resolve_phase(scenario))
    u = rotation * mm.matrix(phi)[0]
    du = rotation * mm.derivative(phi)[0]

    mean = float(np.real(u[0] * m0.mean_a + u[1] * m1.mean_a))
    slope = float(np.real(du[0] * m0.mean_a + du[1] * m1.mean_a))
    variance = 0.0
    for w, m in zip(u, (m0, m1)):
        variance += (0.25 * abs(w)**2
                     + 0.5 * np.real(w**2 * (m.mean_a2 - m.mean_a**2))
                     + 0.5 * abs(w)**2 * (m.mean_n - abs(m.mean_a)**2))
    return mean, float(variance), slope


def observable_stats(scheme, scenario, phi=None):
    """Mean, variance and phase slope of the scheme's observable.

    Parameters
    ----------
    scheme : DetectionScheme
    scenario : MziScenario
    phi : float, optional
        Working point; defaults to ``scenario.phase``.

    Returns
    -------
    stats : ObservableStats

    Raises
    ------
    NegativeVariance
        If the variance is negative beyond round-off.
    """
    phi = scenario.phase if phi is None else float(phi)
    m0 = port_moments(scenario.port0)
    m1 = port_moments(scenario.port1)
    photons = m0.mean_n + m1.mean_n

    if isinstance(scheme, Homodyne):
        mean, variance, slope = _homodyne_stats(scheme, scenario, phi, m0, m1)
        detected = 0.0
        scale = abs(m0.mean_a) + abs(m1.mean_a)
    else:
        kernel, dkernel = scheme.kernels(scenario, phi)
        mean, variance = bilinear_moments(kernel, m0, m1)
        slope, _ = bilinear_moments(dkernel, m0, m1)
        if isinstance(scheme, DifferenceIntensity):
            detected = photons
        else:
            detected = mean
        scale = photons

    if variance < 0:
        if variance < -VARIANCE_RTOL * max(1.0, scale)**2:
            raise NegativeVariance('variance %r of %s at phi=%r' % (variance, scheme, phi))
        variance = 0.0
    return ObservableStats(mean=mean, variance=variance, slope=slope,
                           detected_photons=detected, scale=scale)


def observable_mean(scheme, scenario):
    """Expectation value of the observable at ``scenario.phase``."""
    return observable_stats(scheme, scenario).mean


def observable_variance(scheme, scenario):
    """Variance of the observable at ``scenario.phase``; never negative."""
    return observable_stats(scheme, scenario).variance


def observable_slope(scheme, scenario):
    """d<O>/dphi at ``scenario.phase``."""
    return observable_stats(scheme, scenario).slope


def point_from_slope(phi, variance, slope, scale):
    if abs(slope) <= SLOPE_RTOL * scale:
        logger.debug('zero slope at phi=%.6g, sensitivity undefined', phi)
        return SensitivityPoint(phi, math.inf)
    return SensitivityPoint(phi, math.sqrt(variance) / abs(slope))


def sensitivity(scheme, scenario, phi=None):
    """Error-propagation sensitivity of a lossless detection scheme.

    A vanishing slope gives ``delta_phi = math.inf`` rather than an error.

    Examples
    --------
    >>> from mzi.interferometer import MziScenario
    >>> from mzi.states import GaussianPort
    >>> s = MziScenario(port1=GaussianPort.from_polar(2.0), phase=0.5 * math.pi)
    >>> round(sensitivity(DifferenceIntensity(), s).delta_phi, 12)
    0.5
    """
    stats = observable_stats(scheme, scenario, phi)
    phi = scenario.phase if phi is None else phi
    return point_from_slope(phi, stats.variance, stats.slope, stats.scale)


def minimize_over_phase(objective, points=SCAN_POINTS, xtol=PHASE_XTOL):
    """Minimize a 2 pi periodic function of the phase.

    A uniform scan of `points` phases brackets the global minimum, which is
    then refined with a bounded scalar minimization between the neighbours
    of the best scan point.

    Returns
    -------
    point : SensitivityPoint

    Raises
    ------
    FlatObjective
        If the objective is infinite everywhere on the scan.
    """
    grid = np.arange(points) * (TWO_PI / points)
    values = np.array([objective(phi) for phi in grid])
    if not np.isfinite(values).any():
        raise FlatObjective('the sensitivity is infinite at every phase')
    best = int(np.nanargmin(np.where(np.isfinite(values), values, np.inf)))
    step = TWO_PI / points
    result = minimize_scalar(objective, bounds=(grid[best] - step, grid[best] + step),
                             method='bounded', options={'xatol': xtol})
    if result.success and result.fun <= values[best]:
        return SensitivityPoint(canonical_angle(result.x), float(result.fun))
    return SensitivityPoint(float(grid[best]), float(values[best]))


def _harmonic_optimum(var0, var_half, var_quarter, mean0, mean_half):
    """Stationary point of (A c^2 + B s^2 + 2 C s c) / (D s + F c)^2.

    Here c and s are the cosine and sine of the free angle. The inputs are
    the variance at 0, pi/2 and pi/4 and the mean at 0 and pi/2 of an
    observable whose mean is P cos + Q sin.
    """
    a, b = var0, var_half
    c = var_quarter - 0.5 * (a + b)
    d, f = -mean0, mean_half
    if d == 0 and f == 0:
        raise FlatObjective('the mean does not depend on the phase')
    return math.atan2(a * d - c * f, b * f - c * d)


def _best_of(scheme, candidates, evaluate):
    points = [evaluate(canonical_angle(phi)) for phi in candidates]
    finite = [p for p in points if p.is_finite]
    if not finite:
        raise FlatObjective('%s has no phase information for this input' % scheme.name)
    smallest = min(p.delta_phi for p in finite)
    ties = [p for p in finite if p.delta_phi <= smallest * (1 + 1e-9)]
    return min(ties, key=lambda p: p.phase)


def working_point(scheme, scenario, variance_at, evaluate, quartic=True):
    """Locate the sweet spot of `scheme` given a variance model.

    Difference intensity and homodyne use the closed-form stationary point
    of a ratio of harmonics (for homodyne in the variable phi/2); this holds
    for any variance model that adds a phase-independent noise term. When
    `quartic` is set, single-mode intensity uses the quartic-root formula
    valid when port 0 carries no displacement. Everything else falls back to
    minimize_over_phase. Among equivalent branches the smaller sensitivity
    wins, then the smaller phase.

    Parameters
    ----------
    variance_at : callable
        phi -> variance of the observable.
    evaluate : callable
        phi -> SensitivityPoint.
    """
    def mean_at(phi):
        return observable_stats(scheme, scenario, phi).mean

    if isinstance(scheme, DifferenceIntensity):
        half, quarter = 0.5 * math.pi, 0.25 * math.pi
        phi0 = _harmonic_optimum(variance_at(0.0), variance_at(half), variance_at(quarter),
                                 mean_at(0.0), mean_at(half))
        return _best_of(scheme, [phi0, phi0 + math.pi], evaluate)

    if isinstance(scheme, Homodyne):
        x0 = _harmonic_optimum(variance_at(0.0), variance_at(math.pi), variance_at(0.5 * math.pi),
                               mean_at(0.0), mean_at(math.pi))
        return _best_of(scheme, [2 * x0], evaluate)

    if quartic:
        p0 = port_moments(scenario.port0)
        p1 = port_moments(scenario.port1)
        v_pi, v_zero = variance_at(math.pi), variance_at(0.0)
        if p0.mean_a == 0 and v_pi > 0 and v_zero > 0:
            if p0.mean_n == p1.mean_n:
                raise FlatObjective('equal mean photon numbers, <n4> does not depend on the phase')
            phi0 = 2 * math.atan((v_zero / v_pi)**0.25)
            return _best_of(scheme, [phi0, -phi0], evaluate)

    return minimize_over_phase(lambda phi: evaluate(phi).delta_phi)


def optimal_working_point(scheme, scenario):
    """The phase minimizing the lossless sensitivity, and that sensitivity.

    Returns
    -------
    point : SensitivityPoint

    Raises
    ------
    FlatObjective
        If no phase gives a finite sensitivity.
    """
    return working_point(
        scheme, scenario,
        variance_at=lambda phi: observable_stats(scheme, scenario, phi).variance,
        evaluate=lambda phi: sensitivity(scheme, scenario, phi))
