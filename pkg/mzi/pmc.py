"""Phase-matching conditions, regime boundaries and the regime classifier.

A phase-matching condition (PMC) fixes the squeeze phases and the port 0
coherent phase relative to theta_alpha, the phase of the port 1 coherent
amplitude. For the symmetric convention:

    PMC1             theta = 2 theta_a,  phi_zeta = theta + pi,  theta_b = theta_a
    PMC2             theta = 2 theta_a,  phi_zeta = theta,       theta_b = theta_a
    PMC3             theta = 2 theta_a,  phi_zeta = 2 theta_b,   theta_b = theta_a - pi/2
    sqzvac-optimal   theta = 2 theta_a,  phi_zeta = theta + pi   (beta = 0)
    sqzvac-wideband  theta = 2 theta_a,  phi_zeta = theta        (beta = 0)

The cube convention reaches the same optima with theta_b - pi/2 and
theta - pi.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import UndefinedBoundary
from .fisher import SS_ZERO, FisherMatrix, fisher_arrays, qfi, qfi_closed_form
from .interferometer import BsConvention
from .states import TWO_PI, GaussianPort, canonical_angle, port_moments_arrays

__all__ = ['PmcSet', 'pmc_phases', 'apply_pmc', 'RegimeBoundaries', 'boundaries',
           'classify', 'PhaseSearchResult', 'grid_search_qfi']

logger = logging.getLogger(__name__)

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

HALF_PI = 0.5 * math.pi

# relative tolerance under which two closed-form QFIs count as equal
TIE_RTOL = 1e-12

REFINE_SWEEPS = 4
REFINE_XTOL = 1e-10

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class PmcSet(enum.Enum):
    PMC1 = 'pmc1'
    PMC2 = 'pmc2'
    PMC3 = 'pmc3'
    SQZVAC_OPTIMAL = 'sqzvac-optimal'
    SQZVAC_WIDEBAND = 'sqzvac-wideband'

    @property
    def needs_vacuum_port0(self):
        """True for the sets that assume beta = 0."""
        return self in (PmcSet.SQZVAC_OPTIMAL, PmcSet.SQZVAC_WIDEBAND)


# the three sets of the general (beta != 0) input, in tie-break order
PmcSet.GENERAL = (PmcSet.PMC1, PmcSet.PMC2, PmcSet.PMC3)


@dataclass(frozen=True)
class RegimeBoundaries(object):
    """Limit amplitudes separating the PMC regimes at fixed squeezing.

    Attributes
    ----------
    r, z : float
        Squeezing factors of port 0 and port 1.
    alpha_13, alpha_23 : float
        |alpha| where PMC3 stops being optimal against PMC1 and PMC2 at
        small |beta|.
    alpha_circ : float
        |alpha| of the triple point where all three beta curves meet.
    beta_12 : float
        |beta| where PMC1 and PMC2 give the same QFI, for every |alpha|.
    alpha_single_mode : float
        Largest |alpha| for which single-mode intensity detection still
        reaches its best sensitivity with a squeezed vacuum of factor z.
    """
    r: float
    z: float
    alpha_13: float
    alpha_23: float
    alpha_circ: float
    beta_12: float
    alpha_single_mode: float

    @property
    def s_term(self):
        return 0.5 * (math.sinh(2 * self.r)**2 + math.sinh(2 * self.z)**2)

    def beta_13(self, alpha):
        """PMC1/PMC3 boundary |beta| at a given |alpha|.

        Raises
        ------
        UndefinedBoundary
            When z = 0 or the radicand is negative.
        """
        sinh2z = math.sinh(2 * self.z)
        if sinh2z <= 0:
            raise UndefinedBoundary('beta_13', 'undefined without port 1 squeezing (z=0)')
        e2r, e2z = math.exp(2 * self.r), math.exp(2 * self.z)
        spread = (e2r + e2z)**2 / (2 * sinh2z) - e2z
        radicand = (alpha**2 * spread - self.s_term) / e2r
        if radicand < 0:
            raise UndefinedBoundary('beta_13', 'negative radicand %.6g at |alpha|=%g'
                                    % (radicand, alpha))
        return math.sqrt(radicand)

    def beta_23(self, alpha):
        """PMC2/PMC3 boundary |beta| at a given |alpha|.

        Diverges as |alpha| approaches alpha_23 from above.

        Raises
        ------
        UndefinedBoundary
            When the denominator is not positive, i.e. |alpha| <= alpha_23.
        """
        r, z = self.r, self.z
        product = math.sinh(2 * r) * math.sinh(2 * z)
        e2r, e2z = math.exp(2 * r), math.exp(2 * z)
        denominator = e2r * (4 * alpha**2 * e2z * math.cosh(r - z)**2 - product)
        if denominator <= 0:
            raise UndefinedBoundary('beta_23', 'non-positive denominator at |alpha|=%g' % alpha)
        return math.sqrt(product * (self.s_term + alpha**2 * e2z) / denominator)

    def as_dict(self):
        return {'r': self.r, 'z': self.z,
                'alpha_13': self.alpha_13, 'alpha_23': self.alpha_23,
                'alpha_circ': self.alpha_circ, 'beta_12': self.beta_12,
                'alpha_single_mode': self.alpha_single_mode}


@dataclass(frozen=True)
class PhaseSearchResult(object):
    """Best input phases found by grid_search_qfi, relative to theta_alpha = 0."""
    theta_beta: float
    theta: float
    phi_zeta: float
    qfi: float
    lattice_distance: float

    @property
    def phases(self):
        """(theta_alpha, theta_beta, theta, phi_zeta), as taken by qfi_closed_form."""
        return (0.0, self.theta_beta, self.theta, self.phi_zeta)

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def pmc_phases(pmc, theta_alpha=0.0, convention=BsConvention.SYMMETRIC):
    """Phases (theta_beta, theta, phi_zeta) satisfying a PMC set.

    The values are left uncanonicalized; GaussianPort maps them onto
    [0, 2 pi).

    Examples
    --------
    >>> pmc_phases(PmcSet.PMC1, math.pi / 4) == (math.pi / 4, math.pi / 2, 1.5 * math.pi)
    True
    """
    pmc = PmcSet(pmc)
    theta = 2 * theta_alpha
    theta_beta = theta_alpha
    if pmc in (PmcSet.PMC1, PmcSet.SQZVAC_OPTIMAL):
        phi_zeta = theta + math.pi
    elif pmc in (PmcSet.PMC2, PmcSet.SQZVAC_WIDEBAND):
        phi_zeta = theta
    else:
        theta_beta = theta_alpha - HALF_PI
        phi_zeta = 2 * theta_beta

    if BsConvention(convention) is BsConvention.CUBE:
        theta_beta -= HALF_PI
        theta -= math.pi
    return theta_beta, theta, phi_zeta


def apply_pmc(pmc, theta_alpha, alpha, beta, r, z, convention=BsConvention.SYMMETRIC):
    """Fully phased input ports for a PMC set.

    Parameters
    ----------
    pmc : PmcSet
    theta_alpha : float
        Reference phase of the port 1 coherent amplitude.
    alpha, beta : float
        Coherent magnitudes of port 1 and port 0.
    r, z : float
        Squeezing factors of port 0 and port 1.

    Returns
    -------
    port1, port0 : GaussianPort
    """
    pmc = PmcSet(pmc)
    if pmc.needs_vacuum_port0 and beta != 0:
        raise ValueError('%s assumes a squeezed vacuum in port 0 (beta=0), got beta=%r'
                         % (pmc.value, beta))
    theta_beta, theta, phi_zeta = pmc_phases(pmc, theta_alpha, convention)
    port1 = GaussianPort.from_polar(alpha, theta_alpha, z, phi_zeta)
    port0 = GaussianPort.from_polar(beta, theta_beta, r, theta)
    return port1, port0


def boundaries(r, z):
    """Evaluate the regime boundaries at squeezing factors (r, z).

    Examples
    --------
    >>> b = boundaries(2.3, 2.2)
    >>> [round(v, 2) for v in (b.alpha_13, b.alpha_23, b.alpha_circ, b.beta_12)]
    [2.54, 2.48, 3.76, 4.99]
    """
    r, z = float(r), float(z)
    if r < 0 or z < 0:
        raise ValueError('squeezing factors must be >= 0, got r=%r, z=%r' % (r, z))

    sinh2r, sinh2z = math.sinh(2 * r), math.sinh(2 * z)
    e2r, e2z = math.exp(2 * r), math.exp(2 * z)
    s_term = 0.5 * (sinh2r**2 + sinh2z**2)
    weight = e2r * (e2r + 2 * e2z) + 1

    beta_12 = math.sqrt(0.5 * sinh2r)
    alpha_13 = math.sqrt(2 * s_term * sinh2z / weight)
    alpha_23 = math.exp(-z) * math.sqrt(sinh2r * sinh2z) / (2 * math.cosh(r - z))
    alpha_circ = math.sqrt(2 * sinh2z * (e2r * beta_12**2 + s_term) / weight)
    cosh2z = math.cosh(2 * z)
    alpha_single_mode = 0.5 * math.sqrt(cosh2z + math.sqrt(4 * cosh2z**2 - 3))
    return RegimeBoundaries(r=r, z=z, alpha_13=alpha_13, alpha_23=alpha_23,
                            alpha_circ=alpha_circ, beta_12=beta_12,
                            alpha_single_mode=alpha_single_mode)


def classify(alpha, beta, r, z):
    """The general-state PMC set with the largest QFI.

    Closed-form QFIs are compared directly. Values within a relative 1e-12
    count as ties and resolve as PMC1, then PMC2, then PMC3.

    Examples
    --------
    >>> classify(0.5, 0.25, 2.3, 2.2), classify(4, 1, 2.3, 2.2)
    (<PmcSet.PMC3: 'pmc3'>, <PmcSet.PMC1: 'pmc1'>)
    """
    values = [qfi_closed_form(alpha, beta, r, z, pmc) for pmc in PmcSet.GENERAL]
    best = max(values)
    floor = best - TIE_RTOL * max(1.0, abs(best))
    for pmc, value in zip(PmcSet.GENERAL, values):
        if value >= floor:
            return pmc


def _lattice_distance(angles):
    distances = [abs(a - HALF_PI * round(a / HALF_PI)) for a in angles]
    return max(distances)


def grid_search_qfi(alpha, beta, r, z, resolution=64, convention=BsConvention.SYMMETRIC):
    """Maximize the QFI over the free input phases by brute force.

    theta_alpha is held at 0 and (theta_beta, theta, phi_zeta) run over a
    uniform grid of `resolution` points per axis. The QFI is evaluated
    through the generic moment path, not the PMC closed forms. The best
    grid point is then refined coordinate by coordinate with a bounded
    scalar search within one grid step.

    Returns
    -------
    result : PhaseSearchResult
    """
    if resolution < 8:
        raise ValueError('resolution must be >= 8, got %r' % (resolution,))
    convention = BsConvention(convention)

    def qfi_of(theta_beta, theta, phi_zeta):
        moments1 = port_moments_arrays(alpha, 0.0, z, phi_zeta)
        moments0 = port_moments_arrays(beta, theta_beta, r, theta)
        return fisher_arrays(moments0, moments1, convention)

    step = TWO_PI / resolution
    axis = np.arange(resolution) * step
    grid = np.meshgrid(axis, axis, axis, indexing='ij')
    f_ss, f_dd, f_sd = qfi_of(*grid)
    with np.errstate(divide='ignore', invalid='ignore'):
        values = np.where(f_ss < SS_ZERO, f_dd, f_dd - f_sd**2 / f_ss)
    index = np.unravel_index(int(np.argmax(values)), values.shape)
    best = [float(axis[i]) for i in index]
    best_value = float(values[index])

    def scalar_qfi(angles):
        f_ss, f_dd, f_sd = qfi_of(*angles)
        return qfi(FisherMatrix(float(f_ss), float(f_dd), float(f_sd)))

    for _ in range(REFINE_SWEEPS):
        for k in range(3):
            def objective(x, k=k):
                trial = list(best)
                trial[k] = x
                return -scalar_qfi(trial)
            result = minimize_scalar(objective, bounds=(best[k] - step, best[k] + step),
                                     method='bounded', options={'xatol': REFINE_XTOL})
            if result.success and -result.fun > best_value:
                best[k] = float(result.x)
                best_value = -float(result.fun)

    best = [canonical_angle(a) for a in best]
    logger.debug('grid search (%s, resolution %d): phases %s, F=%.10g',
                 convention.value, resolution, best, best_value)
    return PhaseSearchResult(theta_beta=best[0], theta=best[1], phi_zeta=best[2],
                             qfi=best_value, lattice_distance=_lattice_distance(best))
