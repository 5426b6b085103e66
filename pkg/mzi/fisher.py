"""Two-parameter Fisher matrix, quantum Fisher information and the quantum
Cramer-Rao bound.

The interferometer phases are split into a sum phase phi_s and a difference
phase phi_d with generators G_s = (n2 + n3)/2 and G_d = (n2 - n3)/2, where 2
and 3 are the arms after the first beam splitter. For a pure state

    F_ij = 4 Cov(G_i, G_j),

so F_ss = Var(n0) + Var(n1) for both conventions. The difference-phase QFI
accounts for the unknown sum phase,

    F = F_dd - F_sd^2 / F_ss.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateMatrix, NonPositiveInformation
from .interferometer import BsConvention, bilinear_moments, mode_map, number_kernel
from .states import port_moments
from .upsilon import upsilon

__all__ = ['FisherMatrix', 'fisher_matrix', 'fisher_from_ports', 'fisher_arrays',
           'qfi', 'qcrb', 'qfi_closed_form', 'qfi_general_phases']

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

# below this F_ss the input is vacuum on both ports
SS_ZERO = 1e-12
SD_ZERO = 1e-9

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


@dataclass(frozen=True)
class FisherMatrix(object):
    """Elements of the symmetric 2x2 Fisher matrix over (phi_s, phi_d)."""
    f_ss: float
    f_dd: float
    f_sd: float

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def fisher_from_ports(port1, port0, convention=BsConvention.SYMMETRIC):
    """Fisher matrix of a separable input from the moments of its ports."""
    m1 = port_moments(port1)
    m0 = port_moments(port0)
    first = mode_map(convention).first
    k2 = number_kernel(first[0])
    k3 = number_kernel(first[1])
    ks, kd = k2 + k3, k2 - k3

    _, f_ss = bilinear_moments(ks, m0, m1)
    _, f_dd = bilinear_moments(kd, m0, m1)
    _, plus = bilinear_moments(ks + kd, m0, m1)
    _, minus = bilinear_moments(ks - kd, m0, m1)
    return FisherMatrix(f_ss=max(f_ss, 0.0), f_dd=max(f_dd, 0.0),
                        f_sd=0.25 * (plus - minus))


def fisher_matrix(scenario):
    """Fisher matrix of an MziScenario.

    Only the ports and the convention enter; the working point and the
    detector efficiency do not.

    Examples
    --------
    >>> from mzi.interferometer import MziScenario
    >>> from mzi.states import GaussianPort
    >>> fm = fisher_matrix(MziScenario(port1=GaussianPort.from_polar(2.0)))
    >>> round(fm.f_dd, 10), abs(fm.f_sd) < 1e-12
    (4.0, True)
    """
    return fisher_from_ports(scenario.port1, scenario.port0, scenario.convention)


def fisher_arrays(moments0, moments1, convention=BsConvention.SYMMETRIC):
    """Vectorized (f_ss, f_dd, f_sd) from port_moments_arrays output.

    Parameters
    ----------
    moments0, moments1 : tuple of ndarray
        (mean_a, mean_a2, mean_n, var_n, corr_na) of port 0 and port 1.
    """
    m0, m2_0, n0, v0, c0 = moments0
    m1, m2_1, n1, v1, c1 = moments1
    convention = BsConvention(convention)

    f_ss = v0 + v1
    pairing = np.real(m2_0 * np.conj(m2_1) - m0**2 * np.conj(m1)**2)
    w = m0 * np.conj(m1) + c0 * np.conj(m1) + m0 * np.conj(c1)
    base = n0 + n1 + 2 * (n0 * n1 - np.abs(m0)**2 * np.abs(m1)**2)
    if convention is BsConvention.SYMMETRIC:
        f_dd = base - 2 * pairing
        f_sd = 2 * np.imag(w)
    else:
        f_dd = base + 2 * pairing
        f_sd = 2 * np.real(w)
    return f_ss, f_dd, f_sd


def qfi(fm):
    """Difference-phase QFI F = F_dd - F_sd^2 / F_ss.

    Raises
    ------
    DegenerateMatrix
        If F_ss vanishes but F_sd does not.

    Examples
    --------
    >>> qfi(FisherMatrix(4.0, 4.0, 0.0))
    4.0
    """
    if fm.f_ss < SS_ZERO:
        if abs(fm.f_sd) >= SD_ZERO:
            raise DegenerateMatrix('F_ss=%g vanishes while F_sd=%g does not' % (fm.f_ss, fm.f_sd))
        return fm.f_dd
    return max(fm.f_dd - fm.f_sd**2 / fm.f_ss, 0.0)


def qcrb(information, shots=1):
    """Quantum Cramer-Rao bound 1/sqrt(shots * F).

    Examples
    --------
    >>> qcrb(4.0, shots=100)
    0.05
    """
    if int(shots) != shots or shots < 1:
        raise ValueError('shots must be a positive integer, got %r' % (shots,))
    if not information > 0:
        raise NonPositiveInformation('the Cramer-Rao bound needs F > 0, got %r' % (information,))
    return 1 / math.sqrt(shots * information)


def qfi_general_phases(alpha, beta, r, z, theta_alpha, theta_beta, theta, phi_zeta,
                       convention=BsConvention.SYMMETRIC):
    """Closed-form Fisher elements for explicit input phases.

    Port 1 carries |alpha| exp(i theta_alpha) squeezed by z exp(i phi_zeta),
    port 0 carries |beta| exp(i theta_beta) squeezed by r exp(i theta). The
    cube convention equals the symmetric one with theta_beta + pi/2 and
    theta + pi. Arguments broadcast as numpy arrays.

    Returns
    -------
    f_ss, f_dd, f_sd : float or ndarray
    """
    if BsConvention(convention) is BsConvention.CUBE:
        theta_beta = np.add(theta_beta, 0.5 * np.pi)
        theta = np.add(theta, np.pi)

    sinh2r, sinh2z = np.sinh(2 * r), np.sinh(2 * z)
    f_ss = (0.5 * sinh2r**2 + upsilon(-1, beta, theta_beta, r, theta)
            + 0.5 * sinh2z**2 + upsilon(-1, alpha, theta_alpha, z, phi_zeta))
    f_dd = (upsilon(+1, beta, theta_beta, z, phi_zeta) + upsilon(+1, alpha, theta_alpha, r, theta)
            + 0.5 * (np.cosh(2 * r) * np.cosh(2 * z)
                     - sinh2r * sinh2z * np.cos(np.subtract(theta, phi_zeta)) - 1))
    total = np.add(theta_alpha, theta_beta)
    f_sd = np.multiply(alpha, beta) * (
        sinh2r * np.sin(total - theta)
        - sinh2z * np.sin(total - phi_zeta)
        - 2 * (1 + np.sinh(r)**2 + np.sinh(z)**2) * np.sin(np.subtract(theta_alpha, theta_beta)))
    return f_ss, f_dd, f_sd


def qfi_closed_form(alpha, beta, r, z, pmc=None, convention=BsConvention.SYMMETRIC, phases=None):
    """Closed-form QFI for a phase-matching set or for explicit phases.

    Parameters
    ----------
    alpha, beta : float
        Coherent magnitudes of port 1 and port 0.
    r, z : float
        Squeezing factors of port 0 (xi) and port 1 (zeta).
    pmc : PmcSet, optional
        Phase-matching set. The optimum it reaches is the same under both
        conventions, so `convention` only matters together with `phases`.
    phases : tuple, optional
        (theta_alpha, theta_beta, theta, phi_zeta), used when pmc is None.

    Examples
    --------
    >>> from mzi.pmc import PmcSet
    >>> round(qfi_closed_form(1.0, 1.0, 0.5, 0.5, PmcSet.PMC2), 12) == round(2 * math.e, 12)
    True
    """
    from .pmc import PmcSet

    if pmc is None:
        if phases is None:
            raise ValueError('either a PmcSet or explicit phases are required')
        f_ss, f_dd, f_sd = qfi_general_phases(alpha, beta, r, z, *phases, convention=convention)
        return qfi(FisherMatrix(float(f_ss), float(f_dd), float(f_sd)))

    pmc = PmcSet(pmc)
    a2, b2 = alpha**2, beta**2
    e2r, e2z = math.exp(2 * r), math.exp(2 * z)
    if pmc in (PmcSet.SQZVAC_OPTIMAL, PmcSet.SQZVAC_WIDEBAND) and beta != 0:
        raise ValueError('%s assumes a squeezed vacuum in port 0 (beta=0), got beta=%r'
                         % (pmc.value, beta))

    if pmc in (PmcSet.PMC1, PmcSet.SQZVAC_OPTIMAL):
        return a2 * e2r + b2 / e2z + math.sinh(r + z)**2
    if pmc in (PmcSet.PMC2, PmcSet.SQZVAC_WIDEBAND):
        return a2 * e2r + b2 * e2z + math.sinh(r - z)**2

    # PMC3
    f_dd = a2 * e2r + b2 * e2z + math.sinh(r + z)**2
    numerator = a2 * b2 * (e2r + e2z)**2
    if numerator == 0:
        return f_dd
    s_term = 0.5 * (math.sinh(2 * r)**2 + math.sinh(2 * z)**2)
    return f_dd - numerator / (s_term + b2 * e2r + a2 * e2z)
