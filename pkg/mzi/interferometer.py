"""The Mach-Zehnder scenario and the two beam-splitter conventions.

Mode labels: 0 and 1 are the input ports (port 0 carries beta/xi, port 1
carries alpha/zeta), 2 and 3 are the interferometer arms, 4 and 5 the output
ports. Matrices here are Heisenberg maps on annihilation operators,

    (a4, a5)^T = U(phi) (a0, a1)^T,

so row i of U holds the input coefficients of output mode 4+i. For the
symmetric convention

    a4 = -sin(phi/2) a0 + cos(phi/2) a1
    a5 =  cos(phi/2) a0 + sin(phi/2) a1

and every U(phi) factorizes as second @ diag(arm phases) @ first, which is
how the Fock oracle realizes it.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import InvalidEfficiency
from .states import GaussianPort

__all__ = ['BsConvention', 'ModeMap', 'MziScenario', 'mode_map',
           'number_kernel', 'bilinear_moments']

_SQRT_HALF = 1 / math.sqrt(2)

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


class BsConvention(enum.Enum):
    """Beam-splitter convention: exp(i pi J_x / 2) or exp(i pi J_y / 2)."""
    SYMMETRIC = 'symmetric'
    CUBE = 'cube'


@dataclass(frozen=True, eq=False)
class ModeMap(object):
    """Input to output coefficients of the whole interferometer.

    Attributes
    ----------
    convention : BsConvention
    first : ndarray, shape (2, 2)
        Heisenberg map (a0, a1) -> (a2, a3) of the first beam splitter.
    second : ndarray, shape (2, 2)
        Heisenberg map (a2, a3) -> (a4, a5) of the second beam splitter.
    arm_sign : int
        The arms pick up exp(i arm_sign phi/2) and exp(-i arm_sign phi/2).
    """
    convention: BsConvention
    first: np.ndarray
    second: np.ndarray
    arm_sign: int

    def arm_phases(self, phi):
        half = 0.5 * self.arm_sign * phi
        return half, -half

    def matrix(self, phi):
        s, c = math.sin(phi / 2), math.cos(phi / 2)
        if self.convention is BsConvention.SYMMETRIC:
            return np.array([[-s, c], [c, s]], dtype=complex)
        return np.array([[1j * s, c], [c, 1j * s]], dtype=complex)

    def derivative(self, phi):
        """d matrix(phi) / d phi."""
        s, c = 0.5 * math.sin(phi / 2), 0.5 * math.cos(phi / 2)
        if self.convention is BsConvention.SYMMETRIC:
            return np.array([[-c, -s], [-s, c]], dtype=complex)
        return np.array([[1j * c, -s], [-s, 1j * c]], dtype=complex)


@dataclass(frozen=True)
class MziScenario(object):
    """Two input ports, a convention, the total internal phase and the
    detector efficiency shared by all detectors."""
    port1: GaussianPort = field(default_factory=GaussianPort)
    port0: GaussianPort = field(default_factory=GaussianPort)
    convention: BsConvention = BsConvention.SYMMETRIC
    phase: float = 0.5 * math.pi
    efficiency: float = 1.0

    def __post_init__(self):
        eta = float(self.efficiency)
        if not 0 < eta <= 1:
            raise InvalidEfficiency('detector efficiency must lie in (0, 1], got %r' % eta)
        object.__setattr__(self, 'efficiency', eta)
        object.__setattr__(self, 'phase', float(self.phase))
        object.__setattr__(self, 'convention', BsConvention(self.convention))

    def with_phase(self, phase):
        return replace(self, phase=phase)

    def with_efficiency(self, efficiency):
        return replace(self, efficiency=efficiency)

    def with_ports(self, port1=None, port0=None):
        return replace(self, port1=port1 or self.port1, port0=port0 or self.port0)

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

_MODE_MAPS = {
    BsConvention.SYMMETRIC: ModeMap(
        BsConvention.SYMMETRIC,
        first=_SQRT_HALF * np.array([[1, 1j], [1j, 1]]),
        second=_SQRT_HALF * np.array([[-1j, 1], [1, -1j]]),
        arm_sign=-1),
    BsConvention.CUBE: ModeMap(
        BsConvention.CUBE,
        first=_SQRT_HALF * np.array([[1, 1], [-1, 1]], dtype=complex),
        second=_SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex),
        arm_sign=1),
}

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def mode_map(convention):
    """The coefficient table of one beam-splitter convention.

    Examples
    --------
    >>> bool(np.allclose(mode_map(BsConvention.SYMMETRIC).matrix(0.0), [[0, 1], [1, 0]]))
    True
    """
    return _MODE_MAPS[BsConvention(convention)]


def number_kernel(row):
    """Kernel K with a_out^dagger a_out = sum_jk K_jk a_j^dagger a_k.

    Parameters
    ----------
    row : array_like, shape (2,)
        Input coefficients of the output mode.
    """
    row = np.asarray(row, dtype=complex)
    return np.outer(np.conj(row), row)


def bilinear_moments(kernel, p0, p1):
    """Mean and variance of O = sum_jk K_jk a_j^dagger a_k on a product input.

    Parameters
    ----------
    kernel : ndarray, shape (2, 2)
        Hermitian kernel, index 0 is port 0 and index 1 is port 1.
    p0, p1 : PortMoments
        Moments of port 0 and port 1.

    Returns
    -------
    mean, variance : float
        The variance is returned as computed, so tiny negative round-off is
        left for the caller to judge.
    """
    k00 = float(np.real(kernel[0, 0]))
    k11 = float(np.real(kernel[1, 1]))
    k01 = complex(kernel[0, 1])
    m0, m1 = p0.mean_a, p1.mean_a
    n0, n1 = p0.mean_n, p1.mean_n

    cross = 2 * (k01 * m0.conjugate() * m1).real
    mean = k00 * n0 + k11 * n1 + cross

    hopping = (2 * (k01**2 * p0.mean_a2.conjugate() * p1.mean_a2).real
               + abs(k01)**2 * (n0 + n1 + 2 * n0 * n1)
               - cross**2)
    variance = (k00**2 * p0.var_n + k11**2 * p1.var_n + hopping
                + 4 * k00 * (k01 * (p0.corr_na.conjugate() + 0.5 * m0.conjugate()) * m1).real
                + 4 * k11 * (k01 * m0.conjugate() * (p1.corr_na + 0.5 * m1)).real)
    return mean, variance
