"""Gaussian input preparations and their single-mode moments.

A port is prepared as D(alpha) S(chi) |0>: the vacuum is squeezed first and
then displaced. Every closed-form result in this package is assembled from the
five PortMoments of the two input ports.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import math
from dataclasses import dataclass, field

import numpy as np

from .upsilon import upsilon

__all__ = ['TWO_PI', 'canonical_angle', 'Coherent', 'Squeeze', 'GaussianPort',
           'PortMoments', 'port_moments', 'port_moments_arrays']

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

TWO_PI = 2 * math.pi

#-----------------------------------------------------------------------------
# Utilities
#-----------------------------------------------------------------------------


def canonical_angle(angle):
    """Map an angle onto [0, 2 pi).

    Examples
    --------
    >>> canonical_angle(-math.pi / 2) == 1.5 * math.pi
    True
    >>> canonical_angle(-1e-18)
    0.0
    """
    value = float(np.mod(float(angle), TWO_PI))
    # np.mod can round up to exactly 2 pi for tiny negative inputs
    if value >= TWO_PI:
        return 0.0
    return value


def _check_non_negative(name, value):
    value = float(value)
    if not value >= 0:
        raise ValueError('%s must be >= 0, got %r' % (name, value))
    return value

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


@dataclass(frozen=True)
class Coherent(object):
    """A coherent amplitude |g| exp(i theta_g)."""
    magnitude: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        magnitude = _check_non_negative('magnitude', self.magnitude)
        phase = canonical_angle(self.phase) if magnitude > 0 else 0.0
        object.__setattr__(self, 'magnitude', magnitude)
        object.__setattr__(self, 'phase', phase)

    @property
    def value(self):
        return self.magnitude * complex(math.cos(self.phase), math.sin(self.phase))


@dataclass(frozen=True)
class Squeeze(object):
    """A squeeze parameter s exp(i vartheta) with s >= 0."""
    factor: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        factor = _check_non_negative('factor', self.factor)
        phase = canonical_angle(self.phase) if factor > 0 else 0.0
        object.__setattr__(self, 'factor', factor)
        object.__setattr__(self, 'phase', phase)


@dataclass(frozen=True)
class GaussianPort(object):
    """One input mode prepared as D(displacement) S(squeeze) |0>."""
    displacement: Coherent = field(default_factory=Coherent)
    squeeze: Squeeze = field(default_factory=Squeeze)

    @classmethod
    def vacuum(cls):
        return cls()

    @classmethod
    def from_polar(cls, magnitude=0.0, phase=0.0, factor=0.0, squeeze_phase=0.0):
        """Build a port from the four real parameters.

        Examples
        --------
        >>> GaussianPort.from_polar(1.0, 0.0, 0.5, math.pi).squeeze.phase == math.pi
        True
        """
        return cls(Coherent(magnitude, phase), Squeeze(factor, squeeze_phase))

    @property
    def is_vacuum(self):
        return self.displacement.magnitude == 0 and self.squeeze.factor == 0


@dataclass(frozen=True)
class PortMoments(object):
    """<a>, <a^2>, <n>, Var(n) and <n a> - <n><a> of one port."""
    mean_a: complex
    mean_a2: complex
    mean_n: float
    var_n: float
    corr_na: complex

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def port_moments_arrays(magnitude, phase, factor, squeeze_phase):
    """Vectorized moments of D(alpha) S(chi) |0>.

    All four arguments broadcast together. Returns the tuple
    (mean_a, mean_a2, mean_n, var_n, corr_na) as numpy arrays.
    """
    magnitude = np.asarray(magnitude, dtype=float)
    phase = np.asarray(phase, dtype=float)
    factor = np.asarray(factor, dtype=float)
    squeeze_phase = np.asarray(squeeze_phase, dtype=float)

    alpha = magnitude * np.exp(1j * phase)
    rotation = np.exp(1j * squeeze_phase)
    sinh2 = np.sinh(2 * factor)
    sinh_sq = np.sinh(factor)**2

    mean_a = alpha * np.ones_like(sinh2)
    mean_a2 = alpha**2 - 0.5 * sinh2 * rotation
    mean_n = magnitude**2 + sinh_sq
    var_n = 0.5 * sinh2**2 + upsilon(-1, magnitude, phase, factor, squeeze_phase)
    corr_na = alpha * sinh_sq - 0.5 * np.conj(alpha) * sinh2 * rotation
    return mean_a, mean_a2, mean_n, var_n, corr_na


def port_moments(port):
    """The five single-mode moments of a GaussianPort.

    Parameters
    ----------
    port : GaussianPort

    Returns
    -------
    moments : PortMoments

    Examples
    --------
    >>> m = port_moments(GaussianPort.from_polar(2.0))
    >>> m.mean_n, m.var_n
    (4.0, 4.0)
    """
    m, m2, n, v, c = port_moments_arrays(
        port.displacement.magnitude, port.displacement.phase,
        port.squeeze.factor, port.squeeze.phase)
    return PortMoments(mean_a=complex(m), mean_a2=complex(m2),
                       mean_n=float(n), var_n=float(v), corr_na=complex(c))
