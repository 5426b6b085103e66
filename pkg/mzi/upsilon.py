"""The two squeezing-modulated coherent fluctuation factors

    upsilon_plus(g, x)  = |g|^2 (cosh 2s + sinh 2s cos(2 theta_g - vartheta))
    upsilon_minus(g, x) = |g|^2 (cosh 2s - sinh 2s cos(2 theta_g - vartheta))

where g = |g| exp(i theta_g) is a coherent amplitude and x = s exp(i vartheta)
a squeeze parameter. upsilon_plus is 4|g|^2 times the variance of the
quadrature at angle 2 theta_g - vartheta of the squeezed vacuum S(x)|0>.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import numpy as np

__all__ = ['upsilon', 'upsilon_plus', 'upsilon_minus']

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def upsilon(sign, magnitude, phase, factor, squeeze_phase):
    """Evaluate upsilon_plus (sign=+1) or upsilon_minus (sign=-1).

    All arguments broadcast as numpy arrays, so this is also the vectorized
    kernel behind the phase-grid searches.

    Parameters
    ----------
    sign : {+1, -1}
    magnitude, phase : array_like
        Coherent amplitude |g| and its phase theta_g.
    factor, squeeze_phase : array_like
        Squeezing factor s and squeeze phase vartheta.

    Examples
    --------
    >>> bool(np.isclose(upsilon(+1, 1.0, 0.0, 0.5, 0.0), np.exp(1.0)))
    True
    """
    if sign not in (1, -1):
        raise ValueError('sign must be +1 or -1, not %r' % (sign,))
    magnitude = np.asarray(magnitude, dtype=float)
    factor = np.asarray(factor, dtype=float)
    angle = 2 * np.asarray(phase, dtype=float) - np.asarray(squeeze_phase, dtype=float)
    value = magnitude**2 * (np.cosh(2 * factor) + sign * np.sinh(2 * factor) * np.cos(angle))
    if value.ndim == 0:
        return float(value)
    return value


def upsilon_plus(gamma, chi):
    """Squeezing-enhanced coherent fluctuations.

    Parameters
    ----------
    gamma : Coherent
    chi : Squeeze

    Returns
    -------
    value : float
        Lies in [|g|^2 exp(-2s), |g|^2 exp(2s)].
    """
    return upsilon(+1, gamma.magnitude, gamma.phase, chi.factor, chi.phase)


def upsilon_minus(gamma, chi):
    """Squeezing-reduced coherent fluctuations, see upsilon_plus."""
    return upsilon(-1, gamma.magnitude, gamma.phase, chi.factor, chi.phase)
