"""Heisenberg scaling in terms of power fractions.

The total mean photon number N = |alpha|^2 + |beta|^2 + sinh^2 r + sinh^2 z is
split into fractions f_alpha, f_beta, f_r, f_z. In the limit where every
contribution is large the QFI of each PMC family becomes N^2 times a
polynomial (rational, for PMC3) in the fractions, and all families top out
at F = N^2.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import itertools
import math
from dataclasses import dataclass

from .pmc import PmcSet, apply_pmc
from .interferometer import BsConvention

__all__ = ['PowerFractions', 'asymptotic_qfi', 'HeisenbergOptimum', 'heisenberg_optima',
           'fractions_to_parameters', 'fractions_to_ports', 'simplex_grid']

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

SUM_TOL = 1e-12
FIELDS = ('f_alpha', 'f_beta', 'f_r', 'f_z')

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerFractions(object):
    """Fractions of the total mean photon number n_tot held by each resource."""
    f_alpha: float
    f_beta: float
    f_r: float
    f_z: float
    n_tot: float = 1.0

    def __post_init__(self):
        for name in FIELDS:
            value = float(getattr(self, name))
            if not 0 <= value <= 1:
                raise ValueError('%s must lie in [0, 1], got %r' % (name, value))
            object.__setattr__(self, name, value)
        total = self.f_alpha + self.f_beta + self.f_r + self.f_z
        if abs(total - 1) > SUM_TOL:
            raise ValueError('power fractions must sum to 1, got %r' % total)
        if not self.n_tot > 0:
            raise ValueError('n_tot must be > 0, got %r' % (self.n_tot,))
        object.__setattr__(self, 'n_tot', float(self.n_tot))

    @classmethod
    def from_ports(cls, port1, port0):
        """Fractions of an actual input.

        Examples
        --------
        >>> from mzi.states import GaussianPort
        >>> f = PowerFractions.from_ports(GaussianPort.from_polar(1.0), GaussianPort.from_polar(1.0))
        >>> f.f_alpha, f.f_beta, f.n_tot
        (0.5, 0.5, 2.0)
        """
        parts = (port1.displacement.magnitude**2, port0.displacement.magnitude**2,
                 math.sinh(port0.squeeze.factor)**2, math.sinh(port1.squeeze.factor)**2)
        n_tot = sum(parts)
        if n_tot <= 0:
            raise ValueError('both ports are in vacuum, power fractions are undefined')
        return cls(*(p / n_tot for p in parts), n_tot=n_tot)

    def as_tuple(self):
        return tuple(getattr(self, name) for name in FIELDS)


@dataclass(frozen=True)
class HeisenbergOptimum(object):
    """Fraction manifolds on which a PMC family reaches F = value N^2.

    Each manifold is a tuple of constraints ``(fields, total)``: the listed
    fractions sum to ``total``. A fraction set is optimal if it satisfies
    every constraint of at least one manifold.
    """
    pmc: PmcSet
    manifolds: tuple
    representative: PowerFractions
    value: float = 1.0

    def contains(self, f, tol=1e-9):
        for manifold in self.manifolds:
            if all(abs(sum(getattr(f, name) for name in fields) - total) <= tol
                   for fields, total in manifold):
                return True
        return False

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def asymptotic_qfi(pmc, f):
    """Large-N QFI of a PMC family for power fractions f.

    Examples
    --------
    >>> f = PowerFractions(1/6, 1/6, 1/3, 1/3, n_tot=3.0)
    >>> round(asymptotic_qfi(PmcSet.PMC2, f), 12)
    4.0
    """
    pmc = PmcSet(pmc)
    fa, fb, fr, fz = f.f_alpha, f.f_beta, f.f_r, f.f_z
    if pmc in (PmcSet.PMC1, PmcSet.SQZVAC_OPTIMAL):
        scaled = 4 * fr * (fa + fz)
    elif pmc is PmcSet.SQZVAC_WIDEBAND:
        scaled = 4 * fa * fr
    elif pmc is PmcSet.PMC2:
        scaled = 4 * (fa * fr + fb * fz)
    else:
        scaled = 4 * (fa * fr + fb * fz + fr * fz)
        numerator = fa * fb * (fr + fz)**2
        if numerator > 0:
            scaled -= 8 * numerator / (fr**2 + fz**2 + 2 * fb * fr + 2 * fa * fz)
    return scaled * f.n_tot**2


def _constraint(*pairs):
    return tuple(((name,) if isinstance(name, str) else name, total) for name, total in pairs)


def heisenberg_optima(pmc):
    """Where a PMC family reaches the Heisenberg limit F = N^2.

    Examples
    --------
    >>> opt = heisenberg_optima(PmcSet.PMC2)
    >>> opt.contains(PowerFractions(0.0, 0.5, 0.0, 0.5))
    True
    """
    pmc = PmcSet(pmc)
    if pmc in (PmcSet.PMC1, PmcSet.SQZVAC_OPTIMAL):
        # the split between f_alpha and f_z is free
        manifolds = (_constraint(('f_r', 0.5), (('f_alpha', 'f_z'), 0.5), ('f_beta', 0.0)),)
        representative = PowerFractions(0.5, 0.0, 0.5, 0.0)
    elif pmc is PmcSet.SQZVAC_WIDEBAND:
        manifolds = (_constraint(('f_alpha', 0.5), ('f_r', 0.5)),)
        representative = PowerFractions(0.5, 0.0, 0.5, 0.0)
    elif pmc is PmcSet.PMC2:
        manifolds = (_constraint(('f_alpha', 0.5), ('f_r', 0.5)),
                     _constraint(('f_beta', 0.5), ('f_z', 0.5)))
        representative = PowerFractions(0.5, 0.0, 0.5, 0.0)
    else:
        manifolds = (_constraint(('f_beta', 0.0), ('f_r', 0.5), (('f_alpha', 'f_z'), 0.5)),
                     _constraint(('f_alpha', 0.0), ('f_z', 0.5), (('f_beta', 'f_r'), 0.5)))
        representative = PowerFractions(0.0, 0.0, 0.5, 0.5)
    return HeisenbergOptimum(pmc=pmc, manifolds=manifolds, representative=representative)


def fractions_to_parameters(f):
    """(alpha, beta, r, z) carrying the fractions f of f.n_tot photons.

    The squeezing factors invert sinh^2 s = f n_tot exactly.
    """
    n = f.n_tot
    return (math.sqrt(f.f_alpha * n), math.sqrt(f.f_beta * n),
            math.asinh(math.sqrt(f.f_r * n)), math.asinh(math.sqrt(f.f_z * n)))


def fractions_to_ports(f, pmc, theta_alpha=0.0, convention=BsConvention.SYMMETRIC):
    """Input ports (port1, port0) with fractions f, phased by a PMC set."""
    alpha, beta, r, z = fractions_to_parameters(f)
    return apply_pmc(pmc, theta_alpha, alpha, beta, r, z, convention)


def simplex_grid(steps, n_tot=1.0, vacuum_port0=False):
    """All PowerFractions with every fraction a multiple of 1/steps.

    With ``vacuum_port0`` only the fractions with f_beta = 0 are produced.

    Examples
    --------
    >>> len(list(simplex_grid(2)))
    10
    """
    steps = int(steps)
    if steps < 1:
        raise ValueError('steps must be >= 1, got %r' % (steps,))
    for i, j, k in itertools.product(range(steps + 1), repeat=3):
        rest = steps - i - j - k
        if rest < 0 or (vacuum_port0 and j):
            continue
        yield PowerFractions(i / steps, j / steps, k / steps, rest / steps, n_tot=n_tot)
