"""Exceptions raised by the mzi library.

Everything derives from MziError so the command line layer can map
library failures onto exit codes in one place.
"""
#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------

__all__ = ['MziError', 'DegenerateMatrix', 'NonPositiveInformation',
           'NegativeVariance', 'FlatObjective', 'InvalidEfficiency',
           'UndefinedBoundary', 'TruncationError', 'StepTooCoarse',
           'VerificationFailure']


class MziError(Exception):
    """Base class for all errors raised by mzi."""


class DegenerateMatrix(MziError):
    """F_ss vanishes but F_sd does not, so the QFI is undefined."""


class NonPositiveInformation(MziError):
    """A Cramer-Rao bound was requested for F <= 0."""


class NegativeVariance(MziError):
    """A closed-form variance came out negative beyond round-off.

    This never happens for a correct implementation.
    """


class FlatObjective(MziError):
    """The sensitivity is infinite at every phase, so there is no working point."""


class InvalidEfficiency(MziError, ValueError):
    """Detector efficiency outside (0, 1]."""


class UndefinedBoundary(MziError):
    """A regime boundary radicand is negative (or its denominator is not positive)."""

    def __init__(self, field, message):
        self.field = field
        super(UndefinedBoundary, self).__init__('%s: %s' % (field, message))


class TruncationError(MziError):
    """The Fock truncation leaks more probability than allowed."""

    def __init__(self, tail, n_max, tol):
        self.tail = tail
        self.n_max = n_max
        self.tol = tol
        super(TruncationError, self).__init__(
            'Fock truncation at n_max=%d leaves a tail mass of %.3e '
            '(tolerance %.1e). Use a larger n_max or smaller amplitudes.'
            % (n_max, tail, tol))


class StepTooCoarse(MziError):
    """Richardson check on a finite-difference Fisher matrix failed."""


class VerificationFailure(MziError):
    """One or more oracle comparisons did not agree."""
