"""Truncated Fock-space simulation of the interferometer.

This module shares no formulas with the closed-form code. A two-mode pure
state is stored as a (n_max+1, n_max+1) amplitude array indexed by the photon
numbers of the two modes of the current stage: (0, 1) at the input, (2, 3)
inside the arms and (4, 5) at the output. Ports are prepared with truncated
operator exponentials, and each beam splitter is applied block by block on
the subspaces of fixed total photon number, where it acts as exp(i G_N).

The truncation is certified, not assumed: a state whose probability mass
leaks out of the box, or reaches the top two total-number shells, raises
TruncationError.
"""
#-----------------------------------------------------------------------------
# Imports
#-----------------------------------------------------------------------------

import functools
import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, schur
from scipy.special import gammaln
from scipy.stats import binom

from .exceptions import StepTooCoarse, TruncationError
from .fisher import FisherMatrix
from .interferometer import BsConvention, mode_map

__all__ = ['FockVector', 'prepare', 'split', 'apply_arm_phases', 'evolve',
           'OBSERVABLES', 'measure_stats', 'numerical_fisher',
           'squeezed_vacuum_amplitudes', 'detected_distribution', 'fidelity']

logger = logging.getLogger(__name__)

#-----------------------------------------------------------------------------
# Globals
#-----------------------------------------------------------------------------

N_MAX = 60
TAIL_TOL = 1e-10
FD_STEP = 1e-4
RICHARDSON_RTOL = 1e-5

INPUT_MODES = (0, 1)
ARM_MODES = (2, 3)
OUTPUT_MODES = (4, 5)

OBSERVABLES = ('n4', 'n5', 'nd', 'n4_sq', 'nd_sq', 'x', 'x_sq')

#-----------------------------------------------------------------------------
# Classes
#-----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FockVector(object):
    """Two-mode amplitudes, ``amplitudes[n_a, n_b]`` for ``modes = (a, b)``."""
    amplitudes: np.ndarray
    modes: tuple = INPUT_MODES

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 2 or amplitudes.shape[0] != amplitudes.shape[1]:
            raise ValueError('amplitudes must be a square 2-D array, got shape %s'
                             % (amplitudes.shape,))
        if amplitudes.shape[0] < 2:
            raise ValueError('n_max must be >= 1')
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)
        object.__setattr__(self, 'modes', tuple(self.modes))

    @classmethod
    def basis(cls, n_a, n_b, n_max=N_MAX, modes=INPUT_MODES):
        """The number state |n_a, n_b>."""
        amplitudes = np.zeros((n_max + 1, n_max + 1), dtype=complex)
        amplitudes[n_a, n_b] = 1.0
        return cls(amplitudes, modes)

    @property
    def n_max(self):
        return self.amplitudes.shape[0] - 1

    @property
    def probabilities(self):
        return np.abs(self.amplitudes)**2

    @property
    def norm(self):
        """Total probability held in the box."""
        return float(self.probabilities.sum())

    @property
    def tail(self):
        """Probability outside the box plus the mass of the top two shells."""
        n_max = self.n_max
        k = np.arange(n_max + 1)
        total = k[:, None] + k[None, :]
        edge = float(self.probabilities[total >= n_max - 1].sum())
        return max(0.0, 1.0 - self.norm) + edge

    def mean_number(self, which):
        """<n> of the first (which=0) or second (which=1) mode."""
        marginal = self.probabilities.sum(axis=1 - which)
        return float(np.dot(np.arange(self.n_max + 1), marginal))

    def _replace(self, amplitudes, modes=None):
        return FockVector(amplitudes, self.modes if modes is None else modes)

#-----------------------------------------------------------------------------
# Utilities
#-----------------------------------------------------------------------------


def _lowering(dim):
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def _generator(matrix):
    """Hermitian K with expm(i K) == matrix for a unitary matrix."""
    t, z = schur(np.asarray(matrix, dtype=complex), output='complex')
    return z @ np.diag(np.angle(np.diag(t))) @ z.conj().T


def _block_generator(kernel, total):
    """G_N of sum_jk K_jk a_j^dagger a_k on the states |k, total - k>."""
    k = np.arange(total + 1)
    g = np.diag(kernel[0, 0] * k + kernel[1, 1] * (total - k)).astype(complex)
    up = np.arange(total)
    g[up + 1, up] = kernel[0, 1] * np.sqrt((up + 1) * (total - up))
    down = np.arange(1, total + 1)
    g[down - 1, down] = kernel[1, 0] * np.sqrt(down * (total - down + 1))
    return g


@functools.lru_cache(maxsize=16)
def _blocks(convention, stage, n_max):
    """Per-total-number unitaries of one beam splitter inside the box.

    Returns a tuple of (k, block) pairs: ``k`` are the occupations of the
    first mode that fit in the box at that total, ``block`` is U_N
    restricted to them.
    """
    matrix = getattr(mode_map(BsConvention(convention)), stage)
    kernel = _generator(matrix)
    blocks = []
    for total in range(2 * n_max + 1):
        k = np.arange(max(0, total - n_max), min(total, n_max) + 1)
        unitary = expm(1j * _block_generator(kernel, total))
        blocks.append((k, unitary[np.ix_(k, k)]))
    return tuple(blocks)


def _beam_splitter(state, convention, stage, modes):
    amplitudes = state.amplitudes
    out = np.zeros_like(amplitudes)
    total = 0
    for k, block in _blocks(BsConvention(convention).value, stage, state.n_max):
        out[k, total - k] = block @ amplitudes[k, total - k]
        total += 1
    return state._replace(out, modes)


def _prepare_port(port, n_max):
    dim = 2 * (n_max + 1)
    a = _lowering(dim)
    ad = a.conj().T
    chi = port.squeeze.factor * np.exp(1j * port.squeeze.phase)
    vector = expm(0.5 * (np.conj(chi) * a @ a - chi * ad @ ad))[:, 0]
    gamma = port.displacement.value
    vector = expm(gamma * ad - np.conj(gamma) * a) @ vector
    return vector[:n_max + 1]

#-----------------------------------------------------------------------------
# Functions
#-----------------------------------------------------------------------------


def prepare(scenario, n_max=N_MAX, tol=TAIL_TOL):
    """The product input D1 S1 D0 S0 |0> in a box of n_max photons per mode.

    The state is not renormalized, so whatever the box cuts away shows up
    in ``tail``.

    Raises
    ------
    TruncationError
        If the tail mass reaches `tol`.

    Examples
    --------
    >>> from mzi.interferometer import MziScenario
    >>> complex(prepare(MziScenario(), n_max=4).amplitudes[0, 0])
    (1+0j)
    """
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError('n_max must be >= 1, got %r' % (n_max,))
    psi0 = _prepare_port(scenario.port0, n_max)
    psi1 = _prepare_port(scenario.port1, n_max)
    state = FockVector(np.outer(psi0, psi1), INPUT_MODES)
    tail = state.tail
    logger.debug('prepared input at n_max=%d, tail mass %.3e', n_max, tail)
    if tail >= tol:
        raise TruncationError(tail, n_max, tol)
    return state


def split(state, convention=BsConvention.SYMMETRIC):
    """Apply the first beam splitter, input modes (0, 1) -> arms (2, 3)."""
    return _beam_splitter(state, convention, 'first', ARM_MODES)


def apply_arm_phases(state, phi1, phi2):
    """Multiply by exp(i (phi1 n_a + phi2 n_b))."""
    k = np.arange(state.n_max + 1)
    phases = np.outer(np.exp(1j * phi1 * k), np.exp(1j * phi2 * k))
    return state._replace(state.amplitudes * phases)


def evolve(state, phi, convention=BsConvention.SYMMETRIC):
    """Send an input state through the whole interferometer at phase phi.

    Examples
    --------
    >>> out = evolve(FockVector.basis(0, 1, n_max=3), 0.0)
    >>> round(out.mean_number(0), 12)
    1.0
    """
    convention = BsConvention(convention)
    arms = split(state, convention)
    arms = apply_arm_phases(arms, *mode_map(convention).arm_phases(phi))
    return _beam_splitter(arms, convention, 'second', OUTPUT_MODES)


def measure_stats(state, observable, local_phase=0.0):
    """Expectation value of an output observable.

    Parameters
    ----------
    state : FockVector
        An output-stage state, modes (4, 5).
    observable : str
        One of OBSERVABLES: 'n4', 'n5', 'nd' (n4 - n5), their squares
        'n4_sq' and 'nd_sq', and the output 4 quadrature
        X = Re(exp(-i local_phase) a4) as 'x' and 'x_sq'.
    """
    if state.modes != OUTPUT_MODES:
        raise ValueError('measure_stats needs an output state, got modes %s' % (state.modes,))
    if observable not in OBSERVABLES:
        raise ValueError('unknown observable %r, expected one of %s'
                         % (observable, ', '.join(OBSERVABLES)))
    prob = state.probabilities
    k = np.arange(state.n_max + 1, dtype=float)
    n4 = k[:, None] * np.ones_like(prob)
    n5 = np.ones_like(prob) * k[None, :]

    if observable in ('n4', 'n5', 'nd', 'n4_sq', 'nd_sq'):
        values = {'n4': n4, 'n5': n5, 'nd': n4 - n5,
                  'n4_sq': n4**2, 'nd_sq': (n4 - n5)**2}[observable]
        return float(np.sum(prob * values))

    amps = state.amplitudes
    root = np.sqrt(k[1:])[:, None]
    mean_a = np.sum(np.conj(amps[:-1]) * root * amps[1:])
    rotation = np.exp(-1j * local_phase)
    if observable == 'x':
        return float(np.real(rotation * mean_a))
    pair = np.sqrt(k[2:] * k[1:-1])[:, None]
    mean_a2 = np.sum(np.conj(amps[:-2]) * pair * amps[2:])
    mean_n = float(np.sum(prob * n4))
    return float(0.5 * np.real(rotation**2 * mean_a2) + 0.25 * (2 * mean_n + 1))


def numerical_fisher(scenario, n_max=N_MAX, step=FD_STEP):
    """Fisher matrix over (phi_s, phi_d) by central finite differences.

    The arms pick up exp(i phi1 n2) and exp(i phi2 n3) with
    phi1 = (phi_s + phi_d)/2 and phi2 = (phi_s - phi_d)/2, and

        F_ij = 4 Re(<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>).

    The matrix is computed at `step` and `step`/2, and the finer one is
    returned if the two agree.

    Raises
    ------
    TruncationError
        From the preparation.
    StepTooCoarse
        If halving the step moves any element by more than 1e-5 of the
        largest diagonal element.
    """
    if not 1e-5 <= step <= 1e-3:
        raise ValueError('finite-difference step must lie in [1e-5, 1e-3], got %r' % (step,))
    arms = split(prepare(scenario, n_max), scenario.convention)
    psi = arms.amplitudes.ravel()

    def shifted(phi_s, phi_d):
        moved = apply_arm_phases(arms, 0.5 * (phi_s + phi_d), 0.5 * (phi_s - phi_d))
        return moved.amplitudes.ravel()

    def estimate(h):
        d_s = (shifted(h, 0.0) - shifted(-h, 0.0)) / (2 * h)
        d_d = (shifted(0.0, h) - shifted(0.0, -h)) / (2 * h)

        def element(di, dj):
            return 4 * np.real(np.vdot(di, dj) - np.vdot(di, psi) * np.vdot(psi, dj))
        return np.array([element(d_s, d_s), element(d_d, d_d), element(d_s, d_d)])

    coarse = estimate(step)
    fine = estimate(0.5 * step)
    scale = max(abs(fine[0]), abs(fine[1]), 1.0)
    change = float(np.max(np.abs(fine - coarse)))
    if change > RICHARDSON_RTOL * scale:
        raise StepTooCoarse('halving the step %g moved the Fisher matrix by %.3e (scale %.3e)'
                            % (step, change, scale))
    return FisherMatrix(f_ss=float(fine[0]), f_dd=float(fine[1]), f_sd=float(fine[2]))


def squeezed_vacuum_amplitudes(squeeze, dim):
    """Closed-form Fock amplitudes of S(chi)|0>.

    With tau = exp(i vartheta) tanh s and nu = ln cosh s the only nonzero
    amplitudes are

        c_2m = (-tau/2)^m sqrt((2m)!) / m! * exp(-nu/2).

    Parameters
    ----------
    squeeze : Squeeze
    dim : int
        Length of the returned vector.

    Examples
    --------
    >>> from mzi.states import Squeeze
    >>> squeezed_vacuum_amplitudes(Squeeze(0.0), 3)
    array([1.+0.j, 0.+0.j, 0.+0.j])
    """
    out = np.zeros(dim, dtype=complex)
    s = squeeze.factor
    if s == 0:
        out[0] = 1.0
        return out
    m = np.arange((dim + 1) // 2)
    log_magnitude = (m * np.log(0.5 * np.tanh(s)) + 0.5 * gammaln(2 * m + 1)
                     - gammaln(m + 1) - 0.5 * np.log(np.cosh(s)))
    out[2 * m] = np.exp(log_magnitude + 1j * m * (squeeze.phase + np.pi))
    return out


def detected_distribution(state, which, efficiency):
    """Photon-count distribution seen by a detector of efficiency eta.

    Binomial thinning of the number distribution of the first (which=0) or
    second (which=1) mode of the state.
    """
    marginal = state.probabilities.sum(axis=1 - which)
    n = np.arange(state.n_max + 1)
    thinning = binom.pmf(n[:, None], n[None, :], efficiency)
    return thinning @ marginal


def fidelity(a, b):
    """|<a|b>|^2 of two FockVectors or amplitude arrays."""
    a = getattr(a, 'amplitudes', a)
    b = getattr(b, 'amplitudes', b)
    return float(abs(np.vdot(np.ravel(a), np.ravel(b)))**2)
