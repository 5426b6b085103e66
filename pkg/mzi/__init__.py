"""Phase sensitivity of a Mach-Zehnder interferometer fed with two squeezed
coherent states.

The closed forms live in the submodules (states, interferometer, fisher,
detection, losses, pmc, heisenberg); oracle is the Fock-space simulation
they are checked against and commands is the gaussmzi command line.
"""
from .exceptions import *
from .states import TWO_PI, Coherent, Squeeze, GaussianPort, port_moments
from .interferometer import BsConvention, MziScenario
from .fisher import FisherMatrix, fisher_matrix, qfi, qcrb, qfi_closed_form
from .detection import (DifferenceIntensity, SingleModeIntensity, Homodyne, sensitivity,
                        optimal_working_point)
from .losses import lossy_sensitivity, lossy_optimal_working_point
from .pmc import PmcSet, apply_pmc, boundaries, classify, grid_search_qfi
from .heisenberg import PowerFractions, asymptotic_qfi, heisenberg_optima

__version__ = '0.1'
