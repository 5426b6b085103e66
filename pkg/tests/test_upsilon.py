import math

import numpy as np
import pytest

from mzi import oracle
from mzi.states import Coherent, GaussianPort, Squeeze
from mzi.interferometer import MziScenario
from mzi.upsilon import upsilon, upsilon_minus, upsilon_plus


def test_matched_phases_give_exponentials():
    gamma, chi = Coherent(1.5, 0.4), Squeeze(0.7, 0.8)
    assert upsilon_plus(gamma, chi) == pytest.approx(1.5**2 * math.exp(1.4), rel=1e-12)
    assert upsilon_minus(gamma, chi) == pytest.approx(1.5**2 * math.exp(-1.4), rel=1e-12)


def test_no_squeezing():
    assert upsilon_plus(Coherent(2.0, 1.0), Squeeze()) == pytest.approx(4.0)
    assert upsilon_minus(Coherent(), Squeeze(1.0, 0.3)) == 0.0


def test_quadrature_angle_kills_sinh_term():
    assert upsilon_plus(Coherent(1.0, math.pi / 4), Squeeze(0.3, 0.0)) == pytest.approx(
        math.cosh(0.6), rel=1e-12)


def test_opposite_angle_flips_sign():
    assert upsilon_minus(Coherent(2.0, 0.0), Squeeze(1.0, math.pi)) == pytest.approx(
        4 * math.exp(2), rel=1e-12)


def test_sum_product_and_covariance():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g, tg, s, ts, delta = rng.uniform(0, 3, size=5)
        plus = upsilon(+1, g, tg, s, ts)
        minus = upsilon(-1, g, tg, s, ts)
        assert plus + minus == pytest.approx(2 * g**2 * math.cosh(2 * s), rel=1e-12)
        assert plus * minus >= g**4 * (1 - 1e-12)
        assert upsilon(+1, g, tg + delta, s, ts + 2 * delta) == pytest.approx(plus, rel=1e-12)


def test_bad_sign():
    with pytest.raises(ValueError):
        upsilon(0, 1.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize('theta_g,s,vartheta', [(0.3, 0.4, 1.1), (1.2, 0.6, 0.2)])
def test_quadrature_identity_against_fock_simulation(theta_g, s, vartheta):
    # Upsilon+ / 4|g|^2 is the variance of X at angle 2 theta_g - vartheta of S(chi)|0>
    state = oracle.prepare(MziScenario(port1=GaussianPort.from_polar(0.0, 0.0, s, vartheta)))
    # phi = 0 routes port 1 straight to output 4 under the symmetric convention
    out = oracle.evolve(state, 0.0)
    # Var Re(exp(-i phi_L) a) picks up -cos(2 phi_L - vartheta)
    local = theta_g + 0.5 * math.pi
    x = oracle.measure_stats(out, 'x', local)
    variance = oracle.measure_stats(out, 'x_sq', local) - x**2
    expected = upsilon(+1, 1.0, theta_g, s, vartheta) / 4
    assert variance == pytest.approx(expected, rel=1e-8)
