import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mzi.states import (TWO_PI, Coherent, GaussianPort, Squeeze, canonical_angle,
                        port_moments, port_moments_arrays)


def test_vacuum_moments_vanish():
    m = port_moments(GaussianPort.vacuum())
    assert (m.mean_a, m.mean_a2, m.mean_n, m.var_n, m.corr_na) == (0, 0, 0, 0, 0)


def test_coherent_state_is_poissonian():
    m = port_moments(GaussianPort.from_polar(2.0))
    assert m.mean_a == pytest.approx(2.0)
    assert m.mean_a2 == pytest.approx(4.0)
    assert m.mean_n == pytest.approx(4.0)
    assert m.var_n == pytest.approx(4.0)
    assert m.corr_na == 0


def test_squeezed_vacuum_moments():
    m = port_moments(GaussianPort.from_polar(0.0, 0.0, 0.5, 0.0))
    assert m.mean_n == pytest.approx(math.sinh(0.5)**2, rel=1e-12)
    assert m.var_n == pytest.approx(math.sinh(1.0)**2 / 2, rel=1e-12)
    assert m.mean_a2 == pytest.approx(-0.5 * math.sinh(1.0), rel=1e-12)
    assert m.mean_a == 0
    assert m.corr_na == 0


def test_mean_n_exceeds_coherent_part_only_when_squeezed():
    for factor in (0.0, 0.3):
        m = port_moments(GaussianPort.from_polar(1.3, 0.7, factor, 2.0))
        assert m.mean_n == pytest.approx(abs(m.mean_a)**2 + math.sinh(factor)**2)
        assert (m.mean_n > abs(m.mean_a)**2 + 1e-12) == (factor > 0)


@pytest.mark.parametrize('delta', [0.3, 1.7, -2.2])
def test_joint_rotation_keeps_number_statistics(delta):
    a = port_moments(GaussianPort.from_polar(1.1, 0.4, 0.6, 1.3))
    b = port_moments(GaussianPort.from_polar(1.1, 0.4 + delta, 0.6, 1.3 + 2 * delta))
    assert b.mean_n == pytest.approx(a.mean_n, rel=1e-12)
    assert b.var_n == pytest.approx(a.var_n, rel=1e-12)
    assert b.mean_a == pytest.approx(a.mean_a * np.exp(1j * delta), rel=1e-12)
    assert b.mean_a2 == pytest.approx(a.mean_a2 * np.exp(2j * delta), rel=1e-12)


def test_phases_are_canonicalized():
    assert Coherent(1.0, -math.pi / 2).phase == pytest.approx(1.5 * math.pi)
    assert Squeeze(0.2, 5 * math.pi).phase == pytest.approx(math.pi)
    assert 0 <= canonical_angle(-1e-18) < TWO_PI


def test_zero_magnitude_drops_the_phase():
    assert Coherent(0.0, 1.0) == Coherent(0.0, 2.0)
    assert Squeeze(0.0, 1.0).phase == 0.0
    assert GaussianPort.from_polar(0.0, 1.0, 0.0, 2.0).is_vacuum


@pytest.mark.parametrize('args', [(-1.0, 0.0), (float('nan'), 0.0)])
def test_negative_magnitude_rejected(args):
    with pytest.raises(ValueError):
        Coherent(*args)
    with pytest.raises(ValueError):
        Squeeze(*args)


def test_arrays_match_scalar_path():
    magnitudes = np.array([0.0, 0.5, 1.2])
    phases = np.array([0.0, 1.0, 4.0])
    out = port_moments_arrays(magnitudes, phases, 0.4, 0.9)
    for i, (magnitude, phase) in enumerate(zip(magnitudes, phases)):
        m = port_moments(GaussianPort.from_polar(magnitude, phase, 0.4, 0.9))
        assert_allclose([o[i] for o in out],
                        [m.mean_a, m.mean_a2, m.mean_n, m.var_n, m.corr_na], rtol=1e-12,
                        atol=1e-15)
