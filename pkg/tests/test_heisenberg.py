import math

import pytest

from mzi.fisher import fisher_matrix, qfi, qfi_closed_form
from mzi.heisenberg import (PowerFractions, asymptotic_qfi, fractions_to_parameters,
                            fractions_to_ports, heisenberg_optima, simplex_grid)
from mzi.interferometer import MziScenario
from mzi.pmc import PmcSet
from mzi.states import GaussianPort

ALL_SETS = list(PmcSet)


def test_equal_power_split_under_pmc2():
    f = PowerFractions(1 / 6, 1 / 6, 1 / 3, 1 / 3, n_tot=10.0)
    assert asymptotic_qfi(PmcSet.PMC2, f) == pytest.approx(4 / 9 * 100, rel=1e-12)


@pytest.mark.parametrize('pmc', ALL_SETS)
def test_representative_reaches_the_limit(pmc):
    optimum = heisenberg_optima(pmc)
    assert optimum.value == 1.0
    assert optimum.contains(optimum.representative)
    assert asymptotic_qfi(pmc, optimum.representative) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize('pmc', ALL_SETS)
def test_limit_is_attained_only_on_the_optima(pmc):
    optimum = heisenberg_optima(pmc)
    vacuum_port0 = pmc.needs_vacuum_port0
    hits = 0
    for f in simplex_grid(20, vacuum_port0=vacuum_port0):
        value = asymptotic_qfi(pmc, f)
        assert value <= 1 + 1e-12
        if value >= 1 - 1e-6:
            hits += 1
            assert optimum.contains(f)
    assert hits >= 1


def test_pmc2_has_two_optimal_manifolds():
    optimum = heisenberg_optima(PmcSet.PMC2)
    assert optimum.contains(PowerFractions(0.5, 0.0, 0.5, 0.0))
    assert optimum.contains(PowerFractions(0.0, 0.5, 0.0, 0.5))
    assert not optimum.contains(PowerFractions(0.25, 0.25, 0.25, 0.25))


def test_pmc1_split_between_alpha_and_z_is_free():
    optimum = heisenberg_optima(PmcSet.PMC1)
    f = PowerFractions(0.2, 0.0, 0.5, 0.3)
    assert optimum.contains(f)
    assert asymptotic_qfi(PmcSet.PMC1, f) == pytest.approx(1.0)


@pytest.mark.parametrize('pmc', ALL_SETS)
def test_exact_qfi_approaches_the_limit(pmc):
    n_tot = 1e4
    f = heisenberg_optima(pmc).representative
    f = PowerFractions(*f.as_tuple(), n_tot=n_tot)
    port1, port0 = fractions_to_ports(f, pmc)
    exact = qfi(fisher_matrix(MziScenario(port1=port1, port0=port0)))
    assert 0.95 <= exact / n_tot**2 <= 1.05


@pytest.mark.parametrize('pmc', [PmcSet.PMC1, PmcSet.PMC2, PmcSet.PMC3])
def test_asymptotic_form_matches_exact_qfi(pmc):
    f = PowerFractions(0.2, 0.3, 0.25, 0.25, n_tot=1e6)
    alpha, beta, r, z = fractions_to_parameters(f)
    assert qfi_closed_form(alpha, beta, r, z, pmc) == pytest.approx(asymptotic_qfi(pmc, f),
                                                                    rel=1e-3)


def test_fractions_round_trip():
    f = PowerFractions(0.1, 0.2, 0.3, 0.4, n_tot=50.0)
    port1, port0 = fractions_to_ports(f, PmcSet.PMC3, theta_alpha=0.4)
    back = PowerFractions.from_ports(port1, port0)
    assert back.as_tuple() == pytest.approx(f.as_tuple(), rel=1e-12)
    assert back.n_tot == pytest.approx(50.0, rel=1e-12)
    alpha, beta, r, z = fractions_to_parameters(f)
    assert math.sinh(r)**2 == pytest.approx(15.0, rel=1e-12)
    assert alpha == pytest.approx(math.sqrt(5.0))


def test_from_ports_counts_squeezing_photons():
    f = PowerFractions.from_ports(GaussianPort.from_polar(0.0, 0.0, 0.5, 0.0),
                                  GaussianPort.from_polar(0.0, 0.0, 0.5, 0.0))
    assert (f.f_r, f.f_z) == (0.5, 0.5)
    assert f.n_tot == pytest.approx(2 * math.sinh(0.5)**2)


def test_validation():
    with pytest.raises(ValueError):
        PowerFractions(0.5, 0.5, 0.5, -0.5)
    with pytest.raises(ValueError):
        PowerFractions(0.5, 0.2, 0.2, 0.2)
    with pytest.raises(ValueError):
        PowerFractions(0.25, 0.25, 0.25, 0.25, n_tot=0.0)
    with pytest.raises(ValueError):
        PowerFractions.from_ports(GaussianPort.vacuum(), GaussianPort.vacuum())
    with pytest.raises(ValueError):
        list(simplex_grid(0))


def test_simplex_grid():
    points = list(simplex_grid(4, n_tot=7.0))
    assert len(points) == 35
    assert all(p.n_tot == 7.0 for p in points)
    assert len(set(p.as_tuple() for p in points)) == 35
    assert len(list(simplex_grid(2, vacuum_port0=True))) == 6
    assert all(p.f_beta == 0 for p in simplex_grid(3, vacuum_port0=True))
