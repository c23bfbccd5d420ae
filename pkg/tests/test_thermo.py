import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ginlab.ensembles.coulomb import RadialPotential
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.specfun.gamma import ZETA_PRIME_MINUS_ONE
from ginlab.thermo.free_energy import BETA_F_2
from ginlab.thermo.free_energy import decay_exponent
from ginlab.thermo.free_energy import disk_configuration_integral_mc
from ginlab.thermo.free_energy import expansion_residuals
from ginlab.thermo.free_energy import fit_log_coefficient
from ginlab.thermo.free_energy import free_energy_disk_beta2
from ginlab.thermo.free_energy import free_energy_disk_expansion
from ginlab.thermo.free_energy import free_energy_sphere_beta2
from ginlab.thermo.free_energy import free_energy_sphere_expansion
from ginlab.thermo.free_energy import log_configuration_integral_disk
from ginlab.thermo.radial import annulus_potential
from ginlab.thermo.radial import disk_potential
from ginlab.thermo.radial import energy_direct
from ginlab.thermo.radial import equilibrium_functionals
from ginlab.thermo.radial import expansion_check_zn2q
from ginlab.thermo.radial import log_partition_annulus
from ginlab.thermo.radial import log_partition_disk
from ginlab.thermo.radial import partition_radial_beta2

SMALL_GRID = [8, 10, 12, 16, 20, 24]


def test_small_n_free_energies():
    assert_allclose(free_energy_disk_beta2(1), -0.75 - math.log(math.pi), rtol=1e-14)
    assert_allclose(free_energy_sphere_beta2(1), -0.5 - math.log(math.pi), rtol=1e-14)
    assert_allclose(BETA_F_2, 0.5 * math.log(1.0 / (2.0 * math.pi ** 3)))
    with pytest.raises(InputError):
        free_energy_disk_beta2(0)


def test_disk_expansion_residual_decays_as_n_to_minus_four():
    res = expansion_residuals(free_energy_disk_beta2, free_energy_disk_expansion, SMALL_GRID)
    assert np.all(np.abs(res) < 1e-6)
    assert abs(decay_exponent(SMALL_GRID, res) + 4.0) < 0.3


def test_sphere_expansion_residual_decays_as_n_to_minus_four():
    res = expansion_residuals(free_energy_sphere_beta2, free_energy_sphere_expansion, SMALL_GRID)
    assert abs(decay_exponent(SMALL_GRID, res) + 4.0) < 0.3


def test_log_coefficients_track_euler_index():
    grid = [10, 20, 40, 80, 120, 160, 200]
    disk_log, disk_const = fit_log_coefficient([free_energy_disk_beta2(N) for N in grid], grid)
    sphere_log, sphere_const = fit_log_coefficient([free_energy_sphere_beta2(N) for N in grid], grid)
    assert_allclose(disk_log, 1.0 / 12.0, rtol=0.02)
    assert_allclose(sphere_log, 1.0 / 6.0, rtol=0.02)
    assert_allclose(disk_const, -ZETA_PRIME_MINUS_ONE, atol=1e-6)
    assert_allclose(sphere_const, 1.0 / 12.0 - 2.0 * ZETA_PRIME_MINUS_ONE, atol=1e-6)


def test_configuration_integral_monte_carlo():
    for N in (2, 3):
        estimate, rel_err = disk_configuration_integral_mc(N, 200000, seed=11)
        assert abs(estimate - log_configuration_integral_disk(N)) < 4.0 * rel_err
    assert_allclose(log_configuration_integral_disk(2), math.log(2.0 * math.pi ** 2))


def test_radial_partition_matches_closed_forms():
    log_z, err = partition_radial_beta2(disk_potential(), 30)
    assert_allclose(log_z, log_partition_disk(30), rtol=1e-11)
    assert err < 1e-8
    log_z, _ = partition_radial_beta2(annulus_potential(0.5), 20)
    assert_allclose(log_z, log_partition_annulus(0.5, 20), rtol=1e-11)


def test_radial_partition_reproduces_disk_free_energy():
    # z -> √N z maps the global weight e^{-N|z|²} to e^{-|z|²}
    N = 12
    log_z, _ = partition_radial_beta2(disk_potential(), N)
    log_a = -2.0 * N * N * (0.25 * math.log(N) - 0.375)
    rescaled = -(log_a + 0.5 * N * (N + 1) * math.log(N) + log_z)
    assert_allclose(rescaled, free_energy_disk_beta2(N), rtol=1e-11)


def test_single_particle_partition():
    pot = RadialPotential('quartic', q=lambda r: r ** 4, dq=lambda r: 4.0 * r ** 3)
    log_z, _ = partition_radial_beta2(pot, 1)
    # 2π ∫ r e^{-r⁴} dr = π √π / 2
    assert_allclose(log_z, math.log(0.5 * math.pi ** 1.5), rtol=1e-12)


def test_divergent_norm_is_reported():
    flat = RadialPotential('log', q=lambda r: 0.5 * np.log1p(r * r), dq=lambda r: r / (1.0 + r * r))
    with pytest.raises(NumericError):
        partition_radial_beta2(flat, 3)


def test_equilibrium_functionals():
    energy, entropy, r1, r2 = equilibrium_functionals(disk_potential())
    assert_allclose(energy, 0.75, atol=1e-10)
    assert_allclose(entropy, -math.log(math.pi), atol=1e-10)
    assert r1 == 0.0
    assert_allclose(r2, 1.0, atol=1e-10)
    energy, entropy, r1, r2 = equilibrium_functionals(annulus_potential(1.0))
    assert_allclose(energy, 2.25 - 2.0 * math.log(2.0), atol=1e-10)
    assert_allclose((r1, r2), (1.0, math.sqrt(2.0)), atol=1e-10)


def test_energy_radial_formula_matches_double_integral():
    assert_allclose(energy_direct(disk_potential()), 0.75, atol=1e-8)
    assert_allclose(energy_direct(annulus_potential(1.0)),
                    equilibrium_functionals(annulus_potential(1.0))[0], atol=1e-8)


def test_euler_index_from_partition_functions():
    grid = [20, 40, 80, 160, 320]
    disk = expansion_check_zn2q(disk_potential(), grid, exact=log_partition_disk)
    assert abs(disk.chi_hat - 1.0) < 0.1
    annulus = expansion_check_zn2q(annulus_potential(1.0), grid,
                                   exact=lambda N: log_partition_annulus(1.0, N))
    assert abs(annulus.chi_hat) < 0.1
    assert max(abs(r) for r in annulus.residuals) < 0.05
    table = disk.to_table()
    assert len(table.rows) == len(grid)
    assert table.meta['chi_hat'] == disk.chi_hat


def test_euler_index_by_quadrature():
    report = expansion_check_zn2q(annulus_potential(1.0), [16, 24, 32, 48, 64])
    assert abs(report.chi_hat) < 0.1
