import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from ginlab.ensembles.coulomb import metropolis_coulomb
from ginlab.ensembles.spec import EnsembleSpec
from ginlab.errors import InputError
from ginlab.linstats.test_function import constant
from ginlab.linstats.test_function import power
from ginlab.sumrules.bulk import carnie_chan_inner
from ginlab.sumrules.bulk import carnie_chan_residual
from ginlab.sumrules.bulk import density_normalisation_residual
from ginlab.sumrules.bulk import higher_moment_residual
from ginlab.sumrules.bulk import moment_sum_rule_target
from ginlab.sumrules.bulk import screening_residual
from ginlab.sumrules.bulk import small_k_structure_residual
from ginlab.sumrules.bulk import stillinger_lovett_residual
from ginlab.sumrules.bulk import structure_scaling_residual
from ginlab.sumrules.coulomb import moment_identity_residual
from ginlab.sumrules.coulomb import second_moment_target
from ginlab.sumrules.coulomb import ward_residual
from ginlab.sumrules.coulomb import ward_statistic
from ginlab.sumrules.edge import edge_density_sum_rules
from ginlab.sumrules.edge import edge_dipole_inner
from ginlab.sumrules.edge import edge_dipole_residual
from ginlab.sumrules.edge import mass_one_residual
from ginlab.sumrules.edge import sa3_identity_residual
from ginlab.sumrules.edge import sa3_lhs
from ginlab.sumrules.edge import sa3_rhs
from ginlab.sumrules.edge import sa3_rhs_series
from ginlab.sumrules.residual import Residual
from ginlab.sumrules.residual import residual_table


@pytest.fixture(scope='module')
def chain_beta2():
    return metropolis_coulomb(2.0, 20, 'ginue', 4000, seed=3, burn_in=1000)


@pytest.fixture(scope='module')
def chain_beta4():
    return metropolis_coulomb(4.0, 20, 'ginue', 4000, seed=5, burn_in=1000)


def test_residual_pass_rules():
    assert Residual('q', 1.0, 1.0 + 1e-8, 'quadrature').passed
    assert not Residual('q', 1.0, 1.001, 'quadrature').passed
    assert Residual('m', 0.0, 0.2, 'mc', err_est=0.1).passed
    assert not Residual('m', 0.0, 0.5, 'mc', err_est=0.1).passed
    with pytest.raises(InputError):
        Residual('x', 0.0, 0.0, 'guess')
    table = residual_table([Residual('q', 1.0, 1.0, 'quadrature', meta=dict(order='inner'))])
    assert table.column('passed') == [True]
    assert table.meta['q.order'] == 'inner'


@pytest.mark.parametrize('p,k,anchors', [
    (0, 1, None),
    (1, 1, None),
    (3, 1, [0.4 - 0.2j]),
    (0, 2, [0.0, 1.0 + 1.0j]),
    (2, 2, [0.0, 1.0 + 1.0j]),
    (1, 3, None),
])
def test_screening_multipoles_vanish(p, k, anchors):
    res = screening_residual(p, k, anchors)
    assert res.residual < 1e-8
    assert res.err_est < 1e-6


def test_screening_rejects_bad_arguments():
    with pytest.raises(InputError):
        screening_residual(0, 4)
    with pytest.raises(InputError):
        screening_residual(-1, 1)
    with pytest.raises(InputError):
        screening_residual(0, 2, [0.0])


def test_moment_sum_rules():
    res = stillinger_lovett_residual()
    assert_allclose(res.target, -1.0 / math.pi)
    assert res.residual < 1e-10
    assert_allclose(higher_moment_residual(4).target, -2.0 / math.pi)
    assert_allclose(higher_moment_residual(6).target, -6.0 / math.pi)
    for order in (4, 6):
        assert higher_moment_residual(order).residual < 1e-10
    # at β = 4 the fourth moment vanishes with the thermal pressure
    assert moment_sum_rule_target(4, beta=4.0) == 0.0
    with pytest.raises(InputError):
        higher_moment_residual(8)


def test_carnie_chan():
    for r in (0.3, 1.0, 2.0):
        g, _ = carnie_chan_inner(r)
        assert_allclose(g, -special.exp1(r * r) / (2.0 * math.pi), rtol=1e-9)
    res = carnie_chan_residual()
    assert res.residual < 1e-6
    assert res.meta['order'].startswith('inner')


def test_structure_factor_sum_rules():
    res = small_k_structure_residual()
    assert_allclose(res.target, -0.125)
    assert res.residual < 1e-6
    assert structure_scaling_residual().residual < 1e-6


@pytest.mark.parametrize('spec', [
    EnsembleSpec(kind='ginue', N=10),
    EnsembleSpec(kind='elliptic', N=10, tau=0.4),
    EnsembleSpec(kind='induced', N=10, n=15),
    EnsembleSpec(kind='spherical', N=10),
    EnsembleSpec(kind='induced_spherical', N=10, n=20, M=12),
    EnsembleSpec(kind='truncated', N=10, n=5),
    EnsembleSpec(kind='product', N=10, nu=(0.0, 0.0, 0.0)),
    EnsembleSpec(kind='truncated_product', N=10, n_list=(6, 6)),
])
def test_global_densities_have_unit_mass(spec):
    assert density_normalisation_residual(spec).residual < 1e-6


def test_edge_density_sum_rules():
    charge, dipole_vs_mu, dipole = edge_density_sum_rules()
    assert charge.residual < 1e-8
    assert dipole_vs_mu.residual < 1e-8
    assert_allclose(dipole.target, -1.0 / (8.0 * math.pi))
    assert dipole.residual < 1e-8


def test_edge_dipole_sum_rule():
    assert_allclose(edge_dipole_inner(0.0)[0], -1.0 / math.sqrt(8.0 * math.pi ** 3))
    numeric, err = edge_dipole_inner(0.3, numeric=True)
    assert_allclose(numeric, edge_dipole_inner(0.3)[0], atol=1e-7)
    assert edge_dipole_residual().residual < 1e-8


def test_edge_mass_one():
    res = mass_one_residual([-0.5, 0.0, 0.8])
    assert res.residual < 1e-6
    with pytest.raises(InputError):
        mass_one_residual([])


def test_erf_hermite_identity():
    assert_allclose(sa3_lhs(0.0), 0.25)
    assert_allclose(sa3_rhs(0.0)[0], 0.25, rtol=1e-12)
    assert sa3_identity_residual(np.linspace(-2.0, 3.0, 11)).residual < 1e-12
    assert sa3_lhs(3.0) < 1e-8


def test_erf_hermite_series_converges_slowly():
    partial, tail, used = sa3_rhs_series(0.0)
    assert partial < 0.25
    assert 0.25 - partial < 2.0 * tail
    for x in (0.5, 1.5):
        partial, tail, _ = sa3_rhs_series(x)
        assert abs(partial - sa3_rhs(x)[0]) < 2.0 * tail
    with pytest.raises(InputError):
        sa3_identity_residual([0.0], method='pade')


def test_ward_identity_linear_test_function(chain_beta2):
    res = ward_residual(chain_beta2, power(1))
    assert res.residual < 4.0 * res.err_est
    assert res.meta['samples'] == 4000


def test_ward_identity_quadratic_at_beta4(chain_beta4):
    res = ward_residual(chain_beta4, power(2))
    assert res.residual < 4.0 * res.err_est


def test_ward_statistic_for_constant_and_linear_functions(chain_beta2):
    z = chain_beta2.snapshots[:50]
    w_const = ward_statistic(z, 2.0, chain_beta2.potential, constant(1.0))
    assert_allclose(w_const, -np.sum(np.conj(z), axis=1), atol=1e-10)
    # for ψ = z the statistic is an affine function of Σ|z|²
    w_lin = ward_statistic(z, 2.0, chain_beta2.potential, power(1))
    N = z.shape[1]
    expected = 0.5 * N * (N - 1) - np.sum(np.abs(z) ** 2, axis=1) + N
    assert_allclose(w_lin, expected, atol=1e-8)


def test_second_moment_identity(chain_beta2, chain_beta4):
    assert second_moment_target(2.0, 3) == 6.0
    assert second_moment_target(4.0, 2) == 2.0
    exact = moment_identity_residual(2.0, 7)
    assert exact.residual == 0.0
    for beta, chain in ((2.0, chain_beta2), (4.0, chain_beta4)):
        res = moment_identity_residual(beta, 20, chain=chain)
        assert res.residual < 4.0 * res.err_est
    with pytest.raises(InputError):
        moment_identity_residual(4.0, 20)
    with pytest.raises(InputError):
        moment_identity_residual(2.0, 10, chain=chain_beta2)


def test_unequilibrated_chain_is_rejected():
    short = metropolis_coulomb(2.0, 5, 'ginue', 10, seed=1, burn_in=5)
    with pytest.raises(InputError):
        ward_residual(short, power(1))
