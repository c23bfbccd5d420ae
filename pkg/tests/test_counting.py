import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from ginlab.counting.asymptotics import fit_hole_coefficients
from ginlab.counting.asymptotics import gumbel_probability
from ginlab.counting.asymptotics import gumbel_radius
from ginlab.counting.asymptotics import large_dev_psi0
from ginlab.counting.asymptotics import log_thinned_gap
from ginlab.counting.asymptotics import thinned_gap
from ginlab.counting.asymptotics import thinned_h
from ginlab.counting.asymptotics import thinned_hole_expansion
from ginlab.counting.asymptotics import variance_infinite_disk
from ginlab.counting.asymptotics import variance_infinite_disk_sum
from ginlab.counting.bernoulli import bernoulli_params
from ginlab.counting.bernoulli import boundary_variance_constant
from ginlab.counting.bernoulli import counting_pmf
from ginlab.counting.bernoulli import counting_report
from ginlab.counting.bernoulli import cumulant
from ginlab.counting.bernoulli import gap_generating
from ginlab.counting.bernoulli import infinite_ginue_params
from ginlab.counting.bernoulli import local_clt_distance
from ginlab.counting.bernoulli import pmf_cumulants
from ginlab.counting.report import Region
from ginlab.counting.report import as_region
from ginlab.counting.spacing import spacing_mean
from ginlab.counting.spacing import spacing_moment
from ginlab.counting.spacing import spacing_pdf
from ginlab.counting.spacing import spacing_pdf_small_r
from ginlab.counting.spacing import spacing_survival
from ginlab.ensembles.kostlan import kostlan_radial_sample
from ginlab.ensembles.spec import EnsembleSpec
from ginlab.errors import InputError
from ginlab.kernels.finite import density
from ginlab.utils.quadrature import adaptive_quad
from ginlab.utils.quadrature import radial_integral


def _enumerate_pmf(lam):
    pmf = np.zeros(len(lam) + 1)
    for bits in itertools.product((0, 1), repeat=len(lam)):
        prob = 1.0
        for b, p in zip(bits, lam):
            prob *= p if b else 1.0 - p
        pmf[sum(bits)] += prob
    return pmf


def test_region_parsing():
    assert as_region(2.0) == Region.disk(2.0)
    assert as_region((1.0, 2.0)).kind == 'annulus'
    with pytest.raises(InputError):
        as_region((1.0, 2.0, 3.0))
    with pytest.raises(InputError):
        Region(2.0, 1.0)


def test_bernoulli_trivial_limits():
    assert_allclose(bernoulli_params('ginue', 5, 0.0), np.zeros(5))
    assert_allclose(bernoulli_params('ginue', 5, 1e3), np.ones(5))
    assert_allclose(bernoulli_params('ginue', 3, 1.0)[0], 1.0 - math.exp(-1.0), rtol=1e-14)


def test_annulus_is_difference_of_disks():
    outer = bernoulli_params('ginue', 6, 2.0)
    inner = bernoulli_params('ginue', 6, 1.0)
    assert_allclose(bernoulli_params('ginue', 6, (1.0, 2.0)), outer - inner, atol=1e-15)


@pytest.mark.parametrize('spec, R', [
    (EnsembleSpec(kind='induced', N=4, n=6), 1.7),
    (EnsembleSpec(kind='spherical', N=4), 0.8),
    (EnsembleSpec(kind='induced_spherical', N=3, n=5, M=4), 1.1),
    (EnsembleSpec(kind='truncated', N=4, n=3), 0.6),
])
def test_expected_count_matches_density(spec, R):
    lam = bernoulli_params(spec.kind.value, spec.N, R, **spec.kostlan_params())
    expected = radial_integral(lambda r: density(spec, r), 0.0, R, n_panels=64, order=20)
    assert_allclose(lam.sum(), expected, rtol=1e-9)


@pytest.mark.parametrize('weight, params', [
    ('product', dict(nu=(0.0, 1.0))),
    ('truncated_product', dict(n_list=(2, 3))),
])
def test_product_weights_against_kostlan(weight, params):
    N, t, replicas = 3, 0.5, 100000
    lam = bernoulli_params(weight, N, math.sqrt(t), **params)
    s = kostlan_radial_sample(weight, N, 11, replicas=replicas, **params)
    frac = np.mean(s <= t, axis=0)
    sigma = np.sqrt(lam * (1.0 - lam) / replicas)
    assert np.all(np.abs(frac - lam) < 4.0 * sigma + 1e-3)


def test_gap_generating_single_eigenvalue():
    R, xi = 1.3, 0.4
    lam = bernoulli_params('ginue', 1, R)
    assert_allclose(gap_generating(lam, xi), 1.0 - xi * (1.0 - math.exp(-R * R)), rtol=1e-14)
    assert gap_generating(lam, 0.0) == 1.0
    with pytest.raises(InputError):
        gap_generating(lam, 1.5)


def test_infinite_hole_probability():
    lam, bound = infinite_ginue_params(2.0)
    assert bound < 1e-15
    j = np.arange(1, 400, dtype=float)
    direct = np.prod(special.gammaincc(j, 4.0))
    assert_allclose(gap_generating(lam, 1.0), direct, rtol=1e-12)


def test_pmf_simple_cases():
    assert_allclose(counting_pmf([0.5]), [0.5, 0.5])
    assert_allclose(counting_pmf([1.0, 1.0]), [0.0, 0.0, 1.0])


def test_pmf_matches_enumeration():
    lam = bernoulli_params('ginue', 5, 1.5)
    assert_allclose(counting_pmf(lam), _enumerate_pmf(lam), atol=1e-15)
    rng = np.random.default_rng(3)
    lam = rng.uniform(size=12)
    pmf = counting_pmf(lam)
    assert_allclose(pmf, _enumerate_pmf(lam), atol=1e-13)
    assert_allclose(pmf.sum(), 1.0, atol=1e-12)


def test_pmf_is_a_probability_vector_for_large_n():
    lam = np.random.default_rng(8).uniform(0.3, 0.7, size=3000)
    pmf = counting_pmf(lam)
    assert pmf.shape == (3001,)
    assert np.all(pmf >= 0.0)
    assert math.fsum(pmf) == pytest.approx(1.0, abs=1e-15)
    assert np.sum(np.arange(3001) * pmf) == pytest.approx(np.sum(lam), rel=1e-12)


def test_cumulant_closed_cases():
    lam = bernoulli_params('ginue', 8, 2.0)
    assert_allclose(cumulant(2, lam), np.sum(lam * (1 - lam)), rtol=1e-12)
    assert abs(cumulant(3, [0.5])) < 1e-15
    assert cumulant(3, [0.0, 1.0]) == 0.0
    with pytest.raises(InputError):
        cumulant(0, lam)


def test_cumulants_match_pmf_conversion():
    rng = np.random.default_rng(5)
    lam = np.concatenate([rng.uniform(size=13), [0.0, 1.0]])
    from_pmf = pmf_cumulants(counting_pmf(lam), 4)
    for p in range(1, 5):
        assert_allclose(cumulant(p, lam), from_pmf[p - 1], atol=1e-10)


def test_fourth_cumulant_by_finite_differences():
    lam = bernoulli_params('ginue', 10, 2.0)
    h = 0.02

    def log_gen(t):
        return math.log(gap_generating(lam, 1.0 - math.exp(t)))

    fd = (log_gen(2 * h) - 4 * log_gen(h) + 6 * log_gen(0.0) - 4 * log_gen(-h) + log_gen(-2 * h)) / h ** 4
    assert_allclose(cumulant(4, lam), fd, rtol=1e-3, atol=1e-4)


def test_report_invariants():
    report = counting_report('ginue', 6, 1.8)
    assert_allclose(report.pmf.sum(), 1.0, atol=1e-12)
    assert_allclose(report.cumulants[1], report.mean)
    assert_allclose(report.cumulants[2], report.variance, rtol=1e-12)
    assert_allclose(report.overcrowding_probability, report.pmf[-1], rtol=1e-12)
    table = report.to_table()
    assert len(table.rows) == 6 + 7 + 4


def test_hole_probability_identity():
    R = 1.2
    report = counting_report('ginue', 8, R)
    j = np.arange(2, 9, dtype=float)
    # F_N(0; D_R) = e^{R²} E_N(0; D_R) drops the j = 1 factor e^{-R²}
    assert_allclose(math.exp(R * R) * report.hole_probability, np.prod(special.gammaincc(j, R * R)), rtol=1e-13)


def test_pmf_against_kostlan_counts():
    N, R, replicas = 10, 2.0, 50000
    pmf = counting_pmf(bernoulli_params('ginue', N, R))
    s = kostlan_radial_sample('ginue', N, 7, replicas=replicas)
    counts = np.bincount(np.sum(s <= R * R, axis=1), minlength=N + 1)
    freq = counts / replicas
    sigma = np.sqrt(pmf * (1 - pmf) / replicas)
    assert np.all(np.abs(freq - pmf) < 4.0 * sigma + 1e-4)


def test_local_clt():
    N, alpha = 500, 0.5
    pmf = counting_pmf(bernoulli_params('ginue', N, alpha * math.sqrt(N)))
    assert local_clt_distance(pmf) < 0.02


def test_boundary_variance_constant():
    assert_allclose(boundary_variance_constant(), 1.0 / math.sqrt(math.pi), rtol=1e-8)


def test_variance_infinite_disk():
    R = 0.01
    assert_allclose(variance_infinite_disk(R), R * R, rtol=1e-3)
    assert_allclose(variance_infinite_disk(30.0), 30.0 / math.sqrt(math.pi), rtol=1e-2)
    assert_allclose(variance_infinite_disk(2.5), variance_infinite_disk_sum(2.5), rtol=1e-12)
    with pytest.raises(InputError):
        variance_infinite_disk(-1.0)


def test_thinned_gap_limits():
    N, alpha = 20, 0.6
    lam = bernoulli_params('ginue', N, alpha * math.sqrt(N))
    assert_allclose(thinned_gap(0.7, 1.0, N, alpha), gap_generating(lam, 0.7), rtol=1e-13)
    assert_allclose(thinned_gap(1.0, 1e-12, N, alpha), 1.0, atol=1e-10)
    with pytest.raises(InputError):
        thinned_gap(1.0, 1.2, N, alpha)
    with pytest.raises(InputError):
        thinned_h(1.0)


def test_thinned_hole_expansion():
    N, alpha, zeta = 4000, 0.5, 0.3
    exact = log_thinned_gap(1.0, zeta, N, alpha)
    leading = alpha ** 2 * N * math.log1p(-zeta)
    assert abs(exact / (alpha ** 2 * N) - math.log1p(-zeta)) < 0.01
    assert abs(exact - thinned_hole_expansion(zeta, N, alpha)) < 1.0
    assert abs(exact - leading) < 5.0


def test_gumbel_radius_and_probability():
    N = 10000
    gamma_n = math.log(N / (2 * math.pi)) - 2 * math.log(math.log(N))
    assert_allclose(gumbel_radius(0.0, N), 1 + math.sqrt(gamma_n) / (2 * math.sqrt(N)))
    probs = [gumbel_probability(x, N) for x in (-1.0, 0.0, 1.0)]
    assert probs[0] < probs[1] < probs[2]
    # the approach to exp(-exp(-x)) is logarithmically slow in N
    target = math.exp(-1.0)
    assert abs(gumbel_probability(0.0, 10 ** 6) - target) < abs(probs[1] - target)


def test_large_deviation_rate():
    alpha = 0.7
    assert large_dev_psi0(alpha, alpha ** 2) == pytest.approx(0.0, abs=1e-15)
    assert_allclose(large_dev_psi0(alpha, 0.0), alpha ** 4 / 4)
    with pytest.raises(InputError):
        large_dev_psi0(alpha, -0.1)


def test_hole_coefficient_fit():
    alpha = 0.5
    c1, diag = fit_hole_coefficients([100, 200, 400, 800, 1600, 3200], alpha)
    assert_allclose(c1, -alpha ** 4 / 4, rtol=0.02)
    assert set(diag['coefficients']) == {'N^2', 'N log N', 'N', 'sqrt N', 'log N', '1'}
    with pytest.raises(InputError):
        fit_hole_coefficients([100, 200, 400], alpha)
    with pytest.raises(InputError):
        fit_hole_coefficients([100, 200, 400, 800, 1600, 3200], 0.01)


def test_spacing_distribution():
    r = 0.05
    assert_allclose(spacing_pdf(r), spacing_pdf_small_r(r), rtol=1e-2)
    total, _ = adaptive_quad(spacing_pdf, 0.0, 8.0, epsabs=1e-12, epsrel=1e-10)
    assert_allclose(total, 1.0, atol=1e-6)
    assert abs(spacing_mean() - 1.142929) < 1e-4
    assert spacing_survival(0.0) == 1.0
    assert spacing_moment(2) > spacing_mean() ** 2
