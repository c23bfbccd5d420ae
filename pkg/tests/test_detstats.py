import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special
from scipy import stats

from ginlab.detstats.chaos import dsff
from ginlab.detstats.chaos import dsff_limit
from ginlab.detstats.chaos import dsff_mc
from ginlab.detstats.chaos import lindblad_limit
from ginlab.detstats.chaos import lindblad_mc
from ginlab.detstats.chaos import tr_moment
from ginlab.detstats.chaos import tr_moment_exact
from ginlab.detstats.chaos import tr_moment_limit
from ginlab.detstats.chaos import tr_moment_mc
from ginlab.detstats.chaos import tr_moment_scaled
from ginlab.detstats.determinant import det_asymptotic_moment
from ginlab.detstats.determinant import det_global_moment
from ginlab.detstats.determinant import det_moment_table
from ginlab.detstats.determinant import det_mod2_moment
from ginlab.detstats.determinant import det_mod2_sample
from ginlab.detstats.determinant import log_barnes_g_real
from ginlab.detstats.determinant import log_det_mean
from ginlab.detstats.determinant import log_det_variance
from ginlab.detstats.singular import catalan
from ginlab.detstats.singular import condition_number_sample
from ginlab.detstats.singular import edge_ratio
from ginlab.detstats.singular import log_det_from_qr
from ginlab.detstats.singular import marchenko_pastur_density
from ginlab.detstats.singular import marchenko_pastur_moment
from ginlab.detstats.singular import qr_diag_law
from ginlab.detstats.singular import qr_diag_sample
from ginlab.detstats.singular import singular_moment_mc
from ginlab.detstats.singular import singular_sample
from ginlab.detstats.singular import smallest_singular_cdf
from ginlab.errors import InputError
from ginlab.linstats.structure import structure_factor
from ginlab.overlaps.limits import condition_number_cdf

GLAISHER = 1.2824271291006226


def test_mellin_moments():
    assert det_mod2_moment(1, 7) == pytest.approx(1.0)
    assert_allclose(det_mod2_moment(2, 5), 120.0, rtol=1e-12)
    with pytest.raises(InputError):
        det_mod2_moment(0, 3)


def test_det_mod2_monte_carlo():
    samples, logs = det_mod2_sample(4, 1000000, seed=1)
    sem = samples.std(ddof=1) / math.sqrt(samples.size)
    assert abs(samples.mean() - 24.0) < 4.0 * sem
    assert_allclose(np.log(samples), logs)


def test_moment_table():
    table = det_moment_table(5, [1.5, 2.0], replicas=200000, seed=2)
    assert all(abs(z) < 4.0 for z in table.z_scores())
    out = table.to_table()
    assert out.column('order') == [1.5, 2.0]
    assert_allclose(out.column('exact')[1], 120.0)


def test_log_det_moments():
    _, logs = det_mod2_sample(20, 100000, seed=3)
    sem = logs.std(ddof=1) / math.sqrt(logs.size)
    assert abs(logs.mean() - log_det_mean(20)) < 4.0 * sem
    assert_allclose(logs.var(ddof=1), log_det_variance(20), rtol=0.03)
    # derivative of the Mellin transform at s = 1
    h = 1e-5
    slope = (math.log(det_mod2_moment(1 + h, 20)) - math.log(det_mod2_moment(1 - h, 20))) / (2 * h)
    assert_allclose(slope, log_det_mean(20), rtol=1e-7)


def test_real_barnes_g():
    log_g_half = math.log(2.0) / 24.0 + 0.125 - 0.25 * math.log(math.pi) - 1.5 * math.log(GLAISHER)
    assert_allclose(log_barnes_g_real(0.5), log_g_half, atol=1e-10)
    assert_allclose(log_barnes_g_real(1.5), log_g_half + special.gammaln(0.5), atol=1e-10)
    assert_allclose(log_barnes_g_real(4.0), math.log(2.0), atol=1e-14)
    assert log_barnes_g_real(1.0) == 0.0


def test_global_moment_asymptotics():
    assert det_global_moment(0.0, 10) == pytest.approx(1.0)
    assert det_asymptotic_moment(0.0, 10) == pytest.approx(1.0)
    ratio = det_global_moment(2.0, 100) / det_asymptotic_moment(2.0, 100)
    assert abs(ratio - 1.0) < 0.03
    errs = [abs(det_global_moment(4.0, N) / det_asymptotic_moment(4.0, N) - 1.0) for N in (25, 50, 100, 200)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_qr_diagonal_law():
    N = 6
    r2 = qr_diag_sample(N, 4000, seed=4)
    laws = qr_diag_law(N)
    for j in (0, N - 1):
        assert stats.kstest(r2[:, j], laws[j].cdf).pvalue > 1e-3
    assert_allclose(r2.mean(axis=0), np.arange(N, 0, -1), rtol=0.08)
    # the first column has norm² ~ Gamma[N, 1]; the last one is Exp(1)
    assert laws[-1].mean() == pytest.approx(1.0)
    logs = log_det_from_qr(r2)
    sem = logs.std(ddof=1) / math.sqrt(logs.size)
    assert abs(logs.mean() - log_det_mean(N)) < 4.0 * sem


def test_smallest_singular_value_is_exponential():
    N = 10
    s = singular_sample(N, 2000, seed=5)
    assert np.all(np.diff(s, axis=1) <= 0)
    assert stats.kstest(s[:, -1], lambda x: smallest_singular_cdf(x, N)).pvalue > 1e-3


def test_largest_singular_value_edge():
    assert abs(np.mean(edge_ratio(200, 20, seed=6)) - 4.0) < 0.25


def test_marchenko_pastur():
    for k in range(6):
        assert_allclose(marchenko_pastur_moment(k), catalan(k), rtol=1e-10)
    assert catalan(4) == 14
    assert marchenko_pastur_density(5.0) == 0.0
    assert_allclose(marchenko_pastur_density(2.0), 1.0 / (2.0 * math.pi))
    # E Tr (G†G)² = 2N³ for square complex Gaussian G
    mean, sem = singular_moment_mc(2, 100, 50, seed=7)
    assert abs(mean - 2.0) < 4.0 * sem


@pytest.mark.slow
def test_condition_number_law():
    kappa = condition_number_sample(200, 2000, seed=8)
    assert stats.kstest(kappa, condition_number_cdf).statistic < 0.05


def test_dsff_single_eigenvalue():
    for t, s in ((0.3, 0.0), (1.0, 2.0), (4.0, -1.0)):
        assert_allclose(dsff(t, s, 1), -math.expm1(-0.5 * (t * t + s * s)), rtol=1e-12)


def test_dsff_matches_hypergeometric_sum():
    N, t, s = 6, 1.2, 0.9
    u = 0.25 * (t * t + s * s)
    total = 0.0
    for m in range(N):
        for n in range(N):
            d = abs(m - n)
            big = max(m, n)
            bracket = math.factorial(big) / math.factorial(d) * special.hyp1f1(big + 1, d + 1, -u)
            total += u ** d / (math.factorial(n) * math.factorial(m)) * bracket ** 2
    assert_allclose(dsff(t, s, N), 1.0 - total / N, rtol=1e-10)


def test_dsff_limits_and_symmetry():
    assert dsff(0.0, 0.0, 40) == pytest.approx(0.0, abs=1e-12)
    assert dsff_limit(0.0, 0.0) == 0.0
    assert dsff(10.0, 10.0, 30) == pytest.approx(1.0, abs=1e-12)
    assert_allclose(dsff(1.0, 2.0, 50), dsff(2.0, 1.0, 50), rtol=1e-10)
    assert_allclose(dsff(1.0, 2.0, 50), dsff(math.sqrt(5.0), 0.0, 50), rtol=1e-10)
    errs = [abs(dsff(1.0, 0.5, N) - dsff_limit(1.0, 0.5)) for N in (25, 100, 400)]
    assert errs[2] < errs[1] < errs[0]
    assert errs[2] < 0.05
    assert_allclose(dsff_limit(1.0, 0.5), math.pi * structure_factor(1.0 + 0.5j), rtol=1e-12)


def test_dsff_monte_carlo():
    value, err = dsff_mc(2.0, 1.0, 30, 5000, seed=9)
    assert abs(value - dsff(2.0, 1.0, 30)) < 4.0 * err


def test_trace_moments():
    for N in (1, 5, 20):
        assert tr_moment(1, N) == N
    assert tr_moment_exact(2, 20) == 800
    assert tr_moment(4, 5) > 0
    assert tr_moment(7, 5) > 0
    assert_allclose(tr_moment_scaled(100, 10000), tr_moment_limit(1.0), rtol=0.03)
    assert_allclose(tr_moment_limit(1e-4), 1.0, rtol=1e-8)
    with pytest.raises(InputError):
        tr_moment(0, 5)
    mean, sem = tr_moment_mc(2, 20, 4000, seed=10)
    assert abs(mean - 800.0) < 4.0 * sem


def test_lindblad_limit():
    assert lindblad_limit(0.0) == 1.0
    assert_allclose(lindblad_limit(1000.0) * math.pi * 1000.0, 1.0, rtol=1e-3)
    for t in (0.5, 1.0):
        mean, sem = lindblad_mc(t, 100, 200, seed=11)
        assert abs(mean - lindblad_limit(t)) < 4.0 * sem + 1e-3
