import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from ginlab.errors import InputError
from ginlab.specfun import bessel_k
from ginlab.specfun import hermite_phys
from ginlab.specfun import inc_beta_reg_int_complex
from ginlab.specfun import log_barnes_g
from ginlab.specfun import log_reg_gamma_upper_int
from ginlab.specfun import polylog_negint
from ginlab.specfun import product_weight
from ginlab.specfun import product_weight_recursive
from ginlab.specfun import reg_gamma_upper
from ginlab.specfun import truncated_product_weight
from ginlab.specfun.bessel import LARGE_X_K
from ginlab.specfun.bessel import log_bessel_k
from ginlab.specfun.gamma import barnes_g_asymptotic
from ginlab.specfun.gamma import stirling_log_factorial
from ginlab.specfun.orthopoly import elliptic_hermite_table


def test_reg_gamma_upper_order_one_is_exponential():
    x = np.linspace(0.0, 5.0, 11)
    assert_allclose(reg_gamma_upper(1, x), np.exp(-x), rtol=1e-14)


def test_reg_gamma_rejects_negative_argument():
    with pytest.raises(InputError):
        reg_gamma_upper(2, -1.0)


@pytest.mark.parametrize('a,b', [(1, 1), (3, 2), (5, 7)])
def test_integer_incomplete_beta_matches_scipy_on_real_axis(a, b):
    for x in (0.1, 0.5, 0.9):
        assert_allclose(inc_beta_reg_int_complex(x, a, b).real, special.betainc(a, b, x), rtol=1e-12)


def test_integer_incomplete_beta_is_polynomial_in_z():
    # I_z(1, 2) = 1 - (1 - z)^2
    z = 0.3 + 0.7j
    assert_allclose(inc_beta_reg_int_complex(z, 1, 2), 1 - (1 - z) ** 2, rtol=1e-13)


def test_barnes_g_small_values_and_asymptotics():
    assert log_barnes_g(1) == 0.0
    assert_allclose(log_barnes_g(3), math.log(2.0), rtol=1e-14)
    assert_allclose(log_barnes_g(60), barnes_g_asymptotic(60), rtol=1e-12)


def test_stirling_expansion():
    assert_allclose(stirling_log_factorial(30), special.gammaln(31.0), rtol=1e-13)


def test_polylog_negint_first_orders():
    x = np.array([-2.0, -0.5, 0.3, 0.8])
    assert_allclose(polylog_negint(0, x), x / (1 - x), rtol=1e-13)
    assert_allclose(polylog_negint(1, x), x / (1 - x) ** 2, rtol=1e-13)
    assert_allclose(polylog_negint(2, x), x * (1 + x) / (1 - x) ** 3, rtol=1e-12)


def test_hermite_recurrence():
    z = 0.4 - 1.1j
    assert_allclose(hermite_phys(3, z), 8 * z ** 3 - 12 * z, rtol=1e-13)


def test_elliptic_hermite_table_low_orders():
    tau = 0.4
    z = np.array([0.5 + 0.2j, -1.0 + 0.0j])
    values, log_scale = elliptic_hermite_table(3, z, tau)
    p = values * np.exp(log_scale)
    assert_allclose(p[0], 1.0)
    assert_allclose(p[1], z, rtol=1e-14)
    assert_allclose(p[2], (z ** 2 - tau) / math.sqrt(2.0), rtol=1e-14)


def test_product_weight_single_factor():
    assert_allclose(product_weight(1, [2.0], 1.5).value, 1.5 ** 2 * math.exp(-1.5), rtol=1e-14)


def test_product_weight_two_factors_is_bessel_k():
    s = 0.7
    expected = 2.0 * s ** 0.5 * bessel_k(1.0, 2.0 * math.sqrt(s))
    assert_allclose(product_weight(2, [0.0, 1.0], s).value, expected, rtol=1e-12)


@pytest.mark.parametrize('s', [0.25, 1.0, 4.0])
def test_product_weight_two_factors_matches_convolution(s):
    direct = product_weight(2, [0.0, 0.0], s).value
    conv = product_weight_recursive(2, [0.0, 0.0], s).value
    assert_allclose(direct, conv, rtol=1e-8)


def test_product_weight_three_factors_contour_matches_convolution():
    s = 2.0
    contour = product_weight(3, [0.0, 1.0, 2.0], s)
    conv = product_weight_recursive(3, [0.0, 1.0, 2.0], s)
    assert_allclose(contour.value, conv.value, rtol=1e-6)


def test_product_weight_far_tail_underflows_cleanly():
    assert product_weight(2, [0.0, 1.0], 1e26).value == 0.0
    assert product_weight(2, [0.0, 1.0], 1.14e26).value == 0.0
    assert product_weight(3, [0.0, 1.0, 2.0], 1e26).value == 0.0


def test_log_bessel_k_large_argument_branch():
    x = 1e10
    expected = 0.5 * math.log(math.pi / (2.0 * x)) - x + math.log1p(3.0 / (8.0 * x))
    assert_allclose(log_bessel_k(1.0, x), expected, rtol=1e-15)
    # the two branches agree where they meet
    below = log_bessel_k(1.0, 0.999 * LARGE_X_K)
    above = log_bessel_k(1.0, 1.001 * LARGE_X_K)
    assert below > above
    assert_allclose(above - below, -0.002 * LARGE_X_K - 0.5 * math.log(1.001 / 0.999), rtol=1e-9)


def test_product_weight_rejects_wrong_exponent_count():
    with pytest.raises(InputError):
        product_weight(2, [0.0], 1.0)


def test_truncated_product_weight_closed_forms():
    assert_allclose(truncated_product_weight(1, [3], 0.4).value, 0.6 ** 2 / 2.0, rtol=1e-14)
    # two factors of size one: ∫_s^1 dt/t = -log s
    assert_allclose(truncated_product_weight(2, [1, 1], 0.3).value, -math.log(0.3), rtol=1e-9)
    assert truncated_product_weight(2, [1, 1], 1.2).value == 0.0


def test_log_upper_gamma_stays_finite_when_q_underflows():
    vals = log_reg_gamma_upper_int(5, 3.0)
    assert_allclose(np.exp(vals), special.gammaincc(np.arange(1, 6), 3.0), rtol=1e-12)
    deep = log_reg_gamma_upper_int(3, 900.0)
    assert np.all(np.isfinite(deep))
    assert_allclose(deep[0], -900.0, rtol=1e-14)
    assert_allclose(deep[1], -900.0 + math.log(901.0), rtol=1e-12)
