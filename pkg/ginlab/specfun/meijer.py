"""
Meijer-G weights of the product ensembles.

``product_weight`` is G^{M,0}_{0,M}(s | ν_1..ν_M), the weight of a product of
M induced Ginibre factors; its Mellin transform is Π_m Γ(u + ν_m).
``truncated_product_weight`` is G^{M,0}_{M,M}(s | n_1..n_M ; 0..0) on (0, 1),
the weight of a product of truncated Haar unitaries; its Mellin transform is
Π_m Γ(u)/Γ(u + n_m).
"""
import math

import numpy as np
from scipy import optimize
from scipy import special

from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.specfun.bessel import log_bessel_k
from ginlab.specfun.results import EvalResult
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad
from ginlab.utils.quadrature import composite_gauss_legendre

_TAIL_REL = 1e-17
# below this log weight exp underflows; a margin covers the dropped algebraic prefactors
_LOG_UNDERFLOW = -745.0
_LOG_MARGIN = 60.0
_GL_ORDER = 16


def _check_nu(M, nu):
    if int(M) != M or M < 1:
        raise InputError(f'M must be a positive integer, got {M}')
    nu = np.asarray(nu, dtype=float).ravel()
    if nu.size != M:
        raise InputError(f'expected {M} exponents, got {nu.size}')
    if np.any(nu < 0):
        raise InputError(f'exponents must be nonnegative, got {nu}')
    return int(M), nu


def _contour_abscissa(nu, log_s):
    # the line Re u = min(ν+1)/2 + 1/2, moved right to the saddle of |Π Γ(u+ν) s^{-u}| when that lies further out
    c0 = float(np.min(nu + 1.0) / 2.0 + 0.5)

    def slope(c):
        return float(np.sum(special.digamma(c + nu)) - log_s)

    if slope(c0) >= 0:
        return c0
    hi = 2.0 * c0 + 1.0
    while slope(hi) < 0:
        hi *= 2.0
    return optimize.brentq(slope, c0, hi, xtol=1e-10)


def _mellin_barnes(nu, s):
    log_s = math.log(s)
    c = _contour_abscissa(nu, log_s)

    def log_integrand(t):
        u = c + 1j * np.atleast_1d(np.asarray(t, dtype=float))
        return np.sum(special.loggamma(u[..., None] + nu), axis=-1) - u * log_s

    base = float(np.real(log_integrand(0.0))[0])
    t_max = 4.0
    while np.real(log_integrand(t_max))[0] - base > math.log(_TAIL_REL):
        t_max *= 1.5
        if t_max > 1e4:
            raise NumericError('Mellin-Barnes integrand does not decay',
                               dict(s=s, nu=nu.tolist(), t_max=t_max))
    freq = nu.size * math.log1p(t_max) + abs(log_s) + 1.0
    n_panels = int(max(16, math.ceil(t_max * freq / 2.0)))

    def integrate(panels):
        t, w = composite_gauss_legendre(0.0, t_max, n_panels=panels, order=_GL_ORDER)
        vals = np.real(np.exp(log_integrand(t) - base))
        return float(np.sum(vals * w))

    fine = integrate(n_panels)
    coarse = integrate(max(n_panels // 2, 8))
    scale = math.exp(base) / math.pi
    value = scale * fine
    tail = scale * _TAIL_REL * t_max
    err = scale * abs(fine - coarse) + tail
    logger.debug(f'mellin-barnes s={s:.4g} c={c:.4g} t_max={t_max:.3g} panels={n_panels} err={err:.2e}')
    return value, err


def _log_weight_leading(nu, s):
    # w_M(s) ~ s^{(Σν)/M + (1-M)/(2M)} e^{-M s^{1/M}} as s → ∞
    M = nu.size
    log_s = math.log(s)
    return ((float(np.sum(nu)) + 0.5 * (1 - M)) / M * log_s
            - M * math.exp(log_s / M) + 0.5 * (M - 1) * math.log(2.0 * math.pi))


def product_weight(M, nu, s):
    """
    Meijer-G weight w^(M)(s) = G^{M,0}_{0,M}(s | ν_1..ν_M) at s = |z|².

    M = 1 is s^ν e^{-s}, M = 2 the Bessel form 2 s^{(ν_1+ν_2)/2} K_{ν_2-ν_1}(2√s),
    and M >= 3 a numerical inverse Mellin transform along a vertical line.

    Returns:
        EvalResult
    """
    M, nu = _check_nu(M, nu)
    s = float(s)
    if s < 0:
        raise InputError(f'product_weight needs s >= 0, got {s}')
    if s == 0:
        if M == 1:
            return EvalResult(value=1.0 if nu[0] == 0 else 0.0)
        if np.min(nu) > 0:
            return EvalResult(value=0.0)
        raise InputError('product weight diverges at s = 0 when some exponent is zero')
    if M == 1:
        return EvalResult(value=math.exp(nu[0] * math.log(s) - s), abs_err_est=0.0)
    if M == 2:
        order = abs(nu[1] - nu[0])
        log_val = math.log(2.0) + 0.5 * (nu[0] + nu[1]) * math.log(s) + float(log_bessel_k(order, 2.0 * math.sqrt(s)))
        val = math.exp(log_val)
        return EvalResult(value=val, abs_err_est=1e-14 * val)
    if _log_weight_leading(nu, s) < _LOG_UNDERFLOW - _LOG_MARGIN:
        return EvalResult(value=0.0, abs_err_est=0.0)
    val, err = _mellin_barnes(nu, s)
    if err > 1e-6 * max(abs(val), 1e-300) and err > 1e-12:
        raise NumericError('Meijer-G contour quadrature did not converge',
                           dict(M=M, s=s, value=val, abs_err_est=err))
    return EvalResult(value=val, abs_err_est=err)


def product_weight_recursive(M, nu, s):
    """
    w_M(s) = ∫_0^∞ w_{M-1}(s/t) t^{ν_M} e^{-t} dt/t, the multiplicative
    convolution behind the Mellin product; used to cross-check product_weight.
    """
    M, nu = _check_nu(M, nu)
    s = float(s)
    if s <= 0:
        raise InputError(f'product_weight_recursive needs s > 0, got {s}')
    if M == 1:
        return product_weight(1, nu, s)
    inner_nu = nu[:-1]
    last = nu[-1]

    def integrand(log_t):
        t = math.exp(log_t)
        x = s / t
        if M > 2 and _log_weight_leading(inner_nu, x) < _LOG_UNDERFLOW - _LOG_MARGIN:
            return 0.0
        return product_weight(M - 1, inner_nu, x).value * math.exp(last * log_t - t)

    # substitution t = e^x; the integrand decays doubly exponentially for x → +∞
    lo = math.log(s) - 60.0
    hi = math.log(80.0 + 4.0 * last)
    val, err = adaptive_quad(integrand, lo, hi, epsabs=1e-15, epsrel=1e-11,
                             points=[0.5 * math.log(s)], name='product_weight_recursive')
    return EvalResult(value=val, abs_err_est=err)


def truncated_product_weight(M, n_list, s):
    """
    G^{M,0}_{M,M}(s | n_1..n_M ; 0..0) for 0 < s < 1 (zero for s >= 1).
    M = 1 is (1-s)^{n-1}/Γ(n); larger M are built by Mellin convolution with
    one factor at a time.
    """
    M = int(M)
    n_arr = np.asarray(n_list, dtype=float).ravel()
    if M < 1 or n_arr.size != M:
        raise InputError(f'expected {M} truncation sizes, got {n_arr.size}')
    if np.any(n_arr < 1):
        raise InputError(f'truncation sizes must be >= 1, got {n_arr}')
    s = float(s)
    if s < 0:
        raise InputError(f'truncated_product_weight needs s >= 0, got {s}')
    if s >= 1.0:
        return EvalResult(value=0.0)
    if M == 1:
        n = n_arr[0]
        if s == 0.0:
            return EvalResult(value=1.0 / special.gamma(n))
        return EvalResult(value=math.exp((n - 1.0) * math.log1p(-s) - special.gammaln(n)))
    if s == 0.0:
        raise InputError('truncated product weight diverges at s = 0 for M >= 2')
    inner = n_arr[:-1]
    n_last = n_arr[-1]

    def integrand(t):
        # t ranges over (s, 1); the inner factor is evaluated at s/t in (s, 1)
        return (truncated_product_weight(M - 1, inner, s / t).value
                * math.exp((n_last - 1.0) * math.log1p(-t) - special.gammaln(n_last)) / t)

    val, err = adaptive_quad(integrand, s, 1.0, epsabs=1e-14, epsrel=1e-10,
                             name='truncated_product_weight')
    return EvalResult(value=val, abs_err_est=err)
