from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate

from ginlab.errors import NumericError
from ginlab.utils.lab_logger import logger


@lru_cache(maxsize=64)
def _leggauss_cached(n):
    return leggauss(n)


def gauss_legendre_rule(n, a=-1.0, b=1.0):
    """Return (x, w) Gauss-Legendre nodes and weights mapped to [a, b]."""
    x, w = _leggauss_cached(int(n))
    half = 0.5 * (b - a)
    return half * x + 0.5 * (b + a), half * w


def composite_gauss_legendre(a, b, n_panels=32, order=16):
    edges = np.linspace(a, b, n_panels + 1)
    x0, w0 = _leggauss_cached(int(order))
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    w = (half[:, None] * w0[None, :]).ravel()
    return x, w


def polar_rule(r_max, n_radial=128, n_angle=256, r_min=0.0, n_panels=1):
    """
    Tensor rule on an annulus: Gauss-Legendre in r times the trapezoid rule in
    the angle (spectrally accurate for periodic integrands).

    Returns:
        z (np.ndarray): complex nodes, flattened
        w (np.ndarray): weights including the Jacobian r
    """
    if n_panels > 1:
        r, wr = composite_gauss_legendre(r_min, r_max, n_panels=n_panels,
                                         order=max(n_radial // n_panels, 4))
    else:
        r, wr = gauss_legendre_rule(n_radial, r_min, r_max)
    theta = 2.0 * np.pi * np.arange(n_angle) / n_angle
    wt = np.full(n_angle, 2.0 * np.pi / n_angle)
    z = (r[:, None] * np.exp(1j * theta[None, :])).ravel()
    w = (wr[:, None] * r[:, None] * wt[None, :]).ravel()
    return z, w


def radial_integral(func, r_min, r_max, n_panels=64, order=20):
    """∫ 2π r f(r) dr by composite Gauss-Legendre, f vectorised in r."""
    r, w = composite_gauss_legendre(r_min, r_max, n_panels=n_panels, order=order)
    return float(np.sum(2.0 * np.pi * r * np.asarray(func(r)) * w))


def adaptive_quad(func, a, b, epsabs=1e-13, epsrel=1e-12, limit=400, points=None, name='integral'):
    """
    Wrapper around scipy.integrate.quad that raises NumericError instead of
    returning an unreliable value.

    Returns:
        (value, abs_err_est)
    """
    kwargs = dict(epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
    if points is not None and np.isfinite(a) and np.isfinite(b):
        kwargs['points'] = points
    out = integrate.quad(func, a, b, **kwargs)
    value, err = out[0], out[1]
    if len(out) > 3:
        msg = out[3]
        tol = max(epsabs, epsrel * abs(value)) * 1e3
        if err > tol:
            raise NumericError(f'{name}: quadrature did not converge',
                               dict(value=value, abs_err_est=err, message=msg))
        logger.debug(f'{name}: quad warning ignored, err={err:.3e}')
    if not np.isfinite(value):
        raise NumericError(f'{name}: non-finite quadrature value',
                           dict(value=value, abs_err_est=err))
    return value, err
