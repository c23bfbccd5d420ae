"""
Structure factor of the bulk scaled GinUE and the Fourier form of the
covariance of smooth linear statistics.
"""
import math

import numpy as np

from ginlab.errors import InputError
from ginlab.utils.quadrature import polar_rule

K_MAX = 40.0


def _k_squared(k):
    k = np.asarray(k)
    if np.iscomplexobj(k):
        return np.abs(k) ** 2
    if k.ndim >= 1 and k.shape[-1] == 2:
        return np.sum(k.astype(float) ** 2, axis=-1)
    return k.astype(float) ** 2


def structure_factor(k):
    """S(k) = (1 - e^{-|k|²/4})/π; k a 2-vector, an array of them, or a complex number."""
    out = (1.0 - np.exp(-_k_squared(k) / 4.0)) / math.pi
    return float(out) if np.ndim(out) == 0 else out


def structure_factor_thinned(k, zeta):
    """
    Thinned GinUE with positions rescaled by 1/√ζ (bulk density kept 1/π):
    S(k) = (1 - ζ e^{-ζ|k|²/4})/π, so S(0) = (1 - ζ)/π.
    """
    if not 0.0 < zeta <= 1.0:
        raise InputError(f'zeta must lie in (0, 1], got {zeta}')
    out = (1.0 - zeta * np.exp(-zeta * _k_squared(k) / 4.0)) / math.pi
    return float(out) if np.ndim(out) == 0 else out


def cov_bulk_fourier(f_hat, g_hat, R=1.0, zeta=1.0, k_max=K_MAX, n_radial=256, n_angle=128):
    """
    Cov(Σ f(r_l/R), Σ g(r_l/R)) for the bulk scaled (thinned) GinUE:
    (2π)^{-2} ∫ R⁴ f̂(Rk) ĝ(-Rk) S(k) dk, with f̂(k) = ∫ f(r) e^{ik·r} dr.

    Args:
        f_hat, g_hat (callable): Fourier transforms as functions of (kx, ky)
        R (float): length scale of the statistic
        zeta (float): thinning parameter, 1 for the full GinUE
    """
    if R <= 0:
        raise InputError(f'scale R must be positive, got {R}')
    k, w = polar_rule(k_max / R, n_radial=n_radial, n_angle=n_angle)
    kx, ky = k.real, k.imag
    S = structure_factor(k) if zeta == 1.0 else structure_factor_thinned(k, zeta)
    vals = R ** 4 * f_hat(R * kx, R * ky) * g_hat(-R * kx, -R * ky) * S
    return complex(np.sum(vals * w)) / (2.0 * math.pi) ** 2


def cov_bulk_large_scale(f_hat, g_hat, k_max=K_MAX, n_radial=256, n_angle=128):
    """R → ∞ limit of cov_bulk_fourier: (2π)^{-2} (4π)^{-1} ∫ f̂(k) ĝ(-k) |k|² dk."""
    k, w = polar_rule(k_max, n_radial=n_radial, n_angle=n_angle)
    kx, ky = k.real, k.imag
    vals = f_hat(kx, ky) * g_hat(-kx, -ky) * np.abs(k) ** 2
    return complex(np.sum(vals * w)) / ((2.0 * math.pi) ** 2 * 4.0 * math.pi)


def cov_thinned_large_scale(f_hat, g_hat, R, zeta, k_max=K_MAX, n_radial=256, n_angle=128):
    """Leading R² (1 - ζ)/π (2π)^{-2} ∫ f̂ ĝ(-k) dk of the thinned covariance."""
    k, w = polar_rule(k_max, n_radial=n_radial, n_angle=n_angle)
    vals = f_hat(k.real, k.imag) * g_hat(-k.real, -k.imag)
    return R * R * (1.0 - zeta) / math.pi * complex(np.sum(vals * w)) / (2.0 * math.pi) ** 2
