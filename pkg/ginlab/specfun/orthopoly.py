import numpy as np
from scipy import special

from ginlab.errors import InputError

_RESCALE_AT = 1e100


def hermite_phys(n, z):
    """Physicists' Hermite H_n(z) at complex z by H_{k+1} = 2z H_k − 2k H_{k−1}."""
    if int(n) != n or n < 0:
        raise InputError(f'hermite_phys needs integer n >= 0, got {n}')
    n = int(n)
    z = np.asarray(z, dtype=complex)
    h_prev = np.ones_like(z)
    if n == 0:
        return h_prev if h_prev.ndim else complex(h_prev)
    h = 2.0 * z
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
    return h if h.ndim else complex(h)


def laguerre(n, alpha, x):
    if int(n) != n or n < 0:
        raise InputError(f'laguerre needs integer n >= 0, got {n}')
    if alpha <= -1:
        raise InputError(f'laguerre needs alpha > -1, got {alpha}')
    out = special.eval_genlaguerre(int(n), alpha, x)
    return out if np.ndim(out) else float(out)


def elliptic_hermite_table(n_max, z, tau):
    """
    Orthonormalised scaled monic Hermite polynomials p_l = C_l/√(l!),
    with C_l(z) = (τ/2)^{l/2} H_l(z/√(2τ)), at complex points z.

    Uses p_{l+1} = (z p_l − √l τ p_{l−1})/√(l+1) and rescales the running
    pair whenever it grows past 1e100.

    Returns:
        values (np.ndarray): shape (n_max, len(z)) scaled polynomial values
        log_scale (np.ndarray): shape (n_max, len(z)), true p_l = values * exp(log_scale)
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    values = np.zeros((n_max, z.size), dtype=complex)
    log_scale = np.zeros((n_max, z.size))
    if n_max == 0:
        return values, log_scale
    p_prev = np.zeros_like(z)
    p = np.ones_like(z)
    scale = np.zeros(z.size)
    values[0] = p
    for l in range(n_max - 1):
        p_next = (z * p - np.sqrt(l) * tau * p_prev) / np.sqrt(l + 1.0)
        p_prev, p = p, p_next
        big = np.abs(p) > _RESCALE_AT
        if np.any(big):
            factor = np.where(big, np.abs(p), 1.0)
            p = p / factor
            p_prev = p_prev / factor
            scale = scale + np.log(factor)
        values[l + 1] = p
        log_scale[l + 1] = scale
    return values, log_scale
