"""
Density of the rank-one multiplicative perturbation U A of a Haar unitary
U of size N+1, with A = diag(a, 1, ..., 1) and |a| < 1.

With s = |a|² and x = |z|², the N+1 eigenvalues have density

    (1/π) (1-s)^{-N} d/dx [ (1 - s/x)^N Σ_{k=0}^{N} x^k ]   for s < x < 1

and zero elsewhere. The total mass is N+1; at a = 0 one eigenvalue sits at
the origin and the rest follow the truncated unitary law with n = 1.
"""
import math

import numpy as np

from ginlab.errors import InputError


def density_ua(a, N, z):
    """
    Args:
        a (complex): the perturbation entry, |a| < 1
        N (int): the unitary has size N+1
        z (complex or array_like): points with |z| < 1

    Returns:
        float or np.ndarray
    """
    s = abs(a) ** 2
    if s >= 1.0:
        raise InputError(f'UA density needs |a| < 1, got |a| = {math.sqrt(s)}')
    if int(N) != N or N < 1:
        raise InputError(f'UA density needs a positive integer N, got {N}')
    N = int(N)
    x = np.abs(np.asarray(z, dtype=complex)) ** 2
    if np.any(x >= 1.0):
        raise InputError('UA density needs |z| < 1')
    k = np.arange(N + 1, dtype=float)
    geo = np.polynomial.polynomial.polyval(x, np.ones(N + 1))
    dgeo = np.polynomial.polynomial.polyval(x, k[1:])
    inside = x > s
    xs = np.where(inside, x, 1.0)
    ratio = 1.0 - s / xs
    factor = ratio ** N
    dfactor = N * ratio ** (N - 1) * s / xs ** 2
    val = (dfactor * geo + factor * dgeo) / (math.pi * (1.0 - s) ** N)
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out
