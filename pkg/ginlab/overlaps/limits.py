"""
Closed forms for GinUE eigenvector overlaps in global coordinates: the
finite-N law at the origin, the large-N conditional laws, the off-diagonal
mean with its crossover at |w1 - w2| ~ 1/√N, the mean for products and the
condition number law.
"""
import math

import numpy as np
from scipy import stats

from ginlab.errors import InputError
from ginlab.utils.quadrature import adaptive_quad

SERIES_CUTOFF = 1e-4


def _inside_disk(w):
    w = complex(w)
    if abs(w) >= 1:
        raise InputError(f'point must lie inside the unit disk, got {w}')
    return w


def origin_overlap_cdf(t, N):
    """P(O_11 <= t | z_1 = 0) for O_11 = 1/B, B ~ Beta[2, N - 1]."""
    if N < 2:
        raise InputError(f'the origin law needs N >= 2, got {N}')
    t = np.asarray(t, dtype=float)
    with np.errstate(divide='ignore'):
        out = np.where(t > 0, stats.beta(2, N - 1).sf(1.0 / np.where(t > 0, t, 1.0)), 0.0)
    return float(out) if out.ndim == 0 else out


def limit_overlap_cdf(t):
    """CDF of 1/Gamma[2, 1], the limit of O_11/(N(1 - |w|²))."""
    t = np.asarray(t, dtype=float)
    safe = np.where(t > 0, t, 1.0)
    out = np.where(t > 0, (1.0 + 1.0 / safe) * np.exp(-1.0 / safe), 0.0)
    return float(out) if out.ndim == 0 else out


def limit_overlap_pdf(t):
    t = np.asarray(t, dtype=float)
    safe = np.where(t > 0, t, 1.0)
    out = np.where(t > 0, np.exp(-1.0 / safe - 3.0 * np.log(safe)), 0.0)
    return float(out) if out.ndim == 0 else out


def overlap_limit_pdf(t, w):
    """P(t, w) = ((1 - |w|²)²/(π t³)) e^{-(1 - |w|²)/t}, joint in (O_11 - 1)/N and the eigenvalue."""
    a = 1.0 - abs(_inside_disk(w)) ** 2
    if t <= 0:
        raise InputError(f'overlap density needs t > 0, got {t}')
    return a * a / math.pi * math.exp(-a / t - 3.0 * math.log(t))


def overlap_limit_mean(w):
    """∫ t P(t, w) dt = (1 - |w|²)/π."""
    return (1.0 - abs(_inside_disk(w)) ** 2) / math.pi


def overlap_limit_moment(w, order):
    """∫ t^order P(t, w) dt by quadrature after u = (1 - |w|²)/t; order 0 or 1."""
    if order not in (0, 1):
        raise InputError(f'only the zeroth and first moments exist, got order {order}')
    a = 1.0 - abs(_inside_disk(w)) ** 2
    val, _ = adaptive_quad(lambda u: a ** order * u ** (1 - order) * math.exp(-u) / math.pi,
                           0.0, np.inf, name='overlap moment')
    return val


def crossover_factor(x):
    """(1 - (1 + x) e^{-x})/(1 - e^{-x}); x/2 - x²/12 near zero."""
    if x < 0:
        raise InputError(f'crossover argument must be non-negative, got {x}')
    if x < SERIES_CUTOFF:
        return 0.5 * x - x * x / 12.0
    return -(math.expm1(-x) + x * math.exp(-x)) / -math.expm1(-x)


def overlap_offdiag_mean(w1, w2, N):
    """
    Large-N conditional mean of O_12 given z_1 = w1, z_2 = w2:

        -(1/N)(1 - w1 w̄2)/|w1 - w2|⁴ × crossover_factor(N |w1 - w2|²)
    """
    w1 = _inside_disk(w1)
    w2 = _inside_disk(w2)
    d2 = abs(w1 - w2) ** 2
    if d2 == 0:
        raise InputError(f'conditioning points coincide at {w1}')
    return -(1.0 - w1 * w2.conjugate()) / (N * d2 * d2) * crossover_factor(N * d2)


def overlap_products_mean(z, M):
    """
    lim (1/N²)⟨Σ_j O_jj δ(z - z_j)⟩ for products of M global scaled GinUE
    matrices: (1/π)|z|^{-2+2/M}(1 - |z|^{2/M}) inside the unit disk.
    """
    if int(M) != M or M < 1:
        raise InputError(f'M must be a positive integer, got {M}')
    r = abs(complex(z))
    if r >= 1:
        return 0.0
    if r == 0:
        if M == 1:
            return 1.0 / math.pi
        raise InputError(f'the product overlap mean diverges at z = 0 for M = {M}')
    return r ** (-2.0 + 2.0 / M) * (1.0 - r ** (2.0 / M)) / math.pi


def condition_number_pdf(x):
    """Large-N density of κ_N/N: (8/x³) e^{-4/x²}."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    out = np.where(x > 0, 8.0 * np.exp(-4.0 / safe ** 2 - 3.0 * np.log(safe)), 0.0)
    return float(out) if out.ndim == 0 else out


def condition_number_cdf(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    out = np.where(x > 0, np.exp(-4.0 / safe ** 2), 0.0)
    return float(out) if out.ndim == 0 else out


def condition_number_mode():
    return math.sqrt(8.0 / 3.0)
