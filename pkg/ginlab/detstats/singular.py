"""
Singular values of square GinUE matrices: QR diagonal law, extreme squared
singular values, the Marchenko-Pastur limit and the condition number.
"""
import math

import numpy as np
from scipy import stats

from ginlab.ensembles.gaussian import sample_gaussian_matrix
from ginlab.errors import InputError
from ginlab.runner.replica_runner import ReplicaRunner
from ginlab.utils.quadrature import adaptive_quad
from ginlab.utils.rng import replica_rng


def _check_n(N):
    if int(N) != N or N < 1:
        raise InputError(f'N must be a positive integer, got {N}')
    return int(N)


def qr_diag_law(N):
    """
    Laws of r_jj², j = 1..N, for X = QR with positive diagonal: column j is
    orthogonalised against j - 1 others, leaving r_jj² ~ Gamma[N - j + 1, 1].
    As a set these are the ½χ²_{2l}, l = 1..N.
    """
    N = _check_n(N)
    return [stats.gamma(a=N - j + 1) for j in range(1, N + 1)]


def qr_diag_sample(N, replicas, seed, threads=1):
    """r_jj² from numpy QR, rows indexed by replica."""
    N = _check_n(N)

    def one(replica):
        r = np.linalg.qr(sample_gaussian_matrix(N, N, replica_rng(seed, replica)), mode='r')
        return np.abs(np.diagonal(r)) ** 2

    return np.asarray(ReplicaRunner(threads=threads, desc='QR diagonals')(one, replicas))


def squared_singular_values(matrix):
    return np.linalg.svd(np.asarray(matrix, dtype=complex), compute_uv=False) ** 2


def singular_sample(N, replicas, seed, threads=1):
    """Squared singular values (descending) of unscaled GinUE matrices, one row per replica."""
    N = _check_n(N)

    def one(replica):
        return squared_singular_values(sample_gaussian_matrix(N, N, replica_rng(seed, replica)))

    return np.asarray(ReplicaRunner(threads=threads, desc='singular values')(one, replicas))


def smallest_singular_cdf(s, N):
    """P(s_min <= s) = 1 - e^{-N s}: the smallest squared singular value is Exp with rate N."""
    return -np.expm1(-_check_n(N) * np.asarray(s, dtype=float))


def condition_number_sample(N, replicas, seed, threads=1):
    """κ_N/N = √(s_max/s_min)/N."""
    s = singular_sample(N, replicas, seed, threads)
    return np.sqrt(s[:, 0] / s[:, -1]) / N


def marchenko_pastur_density(x):
    """(1/2π)√((4 - x)/x) on (0, 4), the density of the squared singular values divided by N."""
    x = np.asarray(x, dtype=float)
    inside = (x > 0) & (x < 4)
    safe = np.where(inside, x, 1.0)
    out = np.where(inside, np.sqrt((4.0 - safe) / safe) / (2.0 * math.pi), 0.0)
    return float(out) if out.ndim == 0 else out


def catalan(k):
    return math.comb(2 * k, k) // (k + 1)


def marchenko_pastur_moment(k):
    """∫_0^4 x^k ρ(x) dx by quadrature; equals the Catalan number C_k."""
    if int(k) != k or k < 0:
        raise InputError(f'moment order must be a non-negative integer, got {k}')
    # x = 4 sin²θ removes both endpoint singularities
    val, _ = adaptive_quad(lambda th: (4.0 * math.sin(th) ** 2) ** k * 8.0 * math.cos(th) ** 2 / (2.0 * math.pi),
                           0.0, 0.5 * math.pi, name='Marchenko-Pastur moment')
    return val


def singular_moment_mc(k, N, replicas, seed, threads=1):
    """(1/N) Σ_j (s_j/N)^k averaged over replicas."""
    s = singular_sample(N, replicas, seed, threads) / N
    per = np.mean(s ** k, axis=1)
    return float(np.mean(per)), float(np.std(per, ddof=1) / math.sqrt(per.size))


def edge_ratio(N, replicas, seed, threads=1):
    """s_max/N per replica; tends to 4."""
    return singular_sample(N, replicas, seed, threads)[:, 0] / N


def log_det_from_qr(r_squared):
    return np.sum(np.log(r_squared), axis=-1)
