"""
Spectral statistics used for dissipative quantum chaos: the connected
dissipative spectral form factor, ⟨|Tr X^k|²⟩ and the ensemble average of
the Lindblad dissipator trace.
"""
import math
from fractions import Fraction

import numpy as np
from scipy import special

from ginlab.ensembles.gaussian import sample_gaussian_matrix
from ginlab.errors import InputError
from ginlab.runner.replica_runner import ReplicaRunner
from ginlab.utils.rng import replica_rng
from ginlab.utils.stats import blocked_jackknife
from ginlab.utils.stats import mean_and_sem


def _check_n(N):
    if int(N) != N or N < 1:
        raise InputError(f'N must be a positive integer, got {N}')
    return int(N)


def _laguerre_functions(N, u):
    """
    f[k, d] = √(k!/(k + d)!) u^{d/2} e^{-u/2} L_k^{(d)}(u) for k + d < N,
    by the three-term recurrence in k at fixed d.
    """
    d = np.arange(N, dtype=float)
    f = np.zeros((N, N))
    if u == 0:
        f[:, 0] = 1.0
        return f
    f_prev = np.zeros(N)
    f_cur = np.exp(0.5 * (d * math.log(u) - special.gammaln(d + 1.0) - u))
    f[0] = f_cur
    for k in range(N - 1):
        f_next = ((2 * k + 1 + d - u) * f_cur - np.sqrt(k * (k + d)) * f_prev) / np.sqrt((k + 1) * (k + 1 + d))
        f[k + 1] = f_next
        f_prev, f_cur = f_cur, f_next
    return f


def dsff(t, s, N):
    """
    K_N(t, s) = (1/N) Cov(Σ e^{i(x_j t + y_j s)}, Σ e^{-i(x_j t + y_j s)}) for
    the unscaled GinUE, with u = (t² + s²)/4:

        1 - (1/N) Σ_{m,n<N} e^{-2u} u^{|m-n|} (min!/max!) L_min^{(|m-n|)}(u)²

    The ₁F₁(max + 1, |m - n| + 1; -u) of the hypergeometric form is taken
    through Kummer's transformation to this terminating Laguerre polynomial.
    """
    N = _check_n(N)
    u = 0.25 * (float(t) ** 2 + float(s) ** 2)
    f = _laguerre_functions(N, u)
    k_idx, d_idx = np.meshgrid(np.arange(N), np.arange(N), indexing='ij')
    valid = (k_idx + d_idx) < N
    mult = np.where(d_idx > 0, 2.0, 1.0)
    total = math.exp(-u) * float(np.sum(np.where(valid, mult * f * f, 0.0)))
    return 1.0 - total / N


def dsff_limit(t, s):
    """1 - e^{-(t² + s²)/4}, which is π S(k) for the bulk structure factor."""
    return -math.expm1(-0.25 * (t * t + s * s))


def dsff_mc(t, s, N, replicas, seed, threads=1):
    """
    Sample estimate of K_N(t, s) over GinUE spectra.

    Returns:
        (estimate, jackknife standard error)
    """
    N = _check_n(N)

    def one(replica):
        z = np.linalg.eigvals(sample_gaussian_matrix(N, N, replica_rng(seed, replica)))
        return np.sum(np.exp(1j * (t * z.real + s * z.imag)))

    sums = np.asarray(ReplicaRunner(threads=threads, desc='DSFF')(one, replicas), dtype=complex)

    def connected(block):
        return (np.mean(np.abs(block) ** 2) - np.abs(np.mean(block)) ** 2) / N

    value, err = blocked_jackknife(sums, estimator=connected)
    return float(value), float(err)


def tr_moment_exact(k, N):
    """
    ⟨|Tr X^k|²⟩ = ((k + N)! - N!(N - 1)!/(N - k - 1)!)/((k + 1)(N - 1)!) as an
    exact rational; the second term is absent for k >= N.
    """
    N = _check_n(N)
    if int(k) != k or k < 1:
        raise InputError(f'k must be a positive integer, got {k}')
    k = int(k)
    first = Fraction(math.factorial(k + N), math.factorial(N - 1))
    second = Fraction(math.factorial(N), math.factorial(N - k - 1)) if k < N else Fraction(0)
    return (first - second) / (k + 1)


def tr_moment(k, N):
    return float(tr_moment_exact(k, N))


def tr_moment_scaled(k, N):
    """(1/(k N^k)) ⟨|Tr X^k|²⟩."""
    return float(tr_moment_exact(k, N) / (int(k) * Fraction(int(N)) ** int(k)))


def tr_moment_limit(x):
    """lim (1/(k N^k))⟨|Tr X^k|²⟩ with k = x√N: 2 sinh(x²/2)/x²."""
    if x == 0:
        return 1.0
    return 2.0 * math.sinh(0.5 * x * x) / (x * x)


def tr_moment_mc(k, N, replicas, seed, threads=1):
    N = _check_n(N)

    def one(replica):
        z = np.linalg.eigvals(sample_gaussian_matrix(N, N, replica_rng(seed, replica)))
        return abs(np.sum(z ** k)) ** 2

    mean, sem = mean_and_sem(np.asarray(ReplicaRunner(threads=threads, desc='Tr X^k')(one, replicas)))
    return float(mean), float(sem)


def lindblad_limit(t):
    """lim (1/N²)⟨Tr e^{t D_L}⟩ = e^{-4t}(I_0(2t) + I_1(2t))²."""
    if t < 0:
        raise InputError(f'time must be non-negative, got {t}')
    return float((special.i0e(2.0 * t) + special.i1e(2.0 * t)) ** 2)


def lindblad_mc(t, N, replicas, seed, threads=1):
    """
    ⟨((1/N) Σ_j e^{-t x_j})²⟩ with x_j the eigenvalues of L†L for global
    scaled GinUE L.

    Returns:
        (estimate, standard error)
    """
    N = _check_n(N)
    if t < 0:
        raise InputError(f'time must be non-negative, got {t}')

    def one(replica):
        g = sample_gaussian_matrix(N, N, replica_rng(seed, replica))
        x = np.linalg.svd(g, compute_uv=False) ** 2 / N
        return float(np.mean(np.exp(-t * x))) ** 2

    mean, sem = mean_and_sem(np.asarray(ReplicaRunner(threads=threads, desc='Lindblad')(one, replicas)))
    return float(mean), float(sem)
