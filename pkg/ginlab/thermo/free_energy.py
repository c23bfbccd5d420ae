"""
Exact β = 2 free energies of the charge neutral plasma on the disk and on
the sphere, their large-N expansions, and a Monte Carlo check of the
configuration integral at small N.
"""
import math

import numpy as np

from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.specfun.gamma import ZETA_PRIME_MINUS_ONE
from ginlab.specfun.gamma import log_barnes_g
from ginlab.specfun.gamma import log_factorial
from ginlab.utils.lab_logger import logger
from ginlab.utils.rng import STREAM_AUX
from ginlab.utils.rng import as_generator

# per-particle free energy at β = 2, ½ log(1/(2π³))
BETA_F_2 = -0.5 * math.log(2.0 * math.pi ** 3)


def _check_n(N):
    if int(N) != N or N < 1:
        raise InputError(f'N must be a positive integer, got {N}')
    return int(N)


def log_configuration_integral_disk(N):
    """log Q_N(2) = log(N! π^N G(N+1)) for the weight e^{-Σ|z|²} Π|z_k - z_j|²."""
    N = _check_n(N)
    return float(log_factorial(N)) + N * math.log(math.pi) + log_barnes_g(N)


def free_energy_disk_beta2(N):
    """βF_N = -log(A_N Q_N/N!) with A_N = exp(-2N²(¼ log N - 3/8))."""
    N = _check_n(N)
    log_a = -2.0 * N * N * (0.25 * math.log(N) - 0.375)
    return -(log_a + N * math.log(math.pi) + log_barnes_g(N))


def free_energy_disk_expansion(N):
    """N βf + (1/12) log N - ζ'(-1) + 1/(240 N²)."""
    return N * BETA_F_2 + math.log(N) / 12.0 - ZETA_PRIME_MINUS_ONE + 1.0 / (240.0 * N * N)


def free_energy_sphere_beta2(N):
    """
    βF_N on the sphere of radius √N/2, from
    log Z = N²/2 + N log π + 2 log G(N+1) - N log N! + (N/2) log N.
    """
    N = _check_n(N)
    log_z = (0.5 * N * N + N * math.log(math.pi) + 2.0 * log_barnes_g(N)
             - N * float(log_factorial(N)) + 0.5 * N * math.log(N))
    return -log_z


def free_energy_sphere_expansion(N):
    """N βf + (1/6) log N + 1/12 - 2ζ'(-1) + 1/(180 N²)."""
    return (N * BETA_F_2 + math.log(N) / 6.0 + 1.0 / 12.0 - 2.0 * ZETA_PRIME_MINUS_ONE
            + 1.0 / (180.0 * N * N))


def expansion_residuals(exact, expansion, N_grid):
    N_grid = [_check_n(N) for N in N_grid]
    return np.array([exact(N) - expansion(N) for N in N_grid])


def decay_exponent(N_grid, residuals):
    """Slope of log|residual| against log N."""
    res = np.abs(np.asarray(residuals, dtype=float))
    if np.any(res == 0):
        raise NumericError('residual vanished to rounding; choose a smaller N grid',
                           dict(residuals=res.tolist()))
    slope, _ = np.polyfit(np.log(np.asarray(N_grid, dtype=float)), np.log(res), 1)
    return float(slope)


def fit_log_coefficient(values, N_grid, per_particle=BETA_F_2):
    """
    Least squares fit of values - N per_particle against {log N, 1, 1/N²}.

    Returns:
        (log N coefficient, constant)
    """
    N = np.asarray(N_grid, dtype=float)
    if N.size < 4:
        raise InputError(f'need at least four N values, got {N.size}')
    y = np.asarray(values, dtype=float) - N * per_particle
    basis = np.stack([np.log(N), np.ones_like(N), 1.0 / N ** 2], axis=1)
    coef, _, rank, _ = np.linalg.lstsq(basis, y, rcond=None)
    if rank < basis.shape[1]:
        raise NumericError('degenerate fit basis', dict(rank=int(rank)))
    return float(coef[0]), float(coef[1])


def disk_configuration_integral_mc(N, samples, seed):
    """
    Q_N(2) = π^N E|Δ(z)|² for i.i.d. standard complex Gaussians z_j.

    Returns:
        (log estimate, standard error of the log estimate)
    """
    N = _check_n(N)
    if samples < 2:
        raise InputError(f'need at least two samples, got {samples}')
    rng = as_generator(seed, STREAM_AUX)
    z = (rng.standard_normal((samples, N)) + 1j * rng.standard_normal((samples, N))) / math.sqrt(2.0)
    iu = np.triu_indices(N, k=1)
    log_vdm = np.sum(np.log(np.abs(z[:, iu[0]] - z[:, iu[1]]) ** 2), axis=1)
    shift = float(np.max(log_vdm))
    weights = np.exp(log_vdm - shift)
    mean = float(np.mean(weights))
    sem = float(np.std(weights, ddof=1)) / math.sqrt(samples)
    logger.debug(f'configuration integral N={N}: relative error {sem / mean:.3e}')
    return N * math.log(math.pi) + shift + math.log(mean), sem / mean
