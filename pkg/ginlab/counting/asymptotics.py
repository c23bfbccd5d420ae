"""
Large-N and large-R formulas for GinUE counting statistics: the infinite
number variance, thinned gap probabilities, the Gumbel law of the spectral
radius, large deviations of the count and the hole probability expansion.
"""
import math

import numpy as np
from scipy import special

from ginlab.counting.bernoulli import gap_generating
from ginlab.counting.bernoulli import log_gap_generating
from ginlab.counting.bernoulli import truncation_index
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.specfun.bessel import bessel_i_scaled
from ginlab.specfun.gamma import log_reg_gamma_upper_int
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad

HOLE_BASIS = ('N^2', 'N log N', 'N', 'sqrt N', 'log N', '1')
MAX_COND = 1e13


def variance_infinite_disk(R):
    """Var N(D_R) = R² e^{-2R²}(I_0(2R²) + I_1(2R²)) for the infinite GinUE."""
    R = float(R)
    if R < 0:
        raise InputError(f'radius must be >= 0, got {R}')
    x = 2.0 * R * R
    return R * R * (bessel_i_scaled(0, x) + bessel_i_scaled(1, x))


def variance_infinite_disk_sum(R):
    """Σ_j P(j, R²) Q(j, R²), truncated at j*."""
    R = float(R)
    if R < 0:
        raise InputError(f'radius must be >= 0, got {R}')
    j = np.arange(1, truncation_index(R) + 1, dtype=float)
    lower = special.gammainc(j, R * R)
    return math.fsum(lower * special.gammaincc(j, R * R))


def _check_zeta(zeta):
    if not 0.0 < zeta <= 1.0:
        raise InputError(f'thinning parameter must lie in (0, 1], got {zeta}')


def thinned_gap(xi, zeta, N, alpha):
    """Π_{j<=N}(1 - ξζ P(j, α²N)): generating function of the thinned GinUE in D_{α√(ζN)}."""
    _check_zeta(zeta)
    if alpha < 0:
        raise InputError(f'alpha must be >= 0, got {alpha}')
    j = np.arange(1, int(N) + 1, dtype=float)
    lam = special.gammainc(j, alpha * alpha * N)
    return gap_generating(lam, xi * zeta)


def log_thinned_gap(xi, zeta, N, alpha):
    _check_zeta(zeta)
    j = np.arange(1, int(N) + 1, dtype=float)
    return log_gap_generating(special.gammainc(j, alpha * alpha * N), xi * zeta)


def thinned_h(zeta):
    """
    Coefficient of √(α²N) in the log thinned hole probability:
    ∫_0^∞ log((1 - ζ/2 (1 + erf(t/√2)))/(1 - ζ)) dt + ∫_0^∞ log(1 - ζ/2 (1 - erf(t/√2))) dt.
    """
    _check_zeta(zeta)
    if zeta == 1.0:
        raise InputError('h(zeta) diverges at zeta = 1; the unthinned hole probability decays like N²')
    ratio = zeta / (2.0 * (1.0 - zeta))

    def inner(t):
        return math.log1p(ratio * special.erfc(t / math.sqrt(2.0)))

    def outer(t):
        return math.log1p(-0.5 * zeta * special.erfc(t / math.sqrt(2.0)))

    first, _ = adaptive_quad(inner, 0.0, math.inf, name='thinned_h_inner')
    second, _ = adaptive_quad(outer, 0.0, math.inf, name='thinned_h_outer')
    return first + second


def thinned_hole_expansion(zeta, N, alpha):
    """α²N log(1 - ζ) + √(α²N) h(ζ)."""
    x = alpha * alpha * N
    return x * math.log1p(-zeta) + math.sqrt(x) * thinned_h(zeta)


def gumbel_radius(x, N):
    """α_N = 1 + (√γ_N + x/√γ_N)/(2√N), γ_N = log(N/2π) - 2 log log N."""
    if N < 3:
        raise InputError(f'the Gumbel scaling needs N >= 3, got {N}')
    gamma_n = math.log(N / (2.0 * math.pi)) - 2.0 * math.log(math.log(N))
    if gamma_n <= 0:
        raise InputError(f'the Gumbel scaling needs log(N/2π) > 2 log log N, got N={N}')
    root = math.sqrt(gamma_n)
    return 1.0 + (root + x / root) / (2.0 * math.sqrt(N))


def gumbel_probability(x, N):
    """E_N(N; D_{α_N √N}) = Π_j P(j, α_N² N), the law of the spectral radius."""
    alpha = gumbel_radius(x, N)
    j = np.arange(1, int(N) + 1, dtype=float)
    upper = special.gammaincc(j, alpha * alpha * N)
    return math.exp(math.fsum(np.log1p(-upper)))


def large_dev_psi0(alpha, x):
    """
    ψ_0(α; x) = ¼|(α² - x)(α² - 3x) - 2x² log(x/α²)|, the rate of
    E_N(xN; D_{α√N}) ~ e^{-N² ψ_0}; x = 0 is taken by continuity.
    """
    if alpha <= 0:
        raise InputError(f'alpha must be positive, got {alpha}')
    if x < 0:
        raise InputError(f'x must be >= 0, got {x}')
    a2 = alpha * alpha
    log_term = 0.0 if x == 0 else 2.0 * x * x * math.log(x / a2)
    return 0.25 * abs((a2 - x) * (a2 - 3.0 * x) - log_term)


def log_hole_probability(N, alpha):
    """log E_N(0; D_{α√N}) = Σ_j log Q(j, α²N) for the finite GinUE."""
    return math.fsum(log_reg_gamma_upper_int(int(N), alpha * alpha * N))


def fit_hole_coefficients(N_grid, alpha):
    """
    Least-squares fit of log E_N(0; D_{α√N}) to C1 N² + C2 N log N + C3 N + C4 √N + c log N + c0.

    Returns:
        (C1, diagnostics) with all coefficients, the residual norm and the
        condition number of the column-scaled design matrix
    """
    N_grid = np.unique(np.asarray(N_grid, dtype=float))
    if N_grid.size < len(HOLE_BASIS):
        raise InputError(f'need at least {len(HOLE_BASIS)} distinct N values, got {N_grid.size}')
    if not 0.0 < alpha < 1.0:
        raise InputError(f'the hole expansion needs 0 < alpha < 1, got {alpha}')
    if alpha * alpha * N_grid.min() < 1.0:
        raise InputError('alpha^2 N < 1: the hole is too small for the large-N expansion')
    logs = np.array([log_hole_probability(int(n), alpha) for n in N_grid])
    design = np.column_stack([N_grid ** 2, N_grid * np.log(N_grid), N_grid,
                              np.sqrt(N_grid), np.log(N_grid), np.ones_like(N_grid)])
    scale = np.max(np.abs(design), axis=0)
    scaled = design / scale
    cond = float(np.linalg.cond(scaled))
    if not np.isfinite(cond) or cond > MAX_COND:
        raise NumericError('ill-conditioned design matrix for the hole expansion fit',
                           dict(cond=cond, N_grid=N_grid.tolist()))
    coef, _, _, _ = np.linalg.lstsq(scaled, logs, rcond=None)
    coef = coef / scale
    residual = float(np.linalg.norm(design @ coef - logs))
    diagnostics = dict(coefficients=dict(zip(HOLE_BASIS, coef.tolist())),
                       residual_norm=residual, cond=cond, n_points=int(N_grid.size),
                       exact_C1=-alpha ** 4 / 4.0)
    logger.debug(f'hole fit alpha={alpha}: C1={coef[0]:.6g}, cond={cond:.3g}, residual={residual:.3g}')
    return float(coef[0]), diagnostics
