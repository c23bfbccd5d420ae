"""
Sum rules at the soft edge of the GinUE.

The edge coordinate y points into the droplet, so the limiting density is
ρ_e(y) = (1 + erf(√2 y))/(2π) and the 1/√N correction μ(y) carries the
factor e^{-2y²}(y² - 1).
"""
import math

import numpy as np
from scipy import special

from ginlab.errors import InputError
from ginlab.kernels.edge import edge_profile_terms
from ginlab.kernels.edge import rho2t_edge
from ginlab.sumrules.residual import Residual
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad

Y_REACH = 8.0
SERIES_TERM_TOL = 1e-16
SERIES_MAX_TERMS = 20000


def edge_density(y):
    leading, _ = edge_profile_terms(1.0, -np.asarray(y, dtype=float))
    return float(leading) if np.ndim(leading) == 0 else leading


def edge_correction(y):
    _, correction = edge_profile_terms(1.0, -np.asarray(y, dtype=float))
    return float(correction) if np.ndim(correction) == 0 else correction


def _excess(y):
    return edge_density(y) - (1.0 / math.pi if y > 0 else 0.0)


def _split_quad(func, name):
    lower, err_lo = adaptive_quad(func, -math.inf, 0.0, name=f'{name} (y < 0)')
    upper, err_hi = adaptive_quad(func, 0.0, math.inf, name=f'{name} (y > 0)')
    return lower + upper, err_lo + err_hi


def edge_density_sum_rules(beta=2.0):
    """
    Excess charge of the boundary layer (zero), its dipole moment against the
    integrated correction term, and the dipole moment against -(1 - β/4)/(2πβ).
    """
    charge, charge_err = _split_quad(_excess, 'excess charge')
    dipole, dipole_err = _split_quad(lambda y: y * _excess(y), 'excess dipole')
    mu_total, mu_err = adaptive_quad(edge_correction, -math.inf, math.inf, name='correction mass')
    return (
        Residual(name='edge excess charge', target=0.0, value=charge, method='quadrature',
                 err_est=charge_err),
        Residual(name='edge dipole vs correction', target=mu_total, value=dipole, method='quadrature',
                 err_est=dipole_err + mu_err),
        Residual(name='edge dipole moment', target=-(1.0 - beta / 4.0) / (2.0 * math.pi * beta),
                 value=dipole, method='quadrature', err_est=dipole_err, meta=dict(beta=beta)),
    )


def _rho2t_along_edge(y, yp):
    """∫ dx' ρ₂^T((0, y), (x', y')), slow 1/x'² decay handled on the half line."""
    value, err = adaptive_quad(lambda x: rho2t_edge(1j * y, x + 1j * yp), 0.0, math.inf,
                               epsabs=1e-12, epsrel=1e-10, name='edge pair function along x')
    return 2.0 * value, 2.0 * err


def edge_dipole_inner(y, numeric=False):
    """
    ∫ dy' (y' - y) ∫ dx' ρ₂^T((0, y), (x', y')) = -e^{-2y²}/√(8π³).
    With ``numeric`` the double integral is computed instead of the closed form.
    """
    closed = -math.exp(-2.0 * y * y) / math.sqrt(8.0 * math.pi ** 3)
    if not numeric:
        return closed, 0.0
    lo = min(y, 0.0) - Y_REACH
    hi = max(y, 0.0) + Y_REACH
    value, err = adaptive_quad(lambda yp: (yp - y) * _rho2t_along_edge(y, yp)[0], lo, hi,
                               epsabs=1e-11, epsrel=1e-9, points=[y], name='edge dipole inner')
    logger.debug(f'edge dipole inner at y={y}: quadrature {value:.12g}, closed form {closed:.12g}')
    return value, err


def edge_dipole_residual(beta=2.0, numeric_inner=False):
    """-2πβ ∫ dy (inner over y' and x') = 1, the inner integral taken first."""
    errors = []

    def integrand(y):
        value, err = edge_dipole_inner(y, numeric=numeric_inner)
        errors.append(err)
        return value

    outer, outer_err = adaptive_quad(integrand, -Y_REACH, Y_REACH, epsabs=1e-11,
                                     name='edge dipole outer')
    tail = math.erfc(math.sqrt(2.0) * Y_REACH) / (4.0 * math.pi)
    err = 2.0 * math.pi * beta * (outer_err + tail + 2.0 * Y_REACH * max(errors))
    return Residual(name='edge dipole sum rule', target=1.0, value=-2.0 * math.pi * beta * outer,
                    method='quadrature', err_est=err,
                    meta=dict(order="inner y-prime then outer y", numeric_inner=numeric_inner))


def mass_one_residual(grid):
    """Largest |∫ ρ₂^T(z, z') d²z' + ρ_e(z)| over edge points z = i y for y in ``grid``."""
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise InputError('mass-one check needs at least one edge point')
    worst, worst_err, worst_y = 0.0, 0.0, float(grid[0])
    for y in grid:
        lo = min(y, 0.0) - Y_REACH
        hi = max(y, 0.0) + Y_REACH
        mass, err = adaptive_quad(lambda yp: _rho2t_along_edge(y, yp)[0], lo, hi,
                                  epsabs=1e-11, epsrel=1e-9, points=[y], name='edge screening cloud')
        gap = abs(mass + edge_density(y))
        if gap >= worst:
            worst, worst_err, worst_y = gap, err, float(y)
    return Residual(name='edge mass one', target=0.0, value=worst, method='quadrature',
                    err_est=worst_err, meta=dict(worst_y=worst_y, points=grid.size))


def sa3_lhs(x):
    e = special.erf(math.sqrt(2.0) * np.asarray(x, dtype=float))
    return 0.25 * (1.0 + e) * (1.0 - e)


def _normalised_hermite_squares(u, n_terms):
    """H_m(u)²/(2^m m!) for m < n_terms by the stable three-term recurrence."""
    out = np.empty(n_terms)
    prev, cur = 0.0, 1.0
    for m in range(n_terms):
        out[m] = cur * cur
        prev, cur = cur, u * math.sqrt(2.0 / (m + 1)) * cur - math.sqrt(m / (m + 1)) * prev
    return out


def sa3_rhs_series(x, max_terms=SERIES_MAX_TERMS, tol=SERIES_TERM_TOL):
    """
    Partial sums of (e^{-4x²}/π) Σ_{n≥1} H_{n-1}(√2x)²/(2^n n!).

    The terms decay only like n^{-3/2}, so the sum rarely reaches ``tol``;
    the returned error is the n^{-1/2} tail implied by the last terms.

    Returns:
        (partial sum, tail estimate, number of terms used)
    """
    u = math.sqrt(2.0) * x
    squares = _normalised_hermite_squares(u, max_terms)
    n = np.arange(1, max_terms + 1)
    terms = math.exp(-4.0 * x * x) / math.pi * squares / (2.0 * n)
    # stop once a whole window of terms is below tol; single terms dip near Hermite zeros
    window = 64
    run = np.convolve((terms < tol).astype(int), np.ones(window, dtype=int), mode='valid')
    full = np.nonzero(run == window)[0]
    used = int(full[0]) + window if full.size else max_terms
    partial = float(np.sum(terms[:used]))
    recent = terms[max(used - 256, 0):used]
    tail = 2.0 * used * float(np.mean(recent))
    return partial, tail, used


def sa3_rhs(x):
    """
    The Hermite series summed in closed form through Mehler's kernel:
    (e^{-4x²}/2π) ∫_0^{π/2} exp(4x² sin θ/(1 + sin θ)) dθ.
    """
    x2 = float(x) ** 2
    value, err = adaptive_quad(lambda t: math.exp(4.0 * x2 * (math.sin(t) / (1.0 + math.sin(t)) - 1.0)),
                               0.0, 0.5 * math.pi, name='mehler resummation')
    return value / (2.0 * math.pi), err / (2.0 * math.pi)


def sa3_identity_residual(xs, method='mehler', max_terms=SERIES_MAX_TERMS):
    """
    Largest gap between the two sides of the erf-Hermite identity over ``xs``.

    method='mehler' sums the series exactly; method='series' truncates it and
    reports the truncation tail as the error estimate.
    """
    if method not in ('mehler', 'series'):
        raise InputError(f'Unknown summation method: {method}')
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    worst, worst_err = 0.0, 0.0
    for x in xs:
        if method == 'mehler':
            rhs, err = sa3_rhs(x)
        else:
            rhs, err, _ = sa3_rhs_series(x, max_terms=max_terms)
        gap = abs(float(sa3_lhs(x)) - rhs)
        if gap >= worst:
            worst, worst_err = gap, err
    return Residual(name=f'erf-hermite identity ({method})', target=0.0, value=worst,
                    method='quadrature' if method == 'mehler' else 'series',
                    err_est=worst_err, meta=dict(points=xs.size))
