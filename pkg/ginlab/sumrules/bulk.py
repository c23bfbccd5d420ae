"""
Sum rules of the bulk scaled GinUE (density 1/π), checked by quadrature of
the limiting kernel K(w, z) = e^{-|w|²/2 - |z|²/2 + w z̄}/π.
"""
import math

import numpy as np
from scipy import special

from ginlab.ensembles.spec import Kind
from ginlab.errors import InputError
from ginlab.kernels.global_density import global_density
from ginlab.kernels.global_density import spherical_radii
from ginlab.kernels.limits import bulk_kernel
from ginlab.linstats.structure import structure_factor
from ginlab.sumrules.residual import Residual
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad
from ginlab.utils.quadrature import polar_rule
from ginlab.utils.quadrature import radial_integral

R_MAX = 12.0
DEFAULT_ANCHORS = (0.0, 1.0 + 1.0j, -0.5 + 0.7j)
SMALL_K_STEP = 0.05
LARGE_SCALE_R = 1e3


def _gaussian_moment_tail(p, L):
    """Bound on ∫_{|s|>L} |s|^p e^{-|s|²} d²s = π Γ(p/2+1, L²)."""
    return math.pi * special.gamma(p / 2.0 + 1.0) * special.gammaincc(p / 2.0 + 1.0, L * L)


def rho2t_bulk(z1, z2):
    return -np.abs(bulk_kernel(z1, z2)) ** 2


def _correlation(points):
    """det[K(a_i, a_j)] over the last two axes of a stack of point sets."""
    points = np.asarray(points, dtype=complex)
    mat = bulk_kernel(points[..., :, None], points[..., None, :])
    return np.real(np.linalg.det(mat))


def _screening_integral(p, anchors, n_radial, n_angle):
    k = anchors.size
    z, w = polar_rule(R_MAX, n_radial=n_radial, n_angle=n_angle, n_panels=int(R_MAX))
    stacked = np.concatenate([np.broadcast_to(anchors, (z.size, k)), z[:, None]], axis=1)
    rho_k = _correlation(anchors)
    q = _correlation(stacked) - rho_k / math.pi
    moment = complex(np.sum(np.conj(z) ** p * q * w))
    return moment + complex(np.sum(np.conj(anchors) ** p)) * rho_k


def screening_residual(p, k, anchors=None, n_radial=240, n_angle=256):
    """
    ∫ (x - iy)^p q(r_1, .., r_k, r) dr over |r| ≤ 12, where
    q = ρ_{k+1}(.., r) - ρ_k/π + Σ_j δ(r - r_j) ρ_k; every multipole vanishes.
    """
    if int(p) != p or p < 0:
        raise InputError(f'multipole order p must be a nonnegative integer, got {p}')
    if k not in (1, 2, 3):
        raise InputError(f'screening checks support k = 1, 2, 3 anchors, got {k}')
    if anchors is None:
        anchors = DEFAULT_ANCHORS[:k]
    anchors = np.asarray(anchors, dtype=complex).ravel()
    if anchors.size != k:
        raise InputError(f'expected {k} anchor points, got {anchors.size}')
    reach = float(np.max(np.abs(anchors)))
    if reach > R_MAX / 2:
        raise InputError(f'anchors must lie within |r| <= {R_MAX / 2}, got {reach}')
    total = _screening_integral(int(p), anchors, n_radial, n_angle)
    coarse = _screening_integral(int(p), anchors, n_radial // 2, n_angle // 2)
    tail = k * math.factorial(k + 1) / math.pi ** (k + 1) * (R_MAX / (R_MAX - reach)) ** p \
        * _gaussian_moment_tail(p, R_MAX - reach)
    err = abs(total - coarse) + tail
    logger.debug(f'screening p={p} k={k}: {total:.3e} ± {err:.1e}')
    return Residual(name=f'screening p={p} k={k}', target=0.0, value=float(abs(total)),
                    method='quadrature', err_est=float(err),
                    meta=dict(real=total.real, imag=total.imag, anchors=anchors.tolist()))


def moment_sum_rule_target(order, beta=2.0):
    """∫ |r|^m ρ₂^T(r, 0) dr for the plasma at density 1/π, m = 2, 4, 6."""
    if order == 2:
        return -2.0 / (math.pi * beta)
    if order == 4:
        return -16.0 / (math.pi * beta ** 2) * (1.0 - beta / 4.0)
    if order == 6:
        return -18.0 / (math.pi * beta ** 3) * (beta - 6.0) * (beta - 8.0 / 3.0)
    raise InputError(f'moment sum rules exist for orders 2, 4, 6, got {order}')


def _moment_residual(order, name):
    value = radial_integral(lambda r: r ** order * rho2t_bulk(r + 0j, 0.0), 0.0, R_MAX)
    tail = _gaussian_moment_tail(order, R_MAX) / math.pi ** 2
    return Residual(name=name, target=moment_sum_rule_target(order), value=value,
                    method='quadrature', err_est=tail, meta=dict(beta=2.0, order=order))


def stillinger_lovett_residual():
    return _moment_residual(2, 'stillinger-lovett')


def higher_moment_residual(order):
    if order not in (4, 6):
        raise InputError(f'higher moment order must be 4 or 6, got {order}')
    return _moment_residual(order, f'moment {order}')


def carnie_chan_inner(r):
    """
    g(r) = ∫ log|r'| (ρ₂^T(r, r') + δ(r - r')/π) dr', reduced by rotation and
    translation invariance to two radial quadratures.
    """
    if r <= 0:
        raise InputError(f'radius must be positive, got {r}')

    def shell(t):
        return 2.0 * math.pi * t * float(rho2t_bulk(t + 0j, 0.0))

    inside, err_in = adaptive_quad(shell, 0.0, r, name='charge inside r')
    outside, err_out = adaptive_quad(lambda t: math.log(t) * shell(t), r, math.inf,
                                     name='log moment outside r')
    return math.log(r) * (inside + 1.0 / math.pi) + outside, abs(math.log(r)) * err_in + err_out


def carnie_chan_residual(beta=2.0, r_max=10.0):
    """-β ∫ dr g(r) = 1, integrating over r' first as the identity requires."""
    errors = []

    def integrand(r):
        g, err = carnie_chan_inner(r)
        errors.append(err)
        return 2.0 * math.pi * r * g

    outer, outer_err = adaptive_quad(integrand, 0.0, r_max, epsabs=1e-11, epsrel=1e-10,
                                     name='carnie-chan outer')
    tail = math.exp(-r_max ** 2) / (2.0 * r_max ** 2)
    err = beta * (outer_err + tail + r_max ** 2 * math.pi * max(errors))
    return Residual(name='carnie-chan', target=1.0, value=-beta * outer, method='quadrature',
                    err_est=err, meta=dict(order='inner r-prime then outer r'))


def small_k_structure_residual(h=SMALL_K_STEP):
    """
    Coefficient of |k|² in 4πS(k)/|k|², by Richardson extrapolation of
    (4πS(k)/|k|² - 1)/|k|² at k = h and h/2; the plasma value is (β/4 - 1)/(2β).
    """
    def slope(k):
        return (4.0 * math.pi * structure_factor([k, 0.0]) / k ** 2 - 1.0) / k ** 2

    coarse = slope(h)
    fine = slope(h / 2.0)
    value = (4.0 * fine - coarse) / 3.0
    target = (2.0 / 4.0 - 1.0) / 4.0
    return Residual(name='structure factor small k', target=target, value=value,
                    method='finite-difference', err_est=abs(fine - coarse) * h ** 2,
                    meta=dict(step=h))


def structure_scaling_residual(k=(1.0, 2.0), R=LARGE_SCALE_R):
    """R² S(k/R) → |k|²/(4π)."""
    k = np.asarray(k, dtype=float)
    value = R ** 2 * structure_factor(k / R)
    k2 = float(np.sum(k ** 2))
    return Residual(name='structure factor large scale', target=k2 / (4.0 * math.pi), value=value,
                    method='closed-form', err_est=k2 ** 2 / (32.0 * math.pi * R ** 2),
                    meta=dict(k=k.tolist(), R=R))


def _support_breaks(spec):
    N = spec.N
    kind = spec.kind
    if kind is Kind.GinUE or kind is Kind.ProductGinUE:
        return [1.0]
    if kind is Kind.InducedGinUE:
        alpha = (spec.n - N) / N
        return [math.sqrt(alpha), math.sqrt(1.0 + alpha)]
    if kind is Kind.Spherical:
        return [1.0]
    if kind is Kind.InducedSpherical:
        return [r for r in spherical_radii(spec.M / N, spec.n / N) if 0.0 < r < math.inf]
    if kind is Kind.TruncatedUnitary:
        return [1.0 / math.sqrt(1.0 + spec.n / N)]
    return [(1.0 + spec.n_list[0] / N) ** (-spec.n_factors / 2.0)]


def density_normalisation_residual(spec):
    """Total mass of the limiting global density of ``spec``."""
    if spec.kind is Kind.EllipticGinUE:
        a, b = 1.0 + spec.tau, 1.0 - spec.tau
        height = float(global_density(spec, 0.0))

        def sector(t):
            return 0.5 * height * (a * b) ** 2 / ((b * math.cos(t)) ** 2 + (a * math.sin(t)) ** 2)

        value, err = adaptive_quad(sector, 0.0, 2.0 * math.pi, name='elliptic mass')
    else:
        edges = [0.0] + sorted(set(_support_breaks(spec))) + [math.inf]
        value, err = 0.0, 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            piece, piece_err = adaptive_quad(
                lambda r: 2.0 * math.pi * r * global_density(spec, r + 0j), lo, hi,
                name=f'{spec.kind.value} mass on [{lo:g}, {hi:g}]')
            value += piece
            err += piece_err
    return Residual(name=f'{spec.kind.value} normalisation', target=1.0, value=value,
                    method='quadrature', err_est=err)
