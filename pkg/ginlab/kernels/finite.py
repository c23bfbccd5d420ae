"""
Finite-N correlation kernels of the ensembles with explicit eigenvalue PDFs.

Rotation invariant kinds use K(w, z) = sqrt(ω(w) ω(z)) Σ_{k<N} (w z̄)^k / h_k
with h_k = ∫ |z|^{2k} ω d²z. The elliptic kind uses the scaled Hermite
polynomials. All values are in raw coordinates with E|g|^2 = 1.
"""
import math

import numpy as np
from scipy import special

from ginlab.ensembles.spec import Kind
from ginlab.ensembles.spec import Scaling
from ginlab.errors import InputError
from ginlab.kernels.series import radial_kernel_series
from ginlab.specfun.gamma import inc_beta_reg_int_complex
from ginlab.specfun.gamma import reg_gamma_upper
from ginlab.specfun.meijer import product_weight
from ginlab.specfun.meijer import truncated_product_weight
from ginlab.specfun.orthopoly import elliptic_hermite_table

LOG_PI = math.log(math.pi)


def log_norms(spec):
    """log h_k for k = 0..N-1."""
    N = spec.N
    k = np.arange(N, dtype=float)
    kind = spec.kind
    if kind is Kind.GinUE:
        return LOG_PI + special.gammaln(k + 1.0)
    if kind is Kind.InducedGinUE:
        return LOG_PI + special.gammaln(k + spec.n - N + 1.0)
    if kind is Kind.Spherical:
        return LOG_PI + special.betaln(k + 1.0, N - k)
    if kind is Kind.InducedSpherical:
        return LOG_PI + special.betaln(k + spec.M - N + 1.0, spec.n - k)
    if kind is Kind.TruncatedUnitary:
        return LOG_PI + special.betaln(k + 1.0, spec.n)
    if kind is Kind.ProductGinUE:
        return LOG_PI + sum(special.gammaln(k + 1.0 + v) for v in spec.nu)
    if kind is Kind.ProductTruncated:
        return LOG_PI + sum(special.gammaln(k + 1.0) - special.gammaln(k + 1.0 + m) for m in spec.n_list)
    raise InputError(f'{kind.value} has no rotation invariant weight')


def _vectorised_log(func):
    def log_weight(s):
        s = np.asarray(s, dtype=float)
        flat = np.array([func(v) for v in s.ravel()])
        with np.errstate(divide='ignore'):
            out = np.log(flat)
        return out.reshape(s.shape)
    return log_weight


def log_weight_function(spec):
    """s -> log ω(s) at s = |z|^2; -inf off the support."""
    N = spec.N
    kind = spec.kind
    if kind is Kind.GinUE:
        return lambda s: -np.asarray(s, dtype=float)
    if kind is Kind.InducedGinUE:
        d = spec.n - N
        return lambda s: special.xlogy(d, s) - np.asarray(s, dtype=float)
    if kind is Kind.Spherical:
        return lambda s: -(N + 1.0) * np.log1p(s)
    if kind is Kind.InducedSpherical:
        c = spec.M - N
        e = spec.n + spec.M - N + 1.0
        return lambda s: special.xlogy(c, s) - e * np.log1p(s)
    if kind is Kind.TruncatedUnitary:
        n = spec.n

        def log_weight(s):
            s = np.asarray(s, dtype=float)
            inside = s < 1.0
            with np.errstate(divide='ignore', invalid='ignore'):
                val = special.xlog1py(n - 1.0, -np.where(inside, s, 0.0))
            return np.where(inside, val, -np.inf)
        return log_weight
    if kind is Kind.ProductGinUE:
        M = spec.n_factors
        return _vectorised_log(lambda v: product_weight(M, spec.nu, v).value)
    if kind is Kind.ProductTruncated:
        M = spec.n_factors
        return _vectorised_log(lambda v: truncated_product_weight(M, spec.n_list, v).value)
    raise InputError(f'{kind.value} has no rotation invariant weight')


def elliptic_kernel(N, tau, w, z):
    """
    Elliptic GinUE kernel with J = sqrt(1+τ) H_1 + i sqrt(1-τ) H_2:
    exp(-(|w|²+|z|²-τ Re(w²+z²)) / (2(1-τ²))) / (π sqrt(1-τ²)) Σ_{l<N} p_l(w) p_l(z̄).
    """
    w, z = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(z, dtype=complex))
    shape = w.shape
    w = w.ravel()
    z = z.ravel()
    pw, sw = elliptic_hermite_table(N, w, tau)
    pz, sz = elliptic_hermite_table(N, np.conj(z), tau)
    one_m = 1.0 - tau * tau
    log_pref = (-(np.abs(w) ** 2 + np.abs(z) ** 2 - tau * np.real(w * w + z * z)) / (2.0 * one_m)
                - 0.5 * math.log(one_m) - LOG_PI)
    out = np.sum(pw * pz * np.exp(sw + sz + log_pref[None, :]), axis=0).reshape(shape)
    return complex(out) if out.ndim == 0 else out


def _check_support(spec, *points):
    if spec.kind in (Kind.TruncatedUnitary, Kind.ProductTruncated):
        for p in points:
            if np.any(np.abs(p) >= 1.0):
                raise InputError(f'{spec.kind.value} kernel needs |z| < 1')


def kernel_raw(spec, w, z):
    _check_support(spec, w, z)
    if spec.kind is Kind.EllipticGinUE:
        return elliptic_kernel(spec.N, spec.tau, w, z)
    return radial_kernel_series(w, z, log_norms(spec), log_weight_function(spec))


def to_raw(spec, z):
    """Map coordinates in the EnsembleSpec's scaling to raw coordinates, with the Jacobian of one coordinate."""
    z = np.asarray(z, dtype=complex)
    if spec.scaling in (Scaling.raw, Scaling.bulk):
        return z, 1.0
    if spec.scaling is Scaling.global_:
        s = spec.global_scale
        return s * z, s
    # edge: the bottom of the droplet, y > 0 pointing inside
    return -1j * math.sqrt(spec.N) + z, 1.0


def kernel_finite(spec, w, z):
    """
    Correlation kernel K_N(w, z) in the coordinates set by the EnsembleSpec scaling.

    Args:
        spec (EnsembleSpec): ensemble; its ``scaling`` selects the coordinates
        w, z (complex or array_like): points, broadcast against each other

    Returns:
        complex or np.ndarray
    """
    w_raw, jac = to_raw(spec, w)
    z_raw, _ = to_raw(spec, z)
    out = kernel_raw(spec, w_raw, z_raw) * jac * jac
    return out


def density(spec, z):
    """One-point density K_N(z, z), real and nonnegative."""
    z_raw, jac = to_raw(spec, z)
    _check_support(spec, z_raw)
    s = np.abs(z_raw) ** 2
    if spec.kind is Kind.GinUE:
        out = reg_gamma_upper(spec.N, s) / math.pi
    elif spec.kind is Kind.InducedGinUE and spec.n > spec.N:
        out = (reg_gamma_upper(spec.n, s) - reg_gamma_upper(spec.n - spec.N, s)) / math.pi
    else:
        out = np.real(kernel_raw(spec, z_raw, z_raw))
    out = np.clip(np.asarray(out, dtype=float) * jac * jac, 0.0, None)
    return float(out) if out.ndim == 0 else out


def truncated_kernel_closed(N, n, w, z):
    """(n/π) ((1-|w|²)(1-|z|²))^{(n-1)/2} (1 - I_{w z̄}(N, n+1)) / (1 - w z̄)^{n+1}."""
    w = complex(w)
    z = complex(z)
    if abs(w) >= 1 or abs(z) >= 1:
        raise InputError('truncated unitary kernel needs |w|, |z| < 1')
    x = w * z.conjugate()
    pref = n / math.pi * ((1 - abs(w) ** 2) * (1 - abs(z) ** 2)) ** ((n - 1) / 2.0)
    return pref * (1.0 - inc_beta_reg_int_complex(x, N, n + 1)) / (1.0 - x) ** (n + 1)


def induced_spherical_kernel_closed(N, n, M, w, z):
    """
    Incomplete beta form of the induced spherical kernel with ζ = w z̄/(1 + w z̄).

    The radial prefactor is (|w z|/(w z̄))^{M-N}, which makes the closed form
    agree with the series term by term; I_ζ(0, b) = 1 and I_ζ(a, 0) = 0 at the
    parameter edges M = N and n = N.
    """
    w = complex(w)
    z = complex(z)
    x = w * z.conjugate()
    zeta = x / (1.0 + x)
    c = M - N
    first = 1.0 if c == 0 else inc_beta_reg_int_complex(zeta, c, n)
    second = 0.0 if n == N else inc_beta_reg_int_complex(zeta, M, n - N)
    if c > 0 and x == 0:
        return 0.0j
    e = n + M - N + 1.0
    cocycle = 1.0 if c == 0 else (abs(z * w) / x) ** c
    pref = cocycle / ((1 + abs(z) ** 2) * (1 + abs(w) ** 2)) ** (e / 2.0) / math.pi
    return pref * (M + n - N) * (1.0 + x) ** (n + M - N - 1) * (first - second)
