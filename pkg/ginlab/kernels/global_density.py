"""
Limiting one-point densities in global coordinates, normalised to total mass one.

Global coordinates are raw eigenvalues divided by ``EnsembleSpec.global_scale``
(√N for GinUE, elliptic and induced; N^{M/2} for products of GinUE; no scaling
for the compact kinds). Multiply by N for the count density.
"""
import math

import numpy as np

from ginlab.ensembles.spec import Kind
from ginlab.errors import InputError
from ginlab.utils.quadrature import composite_gauss_legendre


def circular_law(z):
    return np.where(np.abs(z) < 1.0, 1.0 / math.pi, 0.0)


def elliptic_law(tau, z):
    inside = (z.real / (1.0 + tau)) ** 2 + (z.imag / (1.0 - tau)) ** 2 < 1.0
    return np.where(inside, 1.0 / (math.pi * (1.0 - tau * tau)), 0.0)


def annulus_law(alpha, z):
    r = np.abs(z)
    return np.where((r > math.sqrt(alpha)) & (r < math.sqrt(1.0 + alpha)), 1.0 / math.pi, 0.0)


def spherical_radii(alpha1, alpha2):
    """Inner and outer droplet radii of the induced spherical law; the outer radius is inf when α₂ = 1."""
    if alpha1 < 1.0 or alpha2 < 1.0:
        raise InputError(f'induced spherical law needs alpha1, alpha2 >= 1, got {alpha1}, {alpha2}')
    r1 = math.sqrt((alpha1 - 1.0) / alpha2)
    r2 = math.inf if alpha2 == 1.0 else math.sqrt(alpha1 / (alpha2 - 1.0))
    return r1, r2


def induced_spherical_law(alpha1, alpha2, z):
    r1, r2 = spherical_radii(alpha1, alpha2)
    r = np.abs(z)
    val = (alpha1 + alpha2 - 1.0) / (math.pi * (1.0 + r * r) ** 2)
    return np.where((r >= r1) & (r <= r2), val, 0.0)


def truncated_law(alpha, z):
    s = np.abs(z) ** 2
    inside = s < 1.0 / (1.0 + alpha)
    with np.errstate(divide='ignore'):
        val = alpha / math.pi / (1.0 - np.where(inside, s, 0.0)) ** 2
    return np.where(inside, val, 0.0)


def _radial_power(M, z):
    r = np.abs(z)
    with np.errstate(divide='ignore'):
        return r ** (-2.0 + 2.0 / M), r ** (2.0 / M)


def product_law(M, z):
    lead, _ = _radial_power(M, z)
    return np.where(np.abs(z) < 1.0, lead / (math.pi * M), 0.0)


def product_with_inverses_law(M, z):
    """Product of M GinUE matrices and M inverses: the M-th power of the spherical law."""
    lead, u = _radial_power(M, z)
    return lead / (math.pi * M * (1.0 + u) ** 2)


def truncated_product_law(M, alpha, z):
    lead, u = _radial_power(M, z)
    inside = np.abs(z) < (1.0 + alpha) ** (-M / 2.0)
    with np.errstate(divide='ignore', invalid='ignore'):
        val = alpha / (math.pi * M) * lead / (1.0 - np.where(inside, u, 0.0)) ** 2
    return np.where(inside, val, 0.0)


def global_density(spec, z):
    """
    Limiting density at global point(s) z for the ensemble family of ``spec``.

    The finite-N parameters fix the proportions: α = (n - N)/N for induced
    GinUE, α = n/N for truncations, α₁ = M/N and α₂ = n/N for induced spherical.
    """
    z = np.asarray(z, dtype=complex)
    N = spec.N
    kind = spec.kind
    if kind is Kind.GinUE:
        out = circular_law(z)
    elif kind is Kind.EllipticGinUE:
        out = elliptic_law(spec.tau, z)
    elif kind is Kind.InducedGinUE:
        out = annulus_law((spec.n - N) / N, z)
    elif kind is Kind.Spherical:
        out = induced_spherical_law(1.0, 1.0, z)
    elif kind is Kind.InducedSpherical:
        out = induced_spherical_law(spec.M / N, spec.n / N, z)
    elif kind is Kind.TruncatedUnitary:
        out = truncated_law(spec.n / N, z)
    elif kind is Kind.ProductGinUE:
        out = product_law(spec.n_factors, z)
    else:
        if len(set(spec.n_list)) != 1:
            raise InputError(f'truncated product law needs equal truncation sizes, got {spec.n_list}')
        out = truncated_product_law(spec.n_factors, spec.n_list[0] / N, z)
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def global_mass(spec, r_lo, r_hi, n_panels=64, order=20):
    """
    Mass ∫ 2π r ρ(r) dr of the global density on the annulus r_lo <= r <= r_hi.

    Product laws behave like r^{2/M - 2} at the origin; the substitution
    r = v^M turns the integrand into a polynomial-like function of v.
    """
    if not 0.0 <= r_lo <= r_hi:
        raise InputError(f'need 0 <= r_lo <= r_hi, got {r_lo}, {r_hi}')
    if spec.kind is Kind.EllipticGinUE:
        raise InputError('global_mass integrates rotation invariant laws only')
    p = spec.n_factors if spec.kind in (Kind.ProductGinUE, Kind.ProductTruncated) else 1
    v, w = composite_gauss_legendre(r_lo ** (1.0 / p), r_hi ** (1.0 / p), n_panels=n_panels, order=order)
    r = v ** p
    jac = p * v ** (p - 1)
    rho = np.asarray(global_density(spec, r + 0j), dtype=float)
    return float(np.sum(2.0 * math.pi * r * rho * jac * w))


def density_expansion_induced_spherical(alpha1, alpha2, N, z):
    """
    Two-term prediction (N ΔQ + ½ Δ log ΔQ)/π for the induced spherical
    density with M = α₁N and n = α₂N - 1, where ΔQ = (α₁+α₂-1)/(1+r²)²
    and Δ log ΔQ = -2/(1+r²)².
    """
    r2 = np.abs(np.asarray(z, dtype=complex)) ** 2
    out = (N * (alpha1 + alpha2 - 1.0) - 1.0) / (math.pi * (1.0 + r2) ** 2)
    return float(out) if np.ndim(out) == 0 else out
