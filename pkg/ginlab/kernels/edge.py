"""
Edge profiles of the eigenvalue density and the edge two-point function.

Edge coordinates z = x + i y measure from the droplet boundary with y > 0
pointing inside; for the elliptic law the offset α is along the outward
normal and β along the tangent.
"""
import math

import numpy as np
from scipy import special

from ginlab.ensembles.spec import Kind
from ginlab.errors import InputError


def ellipse_point(tau, t):
    """Boundary point (1+τ) cos t + i (1-τ) sin t of the global elliptic droplet."""
    return (1.0 + tau) * math.cos(t) + 1j * (1.0 - tau) * math.sin(t)


def ellipse_curvature(tau, t):
    a = 1.0 + tau
    b = 1.0 - tau
    return a * b / (a * a * math.sin(t) ** 2 + b * b * math.cos(t) ** 2) ** 1.5


def ellipse_normal(tau, t):
    a = 1.0 + tau
    b = 1.0 - tau
    n = b * math.cos(t) + 1j * a * math.sin(t)
    return n / abs(n)


def edge_profile_terms(N, alpha, beta=0.0, kappa=1.0):
    """
    Leading term and 1/√N correction of the density at offset (α, β) from a
    boundary point of curvature κ, α along the outward normal.

    Returns:
        (leading, correction) with the shape of the broadcast offsets
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    leading = (1.0 - special.erf(math.sqrt(2.0) * alpha)) / (2.0 * math.pi)
    correction = (kappa / (math.pi * math.sqrt(2.0 * math.pi * N)) * np.exp(-2.0 * alpha ** 2)
                  * ((alpha ** 2 - 1.0) / 3.0 - beta ** 2))
    return leading, correction


def edge_profile(spec, alpha, beta=0.0, t=0.0, terms=2):
    """
    Two-term edge expansion of the GinUE or elliptic GinUE density.

    For GinUE the inward edge coordinate is y = -α. For the elliptic law the
    expansion is taken at the boundary point with parameter t.

    Args:
        spec (EnsembleSpec): GinUE or elliptic
        alpha, beta (float or array_like): normal and tangential offsets in raw units
        t (float): boundary parameter for the elliptic droplet
        terms (int): 1 for the erf term alone, 2 to add the 1/√N correction

    Returns:
        float or np.ndarray
    """
    if spec.kind is Kind.GinUE:
        kappa = 1.0
    elif spec.kind is Kind.EllipticGinUE:
        kappa = ellipse_curvature(spec.tau, t)
    else:
        raise InputError(f'edge profile is available for ginue and elliptic, got {spec.kind.value}')
    if terms not in (1, 2):
        raise InputError(f'edge profile terms must be 1 or 2, got {terms}')
    leading, correction = edge_profile_terms(spec.N, alpha, beta, kappa)
    out = leading if terms == 1 else leading + correction
    return float(out) if np.ndim(out) == 0 else out


def edge_profile_ginue(y, N=None):
    """(1 + erf(√2 y))/(2π), plus the e^{-2y²}(y²-1)/(3π√(2πN)) correction when N is given."""
    y = np.asarray(y, dtype=float)
    out = (1.0 + special.erf(math.sqrt(2.0) * y)) / (2.0 * math.pi)
    if N is not None:
        out = out + np.exp(-2.0 * y ** 2) * (y ** 2 - 1.0) / (3.0 * math.pi * math.sqrt(2.0 * math.pi * N))
    return float(out) if out.ndim == 0 else out


def _scaled_amplitude(z1, z2):
    # e^{-|z1-z2|²/2} (1 + erf(v)), v = (y1 + y2 - i dx)/√2, without overflow
    dx = z1.real - z2.real
    dy = z1.imag - z2.imag
    Y = z1.imag + z2.imag
    v = (Y - 1j * dx) / math.sqrt(2.0)
    gauss = np.exp(-(dy ** 2 + Y ** 2) / 2.0 + 1j * Y * dx)
    inside = v.real > 0
    first = np.where(inside, 2.0 * np.exp(-(dx ** 2 + dy ** 2) / 2.0), 0.0)
    wv = special.wofz(np.where(inside, 1j * v, -1j * v))
    return np.where(inside, first - gauss * wv, gauss * wv)


def rho2t_edge(z1, z2):
    """Truncated two-point function -|K^e(z1, z2)|² of the GinUE edge kernel."""
    z1, z2 = np.broadcast_arrays(np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))
    out = -np.abs(_scaled_amplitude(z1, z2)) ** 2 / (4.0 * math.pi ** 2)
    return float(out) if out.ndim == 0 else out


def rho2t_edge_asymptote(z1, z2):
    """Inverse-square decay -e^{-2y1²-2y2²}/(2π³((y1+y2)² + dx²)) along the edge."""
    z1, z2 = np.broadcast_arrays(np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))
    dx = z1.real - z2.real
    Y = z1.imag + z2.imag
    out = -np.exp(-2.0 * z1.imag ** 2 - 2.0 * z2.imag ** 2) / (2.0 * math.pi ** 3 * (Y ** 2 + dx ** 2))
    return float(out) if out.ndim == 0 else out
