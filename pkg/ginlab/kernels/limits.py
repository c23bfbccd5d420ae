import math
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from typing import Tuple

import numpy as np
from scipy import special

from ginlab.errors import InputError
from ginlab.kernels.series import radial_kernel_series
from ginlab.kernels.series import series_length_for
from ginlab.specfun.meijer import product_weight
from ginlab.utils.quadrature import gauss_legendre_rule

_GL_NODES = 96


class Regime(Enum):
    Bulk = 'bulk'
    Edge = 'edge'
    EdgeAtPhase = 'edge_at_phase'
    WeakNonHermitian = 'weak'
    TruncationCloseToUnitary = 'cv7'
    TruncationCloseToUnitaryThick = 'cv8'
    MittagLeffler = 'mittag_leffler'
    LandauLevel = 'landau'


@dataclass(frozen=True)
class LimitRegime:
    """
    A limiting kernel together with its parameters.

    Coordinates: Bulk, Edge and LandauLevel take plain complex points; Edge
    puts the droplet below with y > 0 inside; EdgeAtPhase measures outward
    from the boundary point ``phase`` (|phase| = 1); the truncation regimes
    take z = φ + i y with eigenvalue (1 - y/N) e^{iφ/N}; WeakNonHermitian
    takes the points after z -> π z / N.
    """
    kind: Regime
    phase: complex = 1.0
    alpha: float = 0.0
    n: int = 1
    nu: Tuple[float, ...] = field(default_factory=tuple)
    r: int = 0
    mixed: bool = False

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, 'kind', Regime(self.kind))
        object.__setattr__(self, 'nu', tuple(float(v) for v in self.nu))
        kind = self.kind
        if kind is Regime.EdgeAtPhase and abs(abs(self.phase) - 1.0) > 1e-12:
            raise InputError(f'edge phase must lie on the unit circle, got {self.phase}')
        if kind is Regime.WeakNonHermitian and self.alpha <= 0:
            raise InputError(f'weak non-Hermiticity needs alpha > 0, got {self.alpha}')
        if kind in (Regime.TruncationCloseToUnitary, Regime.TruncationCloseToUnitaryThick) and self.n < 1:
            raise InputError(f'truncation rank must be >= 1, got {self.n}')
        if kind is Regime.TruncationCloseToUnitaryThick and self.alpha < 0:
            raise InputError(f'thickness alpha must be >= 0, got {self.alpha}')
        if kind is Regime.MittagLeffler and (len(self.nu) < 1 or min(self.nu) < 0):
            raise InputError(f'Mittag-Leffler kernel needs exponents nu >= 0, got {self.nu}')
        if kind is Regime.LandauLevel and self.r < 0:
            raise InputError(f'Landau level must be >= 0, got {self.r}')

    @property
    def M(self):
        return len(self.nu)


def edge_h(u):
    """h(u) = (1 + erf(√2 u)) / (2π) for complex u."""
    return (1.0 + special.erf(math.sqrt(2.0) * np.asarray(u, dtype=complex))) / (2.0 * math.pi)


def _gauss_factor(w, z):
    return np.exp(-(np.abs(w) ** 2 + np.abs(z) ** 2) / 2.0 + w * np.conj(z))


def bulk_kernel(w, z):
    return _gauss_factor(w, z) / math.pi


def edge_kernel(z1, z2):
    return _gauss_factor(z1, z2) * edge_h(0.5 * (-1j * z1 + 1j * np.conj(z2)))


def edge_at_phase_kernel(phase, z1, z2):
    return _gauss_factor(z1, z2) * edge_h(0.5 * (-z1 - np.conj(z2)))


def weak_kernel(alpha, w, z):
    """Weakly non-Hermitian limit with τ = 1 - π²α²/(2N)."""
    u, wu = gauss_legendre_rule(_GL_NODES, -math.pi, math.pi)
    w = np.asarray(w, dtype=complex)
    z = np.asarray(z, dtype=complex)
    b = (w - np.conj(z))[..., None]
    integral = np.sum(wu * np.exp(-alpha ** 2 * u ** 2 / 2.0 + 1j * u * b), axis=-1) / (2.0 * math.pi)
    pref = math.sqrt(2.0 / (math.pi * alpha ** 2)) * np.exp(-(w.imag ** 2 + z.imag ** 2) / alpha ** 2)
    return pref * integral


def close_to_unitary_kernel(n, lower, z1, z2):
    """
    (1/π) (2 sqrt(y_1 y_2))^{n-1}/(n-1)! ∫_lower^{lower+1} s^n e^{-(y_1+y_2+i(φ_1-φ_2)) s} ds
    with z = φ + i y.
    """
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    y1, y2 = z1.imag, z2.imag
    if np.any(y1 < 0) or np.any(y2 < 0):
        raise InputError('close to unitary coordinates need y >= 0')
    s, ws = gauss_legendre_rule(_GL_NODES, lower, lower + 1.0)
    rate = (y1 + y2 + 1j * (z1.real - z2.real))[..., None]
    integral = np.sum(ws * s ** n * np.exp(-rate * s), axis=-1)
    pref = (2.0 * np.sqrt(y1 * y2)) ** (n - 1) / math.factorial(n - 1) / math.pi
    return pref * integral


def mittag_leffler_kernel(nu, w, z):
    """Product-ensemble kernel at the origin: the N -> infinity series of the finite kernel."""
    nu = np.asarray(nu, dtype=float)
    M = nu.size
    w, z = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(z, dtype=complex))

    def log_h(k):
        return math.log(math.pi) + np.sum(special.gammaln(np.asarray(k, dtype=float)[:, None] + 1.0 + nu[None, :]), axis=1)

    biggest = float(np.max(np.abs(w * np.conj(z)))) if w.size else 0.0
    n_terms = series_length_for(log_h, math.log(max(biggest, 1e-300)))

    def log_weight(s):
        s = np.asarray(s, dtype=float)
        vals = np.array([product_weight(M, nu, v).value for v in s.ravel()])
        with np.errstate(divide='ignore'):
            return np.log(vals).reshape(s.shape)

    return radial_kernel_series(w, z, log_h(np.arange(n_terms)), log_weight)


def landau_kernel(r, w, z, mixed=False):
    """(1/π) L_r^a(|w-z|²) e^{w z̄ - (|w|²+|z|²)/2}, a = 0 for level r alone, a = 1 for levels 0..r mixed."""
    order = 1.0 if mixed else 0.0
    lag = special.eval_genlaguerre(int(r), order, np.abs(np.asarray(w) - np.asarray(z)) ** 2)
    return lag * bulk_kernel(w, z)


def kernel_limit(regime, z1, z2):
    """
    Evaluate a limiting kernel.

    Args:
        regime (LimitRegime): which limit, with parameters
        z1, z2 (complex or array_like): points in the regime's coordinates

    Returns:
        complex or np.ndarray
    """
    kind = regime.kind
    if kind is Regime.Bulk:
        out = bulk_kernel(np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))
    elif kind is Regime.Edge:
        out = edge_kernel(np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))
    elif kind is Regime.EdgeAtPhase:
        out = edge_at_phase_kernel(regime.phase, np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))
    elif kind is Regime.WeakNonHermitian:
        out = weak_kernel(regime.alpha, z1, z2)
    elif kind is Regime.TruncationCloseToUnitary:
        out = close_to_unitary_kernel(regime.n, 0.0, z1, z2)
    elif kind is Regime.TruncationCloseToUnitaryThick:
        out = close_to_unitary_kernel(regime.n, regime.alpha, z1, z2)
    elif kind is Regime.MittagLeffler:
        out = mittag_leffler_kernel(regime.nu, z1, z2)
    else:
        out = landau_kernel(regime.r, np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex),
                            mixed=regime.mixed)
    out = np.asarray(out, dtype=complex)
    return complex(out) if out.ndim == 0 else out
