import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ginlab.ensembles.spec import EnsembleSpec
from ginlab.ensembles.spec import Kind
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.kernels.finite import density
from ginlab.kernels.finite import kernel_finite
from ginlab.kernels.limits import LimitRegime
from ginlab.kernels.limits import kernel_limit
from ginlab.utils.lab_logger import logger
from ginlab.utils.tables import ResultTable

DET_TOL = 1e-10


@dataclass(frozen=True)
class KernelHandle:
    """A finite-N or limiting kernel, evaluated in the coordinates of its spec or regime."""
    spec: Union[EnsembleSpec, LimitRegime]

    @property
    def is_limit(self):
        return isinstance(self.spec, LimitRegime)

    @property
    def convention(self):
        return self.spec.kind.value if self.is_limit else self.spec.scaling.value

    def __call__(self, w, z):
        if self.is_limit:
            return kernel_limit(self.spec, w, z)
        return kernel_finite(self.spec, w, z)

    def density(self, z):
        if self.is_limit:
            out = np.real(np.asarray(kernel_limit(self.spec, z, z)))
            return float(out) if out.ndim == 0 else out
        return density(self.spec, z)

    def matrix(self, points):
        points = np.asarray(points, dtype=complex).ravel()
        return np.asarray(self(points[:, None], points[None, :]), dtype=complex)


def as_handle(spec_or_regime):
    if isinstance(spec_or_regime, KernelHandle):
        return spec_or_regime
    if isinstance(spec_or_regime, (EnsembleSpec, LimitRegime)):
        return KernelHandle(spec_or_regime)
    raise InputError(f'expected an EnsembleSpec or LimitRegime, got {type(spec_or_regime).__name__}')


def kpoint(spec_or_regime, points):
    """
    k-point correlation det[K(z_i, z_j)] at the given points.

    Coincident points give a singular matrix and a zero correlation.
    """
    handle = as_handle(spec_or_regime)
    points = np.asarray(points, dtype=complex).ravel()
    k = points.size
    if k < 1:
        raise InputError('kpoint needs at least one point')
    if not handle.is_limit and k > handle.spec.N:
        raise InputError(f'kpoint needs k <= N, got k={k}, N={handle.spec.N}')
    if k == 1:
        return float(handle.density(points[0]))
    mat = handle.matrix(points)
    value = float(np.real(np.linalg.det(mat)))
    scale = float(np.prod(np.abs(np.diag(mat)))) or 1.0
    if value < -DET_TOL * max(scale, 1.0):
        raise NumericError(f'negative correlation {value:.3e} from the kernel matrix',
                           dict(value=value, diag_product=scale, k=k))
    return max(value, 0.0)


def rho2_truncated(spec_or_regime, z1, z2):
    """ρ₂ - ρ₁ρ₁ = -|K(z1, z2)|²."""
    handle = as_handle(spec_or_regime)
    return -float(np.abs(handle(z1, z2)) ** 2)


def tabulate_polar(spec_or_regime, r_max, n_r=16, n_theta=16, r_min=0.0, what='density'):
    """
    Density, or the kernel against the grid point nearest the origin, on a
    polar grid. Radial kinds only need one angle; the grid still spans it.

    Returns:
        ResultTable with columns re, im, value_re, value_im
    """
    handle = as_handle(spec_or_regime)
    if what not in ('density', 'kernel'):
        raise InputError(f'unknown tabulation {what}; use density or kernel')
    if not handle.is_limit and handle.spec.kind in (Kind.TruncatedUnitary, Kind.ProductTruncated):
        r_max = min(r_max, 1.0 - 1e-9)
    r = np.linspace(r_min, r_max, n_r)
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    z = (r[:, None] * np.exp(1j * theta[None, :])).ravel()
    if what == 'density':
        values = np.asarray(handle.density(z), dtype=complex)
    else:
        values = np.asarray(handle(z[0], z), dtype=complex)
    logger.debug(f'tabulated {what} on {z.size} points, r in [{r_min}, {r_max}]')
    table = ResultTable(['re', 'im', 'value_re', 'value_im'],
                        meta=dict(convention=handle.convention, what=what))
    for zz, vv in zip(z, values.ravel()):
        table.add_row(float(zz.real), float(zz.imag), float(vv.real), float(vv.imag))
    return table
