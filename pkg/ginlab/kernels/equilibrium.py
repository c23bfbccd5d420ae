"""
Equilibrium measure of a radially symmetric external potential Q(z) = q(|z|).

The droplet is the annulus r1 <= |z| <= r2 fixed by r1 q'(r1) = 0 and
r2 q'(r2) = 2, with density ΔQ/π = (q'' + q'/r)/(4π) on it.
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize

from ginlab.errors import InputError
from ginlab.utils.lab_logger import logger

ROOT_TOL = 1e-12
FD_STEP = 1e-5


def _central_diff(func, order):
    def deriv(r):
        r = np.asarray(r, dtype=float)
        if order == 1:
            h = FD_STEP * np.maximum(np.abs(r), 1e-300)
            return (func(r + h) - func(r - h)) / (2.0 * h)
        h = 10.0 * FD_STEP * np.maximum(np.abs(r), 1e-300)
        return (func(r + h) - 2.0 * func(r) + func(r - h)) / (h * h)
    return deriv


@dataclass
class EquilibriumMeasure:
    q: Callable
    dq: Callable
    d2q: Callable
    r1: float
    r2: float

    def density(self, z):
        r = np.abs(np.asarray(z, dtype=complex))
        inside = (r >= self.r1) & (r <= self.r2) & (r > 0)
        rr = np.where(inside, r, 1.0)
        val = (self.d2q(rr) + self.dq(rr) / rr) / (4.0 * math.pi)
        out = np.where(inside, val, 0.0)
        return float(out) if out.ndim == 0 else out

    def mass(self):
        """½ [r q'(r)] between the radii; one by construction."""
        low = 0.0 if self.r1 == 0 else self.r1 * float(self.dq(self.r1))
        return 0.5 * (self.r2 * float(self.dq(self.r2)) - low)


def _bracket(rq, target, max_doublings=200):
    lo = hi = 1.0
    for _ in range(max_doublings):
        if rq(lo) < target:
            break
        lo *= 0.5
    for _ in range(max_doublings):
        if rq(hi) > target:
            return lo, hi
        hi *= 2.0
    raise InputError(f'r q\'(r) never reaches {target}; the potential does not confine the droplet')


def equilibrium_radial(q, dq=None, d2q=None, r_max=None, n_check=2000):
    """
    Solve for the radial droplet of the potential q.

    Args:
        q (callable): q(r), vectorised in r > 0
        dq, d2q (callable): derivatives; central differences when omitted
        r_max (float): end of the monotonicity check grid, default 4 r2
        n_check (int): grid size of the monotonicity check

    Returns:
        EquilibriumMeasure
    """
    dq = dq if dq is not None else _central_diff(q, 1)
    d2q = d2q if d2q is not None else _central_diff(q, 2)

    def rq(r):
        return float(r * dq(r))

    r2 = optimize.brentq(lambda r: rq(r) - 2.0, *_bracket(rq, 2.0), xtol=ROOT_TOL)
    tiny = 1e-9 * r2
    if rq(tiny) >= 0.0:
        r1 = 0.0
    else:
        r1 = optimize.brentq(rq, tiny, r2, xtol=ROOT_TOL)
    grid = np.linspace(max(r1, tiny), r_max if r_max is not None else 4.0 * r2, n_check)
    values = grid * np.asarray(dq(grid), dtype=float)
    if np.any(np.diff(values) <= 0):
        bad = grid[1:][np.diff(values) <= 0][0]
        raise InputError(f'r q\'(r) is not strictly increasing near r = {bad:.6g}')
    logger.debug(f'equilibrium droplet: r1={r1:.12g}, r2={r2:.12g}')
    return EquilibriumMeasure(q=q, dq=dq, d2q=d2q, r1=r1, r2=r2)
