"""
Law of |det X|² for GinUE: Mellin moments Π_j Γ(s + j)/Γ(1 + j), the
product of independent Gamma[l, 1] variables, and the moments of log|det|².
"""
import math
from dataclasses import dataclass
from dataclasses import field
from typing import List

import numpy as np
from scipy import special

from ginlab.errors import InputError
from ginlab.specfun.gamma import log_barnes_g
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad
from ginlab.utils.rng import STREAM_AUX
from ginlab.utils.rng import as_generator
from ginlab.utils.stats import mean_and_sem
from ginlab.utils.tables import ResultTable


def _check_n(N):
    if int(N) != N or N < 1:
        raise InputError(f'N must be a positive integer, got {N}')
    return int(N)


def log_det_mod2_moment(s, N):
    N = _check_n(N)
    if s <= 0:
        raise InputError(f'Mellin variable must be positive, got {s}')
    j = np.arange(N, dtype=float)
    return math.fsum(special.gammaln(s + j) - special.gammaln(1.0 + j))


def det_mod2_moment(s, N):
    """E|det X|^{2(s-1)} = Π_{j<N} Γ(s + j)/Γ(1 + j)."""
    return math.exp(log_det_mod2_moment(s, N))


def det_global_moment(gamma, N):
    """
    ⟨Π_l |z_l|^γ⟩ for the global scaled GinUE X/√N, exactly
    N^{-Nγ/2} Π_{j<N} Γ(γ/2 + 1 + j)/Γ(1 + j).
    """
    N = _check_n(N)
    if gamma <= -2:
        raise InputError(f'moment exists only for gamma > -2, got {gamma}')
    return math.exp(log_det_mod2_moment(0.5 * gamma + 1.0, N) - 0.5 * N * gamma * math.log(N))


def det_asymptotic_moment(gamma, N):
    """Large-N form N^{γ²/8} e^{-γN/2} (2π)^{γ/4} / G(1 + γ/2)."""
    N = _check_n(N)
    log_g = log_barnes_g_real(1.0 + 0.5 * gamma)
    return math.exp(gamma * gamma / 8.0 * math.log(N) - 0.5 * gamma * N
                    + 0.25 * gamma * math.log(2.0 * math.pi) - log_g)


def log_barnes_g_real(x):
    """
    log G(x) for real x > 0, from
    log G(1 + y) = (y/2) log 2π - y(y + 1)/2 + y log Γ(1 + y) - ∫_0^y log Γ(1 + t) dt
    on 0 <= y < 1 and the shift G(x + 1) = Γ(x) G(x).
    """
    if x <= 0:
        raise InputError(f'Barnes G argument must be positive here, got {x}')
    if float(x).is_integer():
        return 0.0 if x == 1 else log_barnes_g(int(x) - 1)
    m = int(math.floor(x)) - 1
    y = x - 1.0 - m
    tail, _ = adaptive_quad(lambda t: special.gammaln(1.0 + t), 0.0, y, name='log gamma integral')
    value = 0.5 * y * math.log(2.0 * math.pi) - 0.5 * y * (y + 1.0) + y * special.gammaln(1.0 + y) - tail
    if m < 0:
        return value - special.gammaln(x)
    return value + math.fsum(special.gammaln(1.0 + y + k) for k in range(m))


def det_mod2_sample(N, replicas, seed):
    """|det X|² samples as Π_{l<=N} Gamma[l, 1] (½χ²_{2l} each)."""
    N = _check_n(N)
    if replicas < 1:
        raise InputError(f'need at least one replica, got {replicas}')
    rng = as_generator(seed, STREAM_AUX)
    shapes = np.arange(1, N + 1, dtype=float)
    logs = np.sum(np.log(rng.gamma(shapes[None, :], size=(int(replicas), N))), axis=1)
    return np.exp(logs), logs


def log_det_mean(N):
    """E log|det X|² = Σ_{j<N} ψ(1 + j)."""
    N = _check_n(N)
    return math.fsum(special.digamma(1.0 + np.arange(N)))


def log_det_variance(N):
    """Var log|det X|² = Σ_{j<N} ψ'(1 + j)."""
    N = _check_n(N)
    return math.fsum(special.polygamma(1, 1.0 + np.arange(N)))


@dataclass
class MomentTable:
    N: int
    orders: List[float] = field(default_factory=list)
    exact: List[float] = field(default_factory=list)
    mc: List[float] = field(default_factory=list)
    sigma: List[float] = field(default_factory=list)

    def add(self, order, exact, mc, sigma):
        if exact <= 0:
            raise InputError(f'exact moment must be positive, got {exact}')
        self.orders.append(float(order))
        self.exact.append(float(exact))
        self.mc.append(float(mc))
        self.sigma.append(float(sigma))

    def z_scores(self):
        return [(m - e) / s if s > 0 else 0.0 for e, m, s in zip(self.exact, self.mc, self.sigma)]

    def to_table(self):
        table = ResultTable(columns=['order', 'exact', 'mc', 'sigma'], meta=dict(N=self.N))
        for row in zip(self.orders, self.exact, self.mc, self.sigma):
            table.add_row(*row)
        return table


def det_moment_table(N, orders, replicas, seed):
    """Exact E|det|^{2(s-1)} next to Monte Carlo means of the chi-squared product."""
    samples, _ = det_mod2_sample(N, replicas, seed)
    table = MomentTable(N=_check_n(N))
    for s in orders:
        mean, sem = mean_and_sem(samples ** (s - 1.0))
        table.add(s, det_mod2_moment(s, N), mean, sem)
    logger.debug(f'det moments N={N}: z-scores {np.round(table.z_scores(), 2).tolist()}')
    return table
