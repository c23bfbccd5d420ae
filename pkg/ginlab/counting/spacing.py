"""
Nearest-neighbour spacing of the bulk scaled infinite GinUE.

With F(r) = e^{r²} E_∞(0; D_r) = Π_{j>=2} Q(j, r²), the conditional
probability that a disk of radius r about an eigenvalue is otherwise
empty, the spacing density is P(r) = -F'(r). The derivative is taken
analytically from d/dx log Q(j, x) = -x^{j-1} e^{-x} / (Γ(j) Q(j, x)).
"""
import math

import numpy as np
from scipy import special

from ginlab.counting.bernoulli import truncation_index
from ginlab.errors import InputError
from ginlab.specfun.gamma import log_reg_gamma_upper_int
from ginlab.utils.quadrature import adaptive_quad

R_MAX = 8.0


def _log_survival_and_slope(r):
    x = r * r
    j_star = truncation_index(r)
    log_q = log_reg_gamma_upper_int(j_star, x)[1:]
    j = np.arange(2, j_star + 1, dtype=float)
    log_f = math.fsum(log_q)
    log_pdf_terms = (j - 1.0) * math.log(x) - x - special.gammaln(j) - log_q
    slope = -2.0 * r * float(np.sum(np.exp(log_pdf_terms)))
    return log_f, slope


def _check_r(r):
    r = float(r)
    if r < 0:
        raise InputError(f'spacing needs r >= 0, got {r}')
    return r


def spacing_survival(r):
    """F(r) = e^{r²} E_∞(0; D_r)."""
    r = _check_r(r)
    if r == 0.0:
        return 1.0
    return math.exp(_log_survival_and_slope(r)[0])


def spacing_pdf(r):
    """P(r) = -dF/dr, normalised to one on (0, ∞)."""
    r = _check_r(r)
    if r == 0.0:
        return 0.0
    log_f, slope = _log_survival_and_slope(r)
    return -math.exp(log_f) * slope


def spacing_pdf_small_r(r):
    return 2.0 * r ** 3


def log_spacing_large_r(r):
    """Leading large-r behaviour log P(r) ~ -r⁴/4."""
    return -0.25 * r ** 4


def spacing_moment(p):
    """⟨r^p⟩ = p ∫_0^∞ r^{p-1} F(r) dr for p > 0."""
    if p <= 0:
        raise InputError(f'spacing moment order must be positive, got {p}')
    val, _ = adaptive_quad(lambda r: p * r ** (p - 1.0) * spacing_survival(r), 0.0, R_MAX,
                           epsabs=1e-12, epsrel=1e-11, name='spacing_moment')
    return val


def spacing_mean():
    return spacing_moment(1)
