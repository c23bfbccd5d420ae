"""
Limiting covariance of smooth linear statistics of the global scaled GinUE,

    Cov(Σ f(z_j/√N), Σ ḡ(z_j/√N)) → (1/4π) ∫_{|r|<1} ∇f·∇ḡ + ½ Σ |n| f_n ḡ_{-n},

with f_n the Fourier coefficients of f on the unit circle, plus the thinned
and log-potential variants.
"""
import math

import numpy as np

from ginlab.errors import InputError
from ginlab.specfun.gamma import EULER_GAMMA
from ginlab.specfun.gamma import exp_integral_e1
from ginlab.specfun.results import EvalResult
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import polar_rule

N_RADIAL = 128
N_ANGLE = 256


def _bulk_term(f, g, n_radial, n_angle):
    z, w = polar_rule(1.0, n_radial=n_radial, n_angle=n_angle)
    fx, fy = f.gradient(z)
    gx, gy = g.gradient(z)
    return complex(np.sum((fx * np.conj(gx) + fy * np.conj(gy)) * w)) / (4.0 * math.pi)


def _boundary_term(f, g):
    n, fn, f_tail = f.fourier_coefficients()
    _, gn, g_tail = g.fourier_coefficients()
    # the coefficients of ḡ at -n are the conjugates of g_n
    terms = np.abs(n) * fn * np.conj(gn)
    keep = (np.abs(fn) >= 1e-12) | (np.abs(gn) >= 1e-12)
    value = 0.5 * complex(np.sum(terms[keep]))
    tail_err = 0.5 * float(np.max(np.abs(n))) * (f_tail * float(np.max(np.abs(gn))) + g_tail * float(np.max(np.abs(fn))))
    return value, tail_err


def cov_smooth(f, g, n_radial=N_RADIAL, n_angle=N_ANGLE):
    """
    Limiting covariance of Σ f and Σ ḡ for test functions smooth on the closed unit disk.

    Returns:
        EvalResult with the value (real when it is real to rounding) and an
        error estimate from the half-resolution bulk term and the Fourier tails
    """
    for h in (f, g):
        if not h.smooth:
            raise InputError(f'{h.name} is not smooth; use the counting statistics instead')
    bulk = _bulk_term(f, g, n_radial, n_angle)
    bulk_half = _bulk_term(f, g, n_radial // 2, n_angle // 2)
    boundary, tail_err = _boundary_term(f, g)
    value = bulk + boundary
    err = abs(bulk - bulk_half) + tail_err
    logger.debug(f'cov({f.name}, {g.name}): bulk={bulk:.10g} boundary={boundary:.10g} err={err:.2e}')
    if abs(value.imag) <= 1e-12 * max(abs(value.real), 1.0):
        value = value.real
    return EvalResult(value=value, abs_err_est=err)


def global_mean(f, N, n_radial=N_RADIAL, n_angle=N_ANGLE):
    """Leading (N/π) ∫_{|r|<1} f of ⟨Σ f(z_j/√N)⟩."""
    z, w = polar_rule(1.0, n_radial=n_radial, n_angle=n_angle)
    return N * complex(np.sum(f(z) * w)) / math.pi


def cov_thinned(f, g, N, zeta, rescale=False, n_radial=N_RADIAL, n_angle=N_ANGLE):
    """
    Covariance for the GinUE thinned with keep probability ζ, to order one:
    ζ(1-ζ) ⟨Σ f ḡ⟩ + ζ² Cov(Σ f, Σ ḡ), with ⟨Σ f ḡ⟩ ≈ (N/π) ∫_{|r|<1} f ḡ.

    With ``rescale`` the survivors sit at √ζ z_j, so f and g are dilated by √ζ.
    """
    if not 0.0 < zeta <= 1.0:
        raise InputError(f'zeta must lie in (0, 1], got {zeta}')
    if rescale:
        f = f.dilated(math.sqrt(zeta))
        g = g.dilated(math.sqrt(zeta))
    z, w = polar_rule(1.0, n_radial=n_radial, n_angle=n_angle)
    overlap = complex(np.sum(f(z) * np.conj(g(z)) * w))
    value = N * zeta * (1.0 - zeta) * overlap / math.pi + zeta ** 2 * complex(cov_smooth(f, g).value)
    return value.real if abs(value.imag) <= 1e-12 * max(abs(value.real), 1.0) else value


def var_log_potential(x):
    """
    Variance of A(x) = -Σ(log|x - r_l| - log|r_l|) in the bulk scaled GinUE:
    ½(2 log|x| + (|x|² + 1) E_1(|x|²) - e^{-|x|²} + C + 1).
    """
    t = abs(complex(x)) ** 2
    if t == 0.0:
        raise InputError('var_log_potential needs x != 0')
    return 0.5 * (math.log(t) + (t + 1.0) * exp_integral_e1(t) - math.exp(-t) + EULER_GAMMA + 1.0)


def charfn_sum_mod2(k, N):
    """E exp(ik N^{-1} Σ|z_j|²) = (1 - ik/N)^{-N(N+1)/2} for GinUE with E|g|² = 1."""
    if int(N) != N or N < 1:
        raise InputError(f'N must be a positive integer, got {N}')
    k = np.asarray(k, dtype=float)
    out = np.exp(-0.5 * N * (N + 1) * np.log(1.0 - 1j * k / N))
    return complex(out) if out.ndim == 0 else out


def var_sum_mod2(N):
    """Var N^{-1} Σ|z_j|² = (N+1)/(2N), from the Gamma(N(N+1)/2) law of Σ|z_j|²."""
    return (N + 1.0) / (2.0 * N)
