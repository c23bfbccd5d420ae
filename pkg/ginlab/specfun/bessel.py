import numpy as np
from scipy import special

from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.specfun.results import EvalResult

# above this argument the exponentially scaled I-functions are returned by bessel_i_eval
SCALED_THRESHOLD = 50.0
# scipy kve loses the scaled value (NaN) far out; the Hankel form is exact to double precision there
LARGE_X_K = 1e8


def bessel_i(order, x):
    if order not in (0, 1):
        raise InputError(f'bessel_i supports orders 0 and 1, got {order}')
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise InputError(f'bessel_i needs x >= 0, got {x}')
    out = special.i0(x) if order == 0 else special.i1(x)
    if not np.all(np.isfinite(out)):
        raise NumericError('bessel_i overflow, use bessel_i_scaled', dict(x=x))
    return out if out.ndim else float(out)


def bessel_i_scaled(order, x):
    """e^{-x} I_order(x)."""
    if order not in (0, 1):
        raise InputError(f'bessel_i supports orders 0 and 1, got {order}')
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise InputError(f'bessel_i needs x >= 0, got {x}')
    out = special.i0e(x) if order == 0 else special.i1e(x)
    return out if out.ndim else float(out)


def bessel_i_eval(order, x):
    x = float(x)
    if x > SCALED_THRESHOLD:
        return EvalResult(value=bessel_i_scaled(order, x),
                          abs_err_est=1e-15 * bessel_i_scaled(order, x),
                          exp_scaled=True)
    val = bessel_i(order, x)
    return EvalResult(value=val, abs_err_est=1e-15 * abs(val))


def bessel_k(order, x):
    order = float(order)
    if order < 0:
        raise InputError(f'bessel_k needs order >= 0, got {order}')
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise InputError(f'bessel_k needs x > 0, got {x}')
    out = special.kv(order, x)
    if not np.all(np.isfinite(out)):
        raise NumericError('bessel_k returned a non-finite value', dict(order=order, x=x))
    return out if out.ndim else float(out)


def log_bessel_k(order, x):
    """
    log K_ν(x) through the scaled kve, valid far into the decaying tail.
    Above LARGE_X_K the two-term Hankel expansion
    ½ log(π/(2x)) − x + log1p((4ν² − 1)/(8x)) is used instead.
    """
    order = float(order)
    x = np.asarray(x, dtype=float)
    large = x > LARGE_X_K
    safe = np.where(large, 1.0, x)
    near = np.log(special.kve(order, safe)) - safe
    xl = np.where(large, x, LARGE_X_K)
    far = 0.5 * np.log(np.pi / (2.0 * xl)) - xl + np.log1p((4.0 * order * order - 1.0) / (8.0 * xl))
    out = np.where(large, far, near)
    return out if out.ndim else float(out)
