"""
Kostlan's theorem for rotation invariant determinantal ensembles.

For an eigenvalue weight w(|z|^2) the set {|z_j|^2} has the law of N
independent variables s_j with densities proportional to s^{j-1} w(s).
Only radial statistics can be sampled this way, not the planar process.
"""
import numpy as np

from ginlab.errors import InputError
from ginlab.utils.rng import STREAM_RADIAL
from ginlab.utils.rng import as_generator

WEIGHT_IDS = ('ginue', 'induced', 'spherical', 'induced_spherical',
              'truncated', 'product', 'truncated_product')


def _beta_prime(rng, a, b):
    x = rng.beta(a, b)
    return x / (1.0 - x)


def kostlan_radial_sample(weight, N, seed, n=None, M=None, nu=(), n_list=(), replicas=None):
    """
    Independent draws s_j, j = 1..N, in index order (not sorted).

    Args:
        weight (str): one of WEIGHT_IDS
        N (int): number of eigenvalues
        seed (int or np.random.Generator): seed or keyed generator
        n, M, nu, n_list: weight parameters, as in EnsembleSpec
        replicas (int): if given, draw that many independent rows at once

    Returns:
        np.ndarray: float array of length N, or shape (replicas, N)
    """
    if weight not in WEIGHT_IDS:
        raise InputError(f'Unsupported radial weight: {weight}')
    if N < 1:
        raise InputError(f'N must be positive, got {N}')
    rng = as_generator(seed, STREAM_RADIAL)
    j = np.arange(1, N + 1, dtype=float)
    if replicas is not None:
        j = np.broadcast_to(j, (int(replicas), N))
    if weight == 'ginue':
        return rng.gamma(j)
    if weight == 'induced':
        if n is None or n < N:
            raise InputError(f'induced weight needs n >= N, got {n}')
        return rng.gamma(j + n - N)
    if weight == 'spherical':
        return _beta_prime(rng, j, N + 1 - j)
    if weight == 'induced_spherical':
        if n is None or M is None or n < N or M < N:
            raise InputError(f'induced spherical weight needs n, M >= N, got n={n}, M={M}')
        return _beta_prime(rng, j + M - N, n - j + 1)
    if weight == 'truncated':
        if n is None or n < 1:
            raise InputError(f'truncated weight needs n >= 1, got {n}')
        return rng.beta(j, n)
    if weight == 'product':
        if len(nu) < 1:
            raise InputError('product weight needs exponents nu')
        out = np.ones(j.shape)
        for v in nu:
            out *= rng.gamma(j + v)
        return out
    if len(n_list) < 1:
        raise InputError('truncated product weight needs sizes n_list')
    out = np.ones(j.shape)
    for m in n_list:
        out *= rng.beta(j, m)
    return out


def kostlan_for_spec(spec, seed):
    """Radial sample for any rotation invariant EnsembleSpec, in raw scaling."""
    if not spec.is_radial:
        raise InputError(f'{spec.kind.value} is not rotation invariant')
    return kostlan_radial_sample(spec.kind.value, spec.N, seed, **spec.kostlan_params())


def kostlan_sorted_batch(weight, N, seed, replicas, **params):
    """(replicas, N) array of radial samples, each row sorted increasingly."""
    return np.sort(kostlan_radial_sample(weight, N, seed, replicas=replicas, **params), axis=-1)
