import math

import numpy as np
from scipy import linalg

from ginlab.ensembles.gaussian import haar_unitary
from ginlab.ensembles.gaussian import hermitian_part
from ginlab.ensembles.gaussian import sample_gaussian_matrix
from ginlab.ensembles.spec import Kind
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.utils.lab_logger import logger
from ginlab.utils.rng import STREAM_MATRIX
from ginlab.utils.rng import as_generator

MAX_RESAMPLE = 20
SPHERICAL_COND_LIMIT = 1e12


def _psd_sqrt(matrix):
    """(A)^{1/2} for Hermitian positive semidefinite A."""
    vals, vecs = linalg.eigh(matrix)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)[None, :]) @ vecs.conj().T


def elliptic_matrix(N, tau, rng):
    # J = sqrt(1+tau) H1 + i sqrt(1-tau) H2 gives E|J_ij|^2 = 1, E J_ij J_ji = tau
    h1 = hermitian_part(sample_gaussian_matrix(N, N, rng))
    h2 = hermitian_part(sample_gaussian_matrix(N, N, rng))
    return math.sqrt(1.0 + tau) * h1 + 1j * math.sqrt(1.0 - tau) * h2


def induced_matrix(N, n, rng):
    """(G^dag G)^{1/2} U with G of shape n x N; eigenvalue weight |z|^{2(n-N)} e^{-|z|^2}."""
    g = sample_gaussian_matrix(n, N, rng)
    return _psd_sqrt(g.conj().T @ g) @ haar_unitary(N, rng)


def spherical_matrix(N, rng):
    for attempt in range(MAX_RESAMPLE):
        g1 = sample_gaussian_matrix(N, N, rng)
        g2 = sample_gaussian_matrix(N, N, rng)
        if np.linalg.cond(g1) > SPHERICAL_COND_LIMIT:
            logger.warning(f'spherical draw {attempt}: singular G1 resampled')
            continue
        lu_piv = linalg.lu_factor(g1, check_finite=True)
        return linalg.lu_solve(lu_piv, g2)
    raise NumericError('spherical sampler kept drawing singular G1',
                       dict(attempts=MAX_RESAMPLE, N=N))


def induced_spherical_matrix(N, n, M, rng):
    """
    U (Y Y^dag)^{1/2} with Y = (A^dag A)^{-1/2} X, A of shape n x N and X of
    shape N x M; eigenvalue weight |z|^{2(M-N)} (1+|z|^2)^{-(n+M-N+1)}.
    """
    a = sample_gaussian_matrix(n, N, rng)
    x = sample_gaussian_matrix(N, M, rng)
    vals, vecs = linalg.eigh(a.conj().T @ a)
    if np.min(vals) <= 0:
        raise NumericError('induced spherical: singular Wishart factor',
                           dict(min_eig=float(np.min(vals))))
    inv_sqrt = (vecs / np.sqrt(vals)[None, :]) @ vecs.conj().T
    y = inv_sqrt @ x
    return haar_unitary(N, rng) @ _psd_sqrt(y @ y.conj().T)


def truncated_matrix(N, n, rng):
    return haar_unitary(N + n, rng)[:N, :N]


def build_factor_chain(spec, seed):
    """Factor matrices whose product is the product-ensemble sample."""
    rng = as_generator(seed, STREAM_MATRIX)
    if spec.kind is Kind.ProductGinUE:
        factors = []
        for nu in spec.nu:
            if nu != int(nu):
                raise InputError(f'matrix sampling needs integer nu, got {nu}')
            factors.append(induced_matrix(spec.N, spec.N + int(nu), rng))
        return factors
    if spec.kind is Kind.ProductTruncated:
        return [truncated_matrix(spec.N, n, rng) for n in spec.n_list]
    return [build_ensemble_matrix(spec, rng)]


def build_ensemble_matrix(spec, seed):
    """
    Random matrix whose eigenvalue law is that of ``spec``.

    Args:
        spec (EnsembleSpec): ensemble description
        seed (int or np.random.Generator): seed or keyed generator

    Returns:
        np.ndarray: N x N complex matrix (the ordered product for product kinds)
    """
    rng = as_generator(seed, STREAM_MATRIX)
    N = spec.N
    kind = spec.kind
    if kind is Kind.GinUE:
        return sample_gaussian_matrix(N, N, rng)
    if kind is Kind.EllipticGinUE:
        return elliptic_matrix(N, spec.tau, rng)
    if kind is Kind.InducedGinUE:
        return induced_matrix(N, spec.n, rng)
    if kind is Kind.Spherical:
        return spherical_matrix(N, rng)
    if kind is Kind.InducedSpherical:
        return induced_spherical_matrix(N, spec.n, spec.M, rng)
    if kind is Kind.TruncatedUnitary:
        return truncated_matrix(N, spec.n, rng)
    factors = build_factor_chain(spec, rng)
    if len(factors) == 1:
        return factors[0]
    return np.linalg.multi_dot(factors)
