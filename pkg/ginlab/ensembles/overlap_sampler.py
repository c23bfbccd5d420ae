import math

import numpy as np

from ginlab.ensembles.builders import induced_matrix
from ginlab.ensembles.gaussian import sample_gaussian_matrix
from ginlab.ensembles.kostlan import kostlan_radial_sample
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.utils.rng import STREAM_OVERLAP
from ginlab.utils.rng import as_generator

MAX_BIN_TRIES = 100000


def default_bin_halfwidth(N):
    return 0.05 / math.sqrt(N)


def overlap_from_schur(z1, others, rng):
    """O_11 = prod_n (1 + |X_n|^2 / |z_1 - z_n|^2) with X_n iid standard complex Gaussians."""
    others = np.asarray(others, dtype=complex)
    if others.size == 0:
        return 1.0
    x = (rng.standard_normal(others.size) + 1j * rng.standard_normal(others.size)) / math.sqrt(2.0)
    return float(np.exp(np.sum(np.log1p(np.abs(x) ** 2 / np.abs(z1 - others) ** 2))))


def _conditioned_at_origin(N, rng, exact_positions):
    if exact_positions:
        # given z_1 = 0 the rest is the induced ensemble with weight |z|^2 e^{-|z|^2}
        rest = np.linalg.eigvals(induced_matrix(N - 1, N, rng))
    else:
        # moduli are exact; phases carry no information for O_11 at z_1 = 0
        s = kostlan_radial_sample('induced', N - 1, rng, n=N)
        rest = np.sqrt(s) * np.exp(2j * math.pi * rng.random(N - 1))
    return 0.0 + 0.0j, rest


def _binned(N, w, halfwidth, rng, max_tries):
    root_n = math.sqrt(N)
    for _ in range(max_tries):
        z = np.linalg.eigvals(sample_gaussian_matrix(N, N, rng))
        dist = np.abs(z / root_n - w)
        idx = int(np.argmin(dist))
        if dist[idx] <= halfwidth:
            return z[idx], np.delete(z, idx)
    raise NumericError('no eigenvalue fell in the conditioning bin',
                       dict(N=N, w=w, halfwidth=halfwidth, tries=max_tries))


def schur_overlap_sample(N, z1_condition=None, seed=0, halfwidth=None,
                         exact_positions=False, max_tries=MAX_BIN_TRIES):
    """
    One GinUE draw of the diagonal overlap O_11 through the Schur recursion.

    Args:
        N (int): matrix size
        z1_condition (complex): conditioning point in global coordinates
            (|w| < 1); None samples an unconditioned eigenvalue, 0 is exact,
            other points use nearest-eigenvalue binning
        seed (int or np.random.Generator): seed or keyed generator
        halfwidth (float): bin half-width in global coordinates
        exact_positions (bool): at w = 0, sample the other eigenvalues from a
            matrix instead of the radial shortcut

    Returns:
        (np.ndarray, float): raw-scaled eigenvalues with z_1 first, and O_11
    """
    if N < 1:
        raise InputError(f'N must be positive, got {N}')
    rng = as_generator(seed, STREAM_OVERLAP)
    if N == 1:
        if z1_condition is not None:
            z1 = complex(z1_condition)
        else:
            z1 = complex(sample_gaussian_matrix(1, 1, rng)[0, 0])
        return np.array([z1]), 1.0
    if z1_condition is None:
        z = np.linalg.eigvals(sample_gaussian_matrix(N, N, rng))
        idx = int(rng.integers(N))
        z1, rest = z[idx], np.delete(z, idx)
    elif complex(z1_condition) == 0:
        z1, rest = _conditioned_at_origin(N, rng, exact_positions)
    else:
        w = complex(z1_condition)
        if abs(w) >= 1:
            raise InputError(f'conditioning point must lie inside the unit disk, got {w}')
        if halfwidth is None:
            halfwidth = default_bin_halfwidth(N)
        z1, rest = _binned(N, w, halfwidth, rng, max_tries)
    o11 = overlap_from_schur(z1, rest, rng)
    return np.concatenate([[z1], rest]), o11
