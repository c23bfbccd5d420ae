import numpy as np

from ginlab.errors import InputError
from ginlab.utils.rng import STREAM_MATRIX
from ginlab.utils.rng import as_generator


def sample_gaussian_matrix(rows, cols, seed):
    """
    Matrix of iid standard complex Gaussians, E|g|^2 = 1.

    Args:
        rows (int): number of rows
        cols (int): number of columns
        seed (int or np.random.Generator): seed or an already keyed generator

    Returns:
        np.ndarray: complex array of shape (rows, cols)
    """
    if rows < 1 or cols < 1:
        raise InputError(f'matrix shape must be positive, got ({rows}, {cols})')
    rng = as_generator(seed, STREAM_MATRIX)
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im) / np.sqrt(2.0)


def haar_unitary(n, seed):
    """Haar distributed n x n unitary: QR of a Gaussian matrix with R's diagonal phases divided out."""
    g = sample_gaussian_matrix(n, n, seed)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    phases = d / np.abs(d)
    return q * phases[None, :]


def bi_unitary_rotate(matrix, seed):
    """U A V with independent Haar U, V."""
    rng = as_generator(seed, STREAM_MATRIX)
    n = matrix.shape[0]
    return haar_unitary(n, rng) @ matrix @ haar_unitary(matrix.shape[1], rng)


def hermitian_part(matrix):
    return 0.5 * (matrix + matrix.conj().T)
