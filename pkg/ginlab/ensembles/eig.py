import numpy as np
from scipy import linalg

from ginlab.ensembles.builders import build_ensemble_matrix
from ginlab.ensembles.spec import ComplexSpectrum
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.utils.rng import replica_rng

TRACE_TOL = 1e-8
BACKWARD_TOL = 1e-10


def eig(matrix, spec=None, seed=None, replica=0, check_backward=False):
    """
    Eigenvalues of a dense non-symmetric matrix.

    The trace identity sum(z) = Tr A is always checked; with
    ``check_backward`` the eigenpair residuals |A v - z v| are checked too.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f'eig needs a square matrix, got shape {a.shape}')
    if not np.all(np.isfinite(a)):
        raise InputError('eig needs a finite matrix')
    norm = float(np.linalg.norm(a))
    try:
        if check_backward:
            z, v = linalg.eig(a, check_finite=False)
        else:
            z = linalg.eigvals(a, check_finite=False)
    except linalg.LinAlgError as err:
        raise NumericError(f'eigensolver failed: {err}', dict(N=a.shape[0]))
    trace_err = abs(np.sum(z) - np.trace(a))
    if trace_err > TRACE_TOL * max(norm, 1.0):
        raise NumericError('eigenvalues violate the trace identity',
                           dict(trace_err=trace_err, norm=norm))
    if check_backward:
        resid = np.linalg.norm(a @ v - v * z[None, :], axis=0)
        worst = float(np.max(resid / np.linalg.norm(v, axis=0)))
        if worst > BACKWARD_TOL * max(norm, 1.0):
            raise NumericError('eigenpair backward error too large',
                               dict(backward_err=worst, norm=norm))
    return ComplexSpectrum(eigenvalues=z, spec=spec, seed=seed, replica=replica)


def sample_spectrum(spec, seed, replica=0):
    """Build one matrix for (seed, replica) and return its spectrum."""
    rng = replica_rng(seed, replica)
    return eig(build_ensemble_matrix(spec, rng), spec=spec, seed=seed, replica=replica)
