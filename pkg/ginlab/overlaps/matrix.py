"""
Overlap matrix O_ij = ⟨ℓ_i, ℓ_j⟩⟨r_i, r_j⟩ of a dense matrix, and Monte
Carlo estimators of conditioned overlap statistics built on it and on the
Schur recursion.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ginlab.ensembles.gaussian import sample_gaussian_matrix
from ginlab.ensembles.overlap_sampler import default_bin_halfwidth
from ginlab.ensembles.overlap_sampler import schur_overlap_sample
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.overlaps.limits import limit_overlap_cdf
from ginlab.overlaps.limits import overlap_offdiag_mean
from ginlab.runner.replica_runner import ReplicaRunner
from ginlab.utils.lab_logger import logger
from ginlab.utils.rng import STREAM_OVERLAP
from ginlab.utils.rng import replica_rng
from ginlab.utils.stats import ks_test
from ginlab.utils.stats import mean_and_sem
from ginlab.utils.tables import ResultTable

CONDITION_LIMIT = 1e12
ROW_SUM_TOL = 1e-8
MAX_RESAMPLE = 20


@dataclass
class OverlapSample:
    eigenvalues: np.ndarray
    diagonal: np.ndarray
    matrix: np.ndarray
    condition: float
    ill_conditioned: bool = False

    def offdiag(self, i, j):
        return complex(self.matrix[i, j])

    def row_sum_error(self):
        return float(np.max(np.abs(np.sum(self.matrix, axis=1) - 1.0)))


def overlap_from_matrix(matrix, check_rows=False):
    """
    Overlaps of all eigenvector pairs of ``matrix``.

    Right eigenvectors come from the eigensolver; the left ones solve
    Rᵀ L = I so that ℓ_iᵀ r_j = δ_ij holds column by column.

    Args:
        matrix (np.ndarray): square complex matrix
        check_rows (bool): raise NumericError if a row of O does not sum to 1

    Returns:
        OverlapSample: eigenvalues, O_jj, the full matrix O and the
        condition number of the eigenvector matrix, flagged above 1e12
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f'overlaps need a square matrix, got shape {a.shape}')
    N = a.shape[0]
    if N == 1:
        return OverlapSample(eigenvalues=np.array([a[0, 0]]), diagonal=np.ones(1),
                             matrix=np.ones((1, 1), dtype=complex), condition=1.0)
    try:
        z, right = linalg.eig(a, check_finite=True)
    except (linalg.LinAlgError, ValueError) as err:
        raise NumericError(f'eigensolver failed: {err}', dict(N=N))
    cond = float(np.linalg.cond(right))
    flagged = not np.isfinite(cond) or cond > CONDITION_LIMIT
    if flagged:
        logger.warning(f'eigenvector matrix condition {cond:.3e} above {CONDITION_LIMIT:.0e}; resample')
        return OverlapSample(eigenvalues=z, diagonal=np.full(N, np.nan), matrix=np.full((N, N), np.nan),
                             condition=cond, ill_conditioned=True)
    left = linalg.solve(right.T, np.eye(N, dtype=complex))
    overlaps = (left.conj().T @ left) * (right.conj().T @ right)
    sample = OverlapSample(eigenvalues=z, diagonal=np.real(np.diagonal(overlaps)).copy(),
                           matrix=overlaps, condition=cond)
    if check_rows:
        err = sample.row_sum_error()
        if err > ROW_SUM_TOL:
            raise NumericError('overlap rows do not sum to one', dict(row_sum_err=err, condition=cond))
    return sample


def _global_ginue_overlaps(N, rng):
    for _ in range(MAX_RESAMPLE):
        sample = overlap_from_matrix(sample_gaussian_matrix(N, N, rng) / math.sqrt(N))
        if not sample.ill_conditioned:
            return sample
    raise NumericError('eigenvector matrix stayed ill conditioned', dict(N=N, tries=MAX_RESAMPLE))


def global_overlap_samples(N, replicas, seed, threads=1):
    """Full overlap matrices of global scaled GinUE, one OverlapSample per replica."""
    def one(replica):
        return _global_ginue_overlaps(N, replica_rng(seed, replica, STREAM_OVERLAP))

    return ReplicaRunner(threads=threads, desc='overlap matrices')(one, replicas)


def _matrix_conditioned(N, w, halfwidth, rng, max_tries):
    for _ in range(max_tries):
        sample = _global_ginue_overlaps(N, rng)
        dist = np.abs(sample.eigenvalues - w)
        idx = int(np.argmin(dist))
        if dist[idx] <= halfwidth:
            return float(sample.diagonal[idx])
    raise NumericError('no eigenvalue fell in the conditioning bin',
                       dict(N=N, w=w, halfwidth=halfwidth, tries=max_tries))


def conditioned_overlaps(N, w, replicas, seed, halfwidth=None, method='schur', threads=1,
                         max_tries=100000):
    """
    O_11 samples of GinUE conditioned on z_1 = w in global coordinates.

    ``method='schur'`` uses the Schur recursion (exact at w = 0),
    ``method='matrix'`` diagonalises full matrices and keeps the eigenvalue
    nearest to w when it falls within the bin.
    """
    if method not in ('schur', 'matrix'):
        raise InputError(f"method must be 'schur' or 'matrix', got {method!r}")
    w = complex(w)
    if abs(w) >= 1:
        raise InputError(f'conditioning point must lie inside the unit disk, got {w}')
    if halfwidth is None:
        halfwidth = default_bin_halfwidth(N)

    def one(replica):
        rng = replica_rng(seed, replica, STREAM_OVERLAP)
        if method == 'schur':
            return schur_overlap_sample(N, w, seed=rng, halfwidth=halfwidth,
                                        max_tries=max_tries)[1]
        return _matrix_conditioned(N, w, halfwidth, rng, max_tries)

    runner = ReplicaRunner(threads=threads, desc=f'O_11 | z_1 = {w:.3g}')
    return np.asarray(runner(one, replicas), dtype=float)


def bin_sensitivity(N, w, replicas, seed, widths, method='schur', threads=1):
    """
    Conditioned O_11/(N(1 - |w|²)) against the limiting 1/Gamma[2, 1] law for
    several bin half-widths; one row per width.
    """
    if len(widths) == 0:
        raise InputError('need at least one bin width')
    scale = N * (1.0 - abs(complex(w)) ** 2)
    table = ResultTable(columns=['halfwidth', 'samples', 'median', 'ks_stat', 'ks_pvalue'],
                        meta=dict(N=N, w_re=complex(w).real, w_im=complex(w).imag, method=method))
    for h in widths:
        o11 = conditioned_overlaps(N, w, replicas, seed, halfwidth=h, method=method, threads=threads)
        stat, pvalue = ks_test(o11 / scale, limit_overlap_cdf)
        table.add_row(float(h), int(o11.size), float(np.median(o11 / scale)), float(stat), float(pvalue))
        logger.debug(f'bin half-width {h:.3g}: KS {stat:.4f} (p={pvalue:.3g})')
    return table


def _rotated_pair_hits(z, w1, w2, halfwidth):
    """Index pairs (i, j) such that a common rotation maps (z_i, z_j) into the bins about (w1, w2)."""
    if abs(w1) < halfwidth:
        rot = np.ones_like(z)
    else:
        rot = np.exp(1j * (np.angle(w1) - np.angle(z)))
    first = np.abs(z * rot - w1) <= halfwidth
    hits = []
    for i in np.flatnonzero(first):
        second = np.abs(z * rot[i] - w2) <= halfwidth
        second[i] = False
        hits.extend((int(i), int(j)) for j in np.flatnonzero(second))
    return hits


def offdiag_overlap_mc(N, w1, w2, replicas, seed, halfwidth=None, threads=1):
    """
    Mean of O_12 conditioned on z_1 ≈ w1, z_2 ≈ w2 (global coordinates).

    The law of the overlaps is invariant under z -> e^{iθ} z, so each pair is
    rotated to bring z_i onto the ray of w1 before binning. The large-N mean
    is also averaged over the accepted pairs, which removes the bias of the
    finite bins from the comparison.

    Returns:
        (mean, standard error of the real part, number of pairs, bin-averaged prediction)
    """
    w1 = complex(w1)
    w2 = complex(w2)
    if w1 == w2:
        raise InputError('conditioning points must differ')
    if halfwidth is None:
        halfwidth = 0.02

    def one(replica):
        rng = replica_rng(seed, replica, STREAM_OVERLAP)
        sample = _global_ginue_overlaps(N, rng)
        z = sample.eigenvalues
        out = []
        for i, j in _rotated_pair_hits(z, w1, w2, halfwidth):
            if abs(z[i]) < 1 and abs(z[j]) < 1:
                out.append((sample.offdiag(i, j), overlap_offdiag_mean(z[i], z[j], N)))
        return out

    runner = ReplicaRunner(threads=threads, desc='O_12 pairs')
    pairs = [p for batch in runner(one, replicas) for p in batch]
    if len(pairs) < 2:
        raise NumericError('too few eigenvalue pairs fell in the bins',
                           dict(N=N, w1=w1, w2=w2, halfwidth=halfwidth, pairs=len(pairs)))
    values = np.array([v for v, _ in pairs], dtype=complex)
    predicted = complex(np.mean([p for _, p in pairs]))
    mean, sem = mean_and_sem(values.real)
    logger.info(f'O_12 at ({w1:.3g}, {w2:.3g}), N={N}: {float(mean):.4g} ± {float(sem):.2g} '
                f'over {values.size} pairs, predicted {predicted.real:.4g}')
    return complex(float(mean), float(np.mean(values.imag))), float(sem), int(values.size), predicted


def product_overlap_density_mc(r, M, N, replicas, seed, halfwidth=0.05, threads=1):
    """
    ⟨(1/N²) Σ_j O_jj δ(z - z_j)⟩ at |z| = r for products of M global scaled
    GinUE matrices, binned over the annulus |r ± halfwidth|.

    Returns:
        (estimate, standard error)
    """
    if M < 1:
        raise InputError(f'M must be a positive integer, got {M}')
    lo = max(r - halfwidth, 0.0)
    hi = r + halfwidth
    area = math.pi * (hi * hi - lo * lo)

    def one(replica):
        rng = replica_rng(seed, replica, STREAM_OVERLAP)
        for _ in range(MAX_RESAMPLE):
            factors = [sample_gaussian_matrix(N, N, rng) / math.sqrt(N) for _ in range(M)]
            prod = factors[0] if M == 1 else np.linalg.multi_dot(factors)
            sample = overlap_from_matrix(prod)
            if not sample.ill_conditioned:
                break
        else:
            raise NumericError('product eigenvector matrix stayed ill conditioned', dict(N=N, M=M))
        modulus = np.abs(sample.eigenvalues)
        inside = (modulus >= lo) & (modulus < hi)
        return float(np.sum(sample.diagonal[inside])) / (N * N * area)

    runner = ReplicaRunner(threads=threads, desc=f'overlaps of {M}-fold products')
    mean, sem = mean_and_sem(np.asarray(runner(one, replicas)))
    return float(mean), float(sem)


def overlap_records(samples):
    """(re z, im z, O_jj) rows from a list of OverlapSample."""
    table = ResultTable(columns=['re_z', 'im_z', 'O_jj'])
    for sample in samples:
        for z, o in zip(sample.eigenvalues, sample.diagonal):
            table.add_row(float(z.real), float(z.imag), float(o))
    return table
