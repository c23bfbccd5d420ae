import numpy as np
from scipy import stats

from ginlab.errors import InputError


def mean_and_sem(samples):
    samples = np.asarray(samples)
    if samples.size < 2:
        raise InputError('at least two samples are needed for a standard error')
    return np.mean(samples, axis=0), np.std(samples, axis=0, ddof=1) / np.sqrt(samples.shape[0])


def blocked_jackknife(samples, n_blocks=20, estimator=np.mean):
    """
    Jackknife mean and standard error over contiguous blocks, so that
    serial correlation inside a Markov chain is absorbed into the blocks.
    """
    samples = np.asarray(samples)
    n = samples.shape[0]
    n_blocks = int(min(n_blocks, n))
    if n_blocks < 2:
        raise InputError(f'jackknife needs at least 2 blocks, got {n_blocks}')
    usable = (n // n_blocks) * n_blocks
    blocks = samples[:usable].reshape((n_blocks, -1) + samples.shape[1:])
    full = estimator(blocks.reshape((usable,) + samples.shape[1:]))
    leave_out = np.array([estimator(np.delete(blocks, b, axis=0).reshape((-1,) + samples.shape[1:]))
                          for b in range(n_blocks)])
    jk_mean = np.mean(leave_out, axis=0)
    var = (n_blocks - 1) / n_blocks * np.sum(np.abs(leave_out - jk_mean) ** 2, axis=0)
    return full, np.sqrt(var)


def ks_distance_to_normal(samples):
    """KS distance between standardised samples and N(0, 1)."""
    samples = np.asarray(samples, dtype=float)
    z = (samples - samples.mean()) / samples.std(ddof=1)
    return stats.kstest(z, 'norm').statistic


def ks_test(samples, cdf):
    res = stats.kstest(np.asarray(samples, dtype=float), cdf)
    return res.statistic, res.pvalue
