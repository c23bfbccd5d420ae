import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ginlab.ensembles.eig import sample_spectrum
from ginlab.ensembles.kostlan import kostlan_radial_sample
from ginlab.ensembles.spec import Kind
from ginlab.ensembles.spec import Scaling
from ginlab.ensembles.thinning import thin_spectrum
from ginlab.errors import InputError
from ginlab.linstats.covariance import cov_smooth
from ginlab.linstats.covariance import cov_thinned
from ginlab.linstats.test_function import EVAL_RADIUS
from ginlab.runner.replica_runner import ReplicaRunner
from ginlab.utils.lab_logger import logger
from ginlab.utils.rng import STREAM_RADIAL
from ginlab.utils.rng import STREAM_THINNING
from ginlab.utils.rng import replica_rng
from ginlab.utils.stats import blocked_jackknife
from ginlab.utils.stats import ks_distance_to_normal

MIN_REPLICAS = 100


@dataclass
class CltSummary:
    mean: complex
    variance: float
    variance_err: float
    ks_distance: float
    replicas: int
    exact_variance: Optional[float] = None


def _centred_variance(values):
    return float(np.mean(np.abs(values - values.mean()) ** 2))


def _centred_covariance(pairs):
    a = pairs[:, 0] - pairs[:, 0].mean()
    b = pairs[:, 1] - pairs[:, 1].mean()
    return complex(np.mean(a * np.conj(b)))


def linear_statistic_samples(spec, funcs, replicas, seed, zeta=None, rescale=False, threads=1):
    """
    Σ_j f(z_j) over global scaled spectra, one row per replica and one column per f.

    Radial statistics of rotation invariant ensembles without thinning are
    drawn from Kostlan's independent radii instead of full spectra.
    """
    funcs = list(funcs)
    radial = all(f.radial for f in funcs) and spec.is_radial and zeta is None
    scale = spec.global_scale
    if radial:
        s = _kostlan_batch(spec, seed, replicas)
        r = np.sqrt(s) / scale
        return np.stack([np.sum(np.asarray(f(r + 0j), dtype=complex), axis=1) for f in funcs], axis=1)

    def one_replica(i):
        z = sample_spectrum(spec, seed, i).scaled(Scaling.global_)
        if zeta is not None:
            z = thin_spectrum(z, zeta, replica_rng(seed, i, STREAM_THINNING), rescale=rescale)
        outside = int(np.sum(np.abs(z) > EVAL_RADIUS))
        if outside:
            logger.debug(f'replica {i}: {outside} points beyond radius {EVAL_RADIUS}')
        return [complex(np.sum(f(z))) for f in funcs]

    runner = ReplicaRunner(threads=threads, desc='linear statistic')
    return np.asarray(runner(one_replica, replicas), dtype=complex)


def _kostlan_batch(spec, seed, replicas):
    return kostlan_radial_sample(spec.kind.value, spec.N, replica_rng(seed, 0, STREAM_RADIAL),
                                 replicas=replicas, **spec.kostlan_params())


def clt_harness(spec, f, replicas, seed, zeta=None, rescale=False, threads=1):
    """
    Monte Carlo law of Σ f(z_j/scale): empirical mean, centred variance with
    jackknife error, and the KS distance of the standardised statistic to N(0, 1).
    For GinUE the exact limiting variance is attached.
    """
    if replicas < MIN_REPLICAS:
        raise InputError(f'the CLT harness needs at least {MIN_REPLICAS} replicas, got {replicas}')
    if not f.smooth:
        raise InputError(f'{f.name} is not smooth; use the counting statistics instead')
    values = linear_statistic_samples(spec, [f], replicas, seed, zeta=zeta, rescale=rescale,
                                      threads=threads)[:, 0]
    _, var_err = blocked_jackknife(values, estimator=_centred_variance)
    var = _centred_variance(values)
    if np.allclose(values.imag, 0.0):
        ks = ks_distance_to_normal(values.real)
    else:
        ks = max(ks_distance_to_normal(values.real), ks_distance_to_normal(values.imag))
    exact = None
    if spec.kind is Kind.GinUE:
        exact = (cov_smooth(f, f).value if zeta is None
                 else cov_thinned(f, f, spec.N, zeta, rescale=rescale))
        exact = float(np.real(exact))
    logger.info(f'CLT {f.name}: var={var:.6g} ± {float(var_err):.2g}, KS={ks:.4f}, exact={exact}')
    return CltSummary(mean=complex(values.mean()), variance=var, variance_err=float(var_err),
                      ks_distance=float(ks), replicas=int(replicas), exact_variance=exact)


def mc_covariance(spec, f, g, replicas, seed, threads=1):
    """Monte Carlo Cov(Σ f, Σ ḡ) with a jackknife standard error."""
    if replicas < MIN_REPLICAS:
        raise InputError(f'need at least {MIN_REPLICAS} replicas, got {replicas}')
    pairs = linear_statistic_samples(spec, [f, g], replicas, seed, threads=threads)
    cov = _centred_covariance(pairs)
    _, err = blocked_jackknife(pairs, estimator=_centred_covariance)
    return cov, float(np.abs(err))


def indicator_variance_scan(spec, test_functions, replicas, seed, threads=1):
    """Monte Carlo variances of a family of statistics, e.g. smoothed indicators of shrinking width."""
    values = linear_statistic_samples(spec, test_functions, replicas, seed, threads=threads)
    return [_centred_variance(values[:, i]) for i in range(values.shape[1])]


def empirical_charfn(samples, k):
    """(mean of e^{ikX}, its standard error per real and imaginary part)."""
    phases = np.exp(1j * k * np.asarray(samples, dtype=float))
    n = phases.size
    err = math.hypot(np.std(phases.real, ddof=1), np.std(phases.imag, ddof=1)) / math.sqrt(n)
    return complex(phases.mean()), err
