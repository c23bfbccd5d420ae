"""
Counting statistics of rotation invariant ensembles as sums of Bernoulli variables.

By Kostlan's theorem the number of eigenvalues in a disk or annulus D is a
sum of independent Bernoulli(λ_j) variables, λ_j the probability that the
j-th radial variable s_j falls in D. Everything here is built from the list
λ_1..λ_N: the generating function Π(1 - ξλ_j), the probabilities E_N(n; D)
and the cumulants.
"""
import math

import numpy as np
from scipy import special
from scipy import stats

from ginlab.counting.report import CountingReport
from ginlab.counting.report import as_region
from ginlab.ensembles.kostlan import WEIGHT_IDS
from ginlab.ensembles.spec import EnsembleSpec
from ginlab.errors import InputError
from ginlab.specfun.gamma import polylog_negint
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad


def truncation_index(R):
    """Last index kept in the infinite GinUE products, ⌈R² + 12R + 30⌉."""
    R = float(R)
    return int(math.ceil(R * R + 12.0 * R + 30.0))


def tail_bound(R, j_star=None):
    """
    Upper bound on Σ_{j > j*} P(j, R²), from
    P(j, x) <= x^j e^{-x} / (j! (1 - x/(j+1))) for j + 1 > x.
    """
    x = float(R) ** 2
    j_star = truncation_index(R) if j_star is None else int(j_star)
    if x == 0.0:
        return 0.0
    ratio = x / (j_star + 2.0)
    if ratio >= 1.0:
        return math.inf
    log_head = (j_star + 1.0) * math.log(x) - x - special.gammaln(j_star + 2.0)
    return math.exp(log_head) / (1.0 - ratio) ** 2


def _gamma_product_cdf(shapes, t):
    if t <= 0.0:
        return 0.0
    if math.isinf(t):
        return 1.0
    if len(shapes) == 1:
        return float(special.gammainc(shapes[0], t))
    a = shapes[-1]
    rest = shapes[:-1]

    def integrand(x):
        # x = log g, g the last Gamma(a) factor
        return math.exp(a * x - math.exp(x) - special.gammaln(a)) * _gamma_product_cdf(rest, t * math.exp(-x))

    center = math.log(a)
    lo = center - 40.0 / math.sqrt(a) - 10.0
    hi = math.log(a + 40.0 * math.sqrt(a) + 40.0)
    val, _ = adaptive_quad(integrand, lo, hi, epsabs=1e-15, epsrel=1e-11,
                           points=[center], name='gamma_product_cdf')
    return min(max(val, 0.0), 1.0)


def _beta_product_cdf(a, sizes, t):
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    if len(sizes) == 1:
        return float(special.betainc(a, sizes[0], t))
    n_last = sizes[-1]
    rest = sizes[:-1]
    log_norm = special.betaln(a, n_last)

    def integrand(b):
        return (math.exp((a - 1.0) * math.log(b) + (n_last - 1.0) * math.log1p(-b) - log_norm)
                * _beta_product_cdf(a, rest, t / b))

    # for b <= t the remaining product is below t/b >= 1 with certainty
    head = float(special.betainc(a, n_last, t))
    val, _ = adaptive_quad(integrand, t, 1.0, epsabs=1e-15, epsrel=1e-11, name='beta_product_cdf')
    return min(max(head + val, 0.0), 1.0)


def _lower_upper(spec, t):
    """(P(s_j <= t), P(s_j > t)) for j = 1..N, each accurate where it is small."""
    N = spec.N
    j = np.arange(1, N + 1, dtype=float)
    kind = spec.kind.value
    if kind in ('ginue', 'induced'):
        a = j if kind == 'ginue' else j + spec.n - N
        if math.isinf(t):
            return np.ones(N), np.zeros(N)
        return special.gammainc(a, t), special.gammaincc(a, t)
    if kind in ('spherical', 'induced_spherical'):
        if kind == 'spherical':
            a, b = j, N + 1.0 - j
        else:
            a, b = j + spec.M - N, spec.n - j + 1.0
        if math.isinf(t):
            return np.ones(N), np.zeros(N)
        u = t / (1.0 + t)
        return special.betainc(a, b, u), special.betainc(b, a, 1.0 / (1.0 + t))
    if kind == 'truncated':
        if t >= 1.0:
            return np.ones(N), np.zeros(N)
        return special.betainc(j, spec.n, t), special.betainc(spec.n, j, 1.0 - t)
    if kind == 'product':
        lower = np.array([_gamma_product_cdf([jj + v for v in spec.nu], t) for jj in j])
        return lower, 1.0 - lower
    lower = np.array([_beta_product_cdf(jj, list(spec.n_list), t) for jj in j])
    return lower, 1.0 - lower


def _region_probabilities(spec, region):
    lo_in, up_in = _lower_upper(spec, region.r_inner ** 2)
    lo_out, up_out = _lower_upper(spec, region.r_outer ** 2)
    # subtract on the side where both terms are small
    lam = np.where(lo_in > 0.5, up_in - up_out, lo_out - lo_in)
    return np.clip(lam, 0.0, 1.0)


def infinite_ginue_params(region):
    """
    λ_j for the bulk scaled infinite GinUE, truncated at j* for the outer radius.

    Returns:
        (lam, tail_bound)
    """
    region = as_region(region)
    if math.isinf(region.r_outer):
        raise InputError('the infinite GinUE needs a bounded region')
    j_star = truncation_index(region.r_outer)
    spec = EnsembleSpec(kind='ginue', N=j_star)
    lam = _region_probabilities(spec, region)
    bound = tail_bound(region.r_outer, j_star)
    logger.debug(f'infinite GinUE truncated at j*={j_star}, tail bound {bound:.2e}')
    return lam, bound


def bernoulli_params(weight, N, region, n=None, M=None, nu=(), n_list=()):
    """
    λ_j(D) = ∫_D s_j-law, j = 1..N, for a disk or annulus D.

    Args:
        weight (str): one of the Kostlan weight ids
        N (int or None): matrix size; None for the infinite GinUE
        region: Region, disk radius or (r_inner, r_outer)
        n, M, nu, n_list: weight parameters as in EnsembleSpec

    Returns:
        np.ndarray: λ_1..λ_N in [0, 1]
    """
    if weight not in WEIGHT_IDS:
        raise InputError(f'Unsupported radial weight: {weight}')
    region = as_region(region)
    if N is None:
        if weight != 'ginue':
            raise InputError('only the GinUE weight has an infinite-N limit here')
        return infinite_ginue_params(region)[0]
    spec = EnsembleSpec(kind=weight, N=N, n=n, M=M, nu=tuple(nu), n_list=tuple(n_list))
    return _region_probabilities(spec, region)


def bernoulli_params_for_spec(spec, region):
    if not spec.is_radial:
        raise InputError(f'{spec.kind.value} is not rotation invariant')
    return _region_probabilities(spec, as_region(region))


def _check_lam(lam):
    lam = np.asarray(lam, dtype=float).ravel()
    if np.any((lam < 0.0) | (lam > 1.0)):
        raise InputError('Bernoulli parameters must lie in [0, 1]')
    return lam


def log_gap_generating(lam, xi):
    lam = _check_lam(lam)
    if xi > 1.0:
        raise InputError(f'gap generating function needs xi <= 1, got {xi}')
    factors = 1.0 - xi * lam
    if np.any(factors <= 0.0):
        return -math.inf
    return math.fsum(np.log1p(-xi * lam))


def gap_generating(lam, xi):
    """Ẽ(ξ; D) = Π(1 - ξλ_j); ξ = 1 is the hole probability."""
    return math.exp(log_gap_generating(lam, xi))


def counting_pmf(lam):
    """
    E_N(n; D), n = 0..N, by convolving the Bernoulli laws one at a time.

    The result is clipped at zero and renormalised with an exactly rounded
    sum, so it is a probability vector to the last bit.
    """
    lam = _check_lam(lam)
    pmf = np.zeros(lam.size + 1)
    pmf[0] = 1.0
    for k, p in enumerate(lam, start=1):
        head = pmf[:k + 1].copy()
        pmf[:k + 1] = head * (1.0 - p)
        pmf[1:k + 1] += head[:k] * p
    pmf = np.clip(pmf, 0.0, None)
    return pmf / math.fsum(pmf)


def cumulant(p, lam):
    """
    κ_p = (-1)^{p+1} Σ_j Li_{1-p}(1 - 1/λ_j) for p >= 2, and Σλ_j for p = 1.

    Terms with λ_j in {0, 1} are deterministic and contribute nothing.
    """
    if int(p) != p or p < 1:
        raise InputError(f'cumulant order must be a positive integer, got {p}')
    p = int(p)
    lam = _check_lam(lam)
    if p == 1:
        return float(np.sum(lam))
    inner = lam[(lam > 0.0) & (lam < 1.0)]
    if inner.size == 0:
        return 0.0
    vals = polylog_negint(p - 1, 1.0 - 1.0 / inner)
    return (-1.0) ** (p + 1) * math.fsum(np.atleast_1d(vals))


def pmf_moments(pmf, p_max):
    """Raw moments E[n^p], p = 1..p_max."""
    pmf = np.asarray(pmf, dtype=float)
    n = np.arange(pmf.size, dtype=float)
    return [math.fsum(pmf * n ** p) for p in range(1, p_max + 1)]


def cumulants_from_moments(moments):
    """κ_1..κ_P from raw moments μ_1..μ_P: κ_p = μ_p - Σ_{m<p} C(p-1, m-1) κ_m μ_{p-m}."""
    mu = [1.0] + list(moments)
    kappa = [0.0]
    for p in range(1, len(mu)):
        acc = mu[p]
        for m in range(1, p):
            acc -= special.comb(p - 1, m - 1, exact=True) * kappa[m] * mu[p - m]
        kappa.append(acc)
    return kappa[1:]


def pmf_cumulants(pmf, p_max):
    return cumulants_from_moments(pmf_moments(pmf, p_max))


def local_clt_distance(pmf):
    """max_k |σ E(k) - φ((k - μ)/σ)|, the lattice form of the local CLT distance."""
    pmf = np.asarray(pmf, dtype=float)
    k = np.arange(pmf.size, dtype=float)
    mu = float(np.sum(k * pmf))
    sigma = math.sqrt(float(np.sum((k - mu) ** 2 * pmf)))
    if sigma == 0.0:
        raise InputError('local CLT distance needs a non-degenerate count')
    return float(np.max(np.abs(sigma * pmf - stats.norm.pdf((k - mu) / sigma))))


def boundary_variance_constant():
    """
    ∫ p(1 - p) dt with p = (1 + erf(t/√2))/2; equals 1/√π and fixes the
    boundary coefficient of the bulk number variance.
    """
    def integrand(t):
        p = 0.5 * special.erfc(-t / math.sqrt(2.0))
        return p * (1.0 - p)

    val, _ = adaptive_quad(integrand, -math.inf, math.inf, name='boundary_variance')
    return val


def counting_report(weight, N, region, orders=(1, 2, 3, 4), n=None, M=None, nu=(), n_list=()):
    region = as_region(region)
    if N is None:
        if weight != 'ginue':
            raise InputError('only the GinUE weight has an infinite-N limit here')
        lam, bound = infinite_ginue_params(region)
    else:
        lam = bernoulli_params(weight, N, region, n=n, M=M, nu=nu, n_list=n_list)
        bound = 0.0
    pmf = counting_pmf(lam)
    cumulants = {int(p): cumulant(p, lam) for p in orders}
    logger.debug(f'counting {weight} N={N} {region.kind} ({region.r_inner}, {region.r_outer}): '
                 f'mean={cumulants.get(1, float(np.sum(lam))):.6g}')
    return CountingReport(region=region, N=N, weight=weight, lam=lam, pmf=pmf,
                          cumulants=cumulants, tail_bound=bound)
