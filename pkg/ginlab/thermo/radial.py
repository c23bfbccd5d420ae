"""
β = 2 partition functions Z_N(2; Q) = Π_j h_j of radially symmetric
potentials, the equilibrium energy and entropy, and the check of the
large-N expansion

    log Z_N = -N² I_Q - ½ N log N + (½ log(2π²) - ½ E_Q) N - (χ/12) log N + O(1).
"""
import math
from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import List

import numpy as np
from scipy import optimize
from scipy import special

from ginlab.ensembles.coulomb import RadialPotential
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.kernels.equilibrium import equilibrium_radial
from ginlab.runner.replica_runner import ReplicaRunner
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad
from ginlab.utils.tables import ResultTable

LOG_R_BOUND = 30.0
PEAK_WIDTHS = 40.0
FD_STEP = 1e-4


def disk_potential():
    """q(r) = r², droplet the unit disk."""
    return RadialPotential('disk', q=lambda r: r * r, dq=lambda r: 2.0 * r,
                           d2q=lambda r: 2.0 + 0.0 * r)


def annulus_potential(alpha):
    """q(r) = r² - 2α log r, droplet √α <= r <= √(1 + α)."""
    if alpha <= 0:
        raise InputError(f'annulus potential needs alpha > 0, got {alpha}')
    return RadialPotential(f'annulus {alpha:g}', q=lambda r: r * r - 2.0 * alpha * np.log(r),
                           dq=lambda r: 2.0 * r - 2.0 * alpha / r,
                           d2q=lambda r: 2.0 + 2.0 * alpha / r ** 2)


def _log_h(potential, N, j):
    """log h_j = log 2π∫ r^{2j+1} e^{-N q(r)} dr, integrated around the peak of the log integrand."""
    def phi(t):
        # in t = log r, including the Jacobian r
        return (2 * j + 2) * t - N * float(potential.q(math.exp(t)))

    opt = optimize.minimize_scalar(lambda t: -phi(t), bounds=(-LOG_R_BOUND, LOG_R_BOUND),
                                   method='bounded', options=dict(xatol=1e-10))
    t_star = float(opt.x)
    if t_star > LOG_R_BOUND - 1.0:
        raise NumericError(f'h_{j} diverges: the weight does not decay against r^{2 * j + 1}',
                           dict(j=j, N=N, potential=potential.name))
    peak = phi(t_star)
    curv = -(phi(t_star + FD_STEP) - 2.0 * peak + phi(t_star - FD_STEP)) / FD_STEP ** 2
    width = 1.0 / math.sqrt(max(curv, 1e-12))
    lo = max(t_star - PEAK_WIDTHS * width, -LOG_R_BOUND)
    hi = min(t_star + PEAK_WIDTHS * width, LOG_R_BOUND)
    value, err = adaptive_quad(lambda t: math.exp(phi(t) - peak), lo, hi, points=[t_star],
                               name=f'h_{j}')
    return math.log(2.0 * math.pi * value) + peak, err / value


def partition_radial_beta2(potential, N, threads=1):
    """
    log Z_N(2; Q) = Σ_{j<N} log h_j for Q(z) = q(|z|).

    Returns:
        (log Z, accumulated relative error of the h_j)
    """
    if int(N) != N or N < 1:
        raise InputError(f'N must be a positive integer, got {N}')
    N = int(N)
    runner = ReplicaRunner(threads=threads, desc=f'h_j for {potential.name}')
    out = runner(lambda j: _log_h(potential, N, j), N)
    log_z = math.fsum(v for v, _ in out)
    return log_z, float(sum(e for _, e in out))


def log_partition_annulus(alpha, N):
    """Exact log Z_N(2; r² - 2α log r) = Σ_j log(π Γ(j + αN + 1)/N^{j + αN + 1})."""
    j = np.arange(int(N), dtype=float)
    c = alpha * N
    return math.fsum(math.log(math.pi) + special.gammaln(j + c + 1.0) - (j + c + 1.0) * math.log(N))


def log_partition_disk(N):
    """Exact log Z_N(2; r²) = Σ_j log(π j!/N^{j+1})."""
    j = np.arange(int(N), dtype=float)
    return math.fsum(math.log(math.pi) + special.gammaln(j + 1.0) - (j + 1.0) * math.log(N))


def equilibrium_functionals(potential):
    """
    Energy I_Q = q(r2) - log r2 - ¼ ∫_{r1}^{r2} r q'(r)² dr and entropy
    E_Q = ∫ μ log μ of the equilibrium measure.

    Returns:
        (I_Q, E_Q, r1, r2)
    """
    measure = equilibrium_radial(potential.q, potential.dq, potential.d2q)
    r1, r2 = measure.r1, measure.r2
    dq = potential.dq
    lo = max(r1, 1e-300)
    tension, _ = adaptive_quad(lambda r: r * float(dq(r)) ** 2, lo, r2, name='energy integral')
    energy = float(potential.q(r2)) - math.log(r2) - 0.25 * tension

    def entropy_density(r):
        mu = float(measure.density(r + 0j))
        return 2.0 * math.pi * r * mu * math.log(mu) if mu > 0 else 0.0

    entropy, _ = adaptive_quad(entropy_density, lo, r2, name='entropy integral')
    logger.debug(f'{potential.name}: I={energy:.12g}, E={entropy:.12g}, droplet [{r1:.6g}, {r2:.6g}]')
    return energy, entropy, r1, r2


def energy_direct(potential):
    """
    ∫∫ log(1/|z - w|) dμ dμ + ∫ q dμ with the log kernel reduced radially to
    log(1/max(|z|, |w|)), the inner mass computed by quadrature.
    """
    measure = equilibrium_radial(potential.q, potential.dq, potential.d2q)
    r1, r2 = measure.r1, measure.r2

    def shell(r):
        return 2.0 * math.pi * r * float(measure.density(r + 0j))

    def inner_mass(r):
        return adaptive_quad(shell, r1, r, name='inner mass')[0] if r > r1 else 0.0

    lo = max(r1, 1e-300)
    log_part, _ = adaptive_quad(lambda r: -2.0 * math.log(r) * inner_mass(r) * shell(r), lo, r2,
                                name='radial log energy')
    field_part, _ = adaptive_quad(lambda r: float(potential.q(r)) * shell(r), lo, r2,
                                  name='potential energy')
    return log_part + field_part


@dataclass
class FreeEnergyReport:
    name: str
    N: List[int]
    log_z: List[float]
    leading: List[float]
    energy: float
    entropy: float
    chi_hat: float
    constant: float
    residuals: List[float] = field(default_factory=list)
    meta: Dict[str, float] = field(default_factory=dict)

    def to_table(self):
        table = ResultTable(columns=['potential', 'N', 'log_z', 'leading', 'remainder', 'fit_residual'],
                            meta=dict(self.meta, energy=self.energy, entropy=self.entropy,
                                      chi_hat=self.chi_hat, constant=self.constant))
        for N, lz, lead, res in zip(self.N, self.log_z, self.leading, self.residuals):
            table.add_row(self.name, N, lz, lead, lz - lead, res)
        return table


def _leading_terms(N, energy, entropy):
    return -N * N * energy - 0.5 * N * math.log(N) + (0.5 * math.log(2.0 * math.pi ** 2) - 0.5 * entropy) * N


def expansion_check_zn2q(potential, N_grid, exact=None, threads=1):
    """
    Subtract the N², N log N and N terms from log Z_N and fit the remainder
    against {log N, 1, 1/N}; χ̂ = -12 × (log N coefficient).

    Args:
        potential (RadialPotential): with q, dq and d2q
        N_grid (list of int): at least four sizes
        exact (callable): N -> log Z_N, replacing the h_j quadratures when given

    Returns:
        FreeEnergyReport
    """
    N_grid = [int(N) for N in N_grid]
    if len(N_grid) < 4:
        raise InputError(f'need at least four N values, got {len(N_grid)}')
    energy, entropy, r1, r2 = equilibrium_functionals(potential)
    log_z = []
    for N in N_grid:
        log_z.append(exact(N) if exact is not None else partition_radial_beta2(potential, N, threads)[0])
    leading = [_leading_terms(N, energy, entropy) for N in N_grid]
    N = np.asarray(N_grid, dtype=float)
    remainder = np.asarray(log_z) - np.asarray(leading)
    basis = np.stack([np.log(N), np.ones_like(N), 1.0 / N], axis=1)
    coef, _, rank, _ = np.linalg.lstsq(basis, remainder, rcond=None)
    if rank < basis.shape[1]:
        raise NumericError('degenerate fit basis', dict(rank=int(rank), N=N_grid))
    fit_res = remainder - basis @ coef
    chi_hat = -12.0 * float(coef[0])
    logger.info(f'{potential.name}: chi estimate {chi_hat:.4f} from N in {N_grid}')
    return FreeEnergyReport(name=potential.name, N=N_grid, log_z=[float(v) for v in log_z],
                            leading=leading, energy=energy, entropy=entropy, chi_hat=chi_hat,
                            constant=float(coef[1]), residuals=fit_res.tolist(),
                            meta=dict(r1=r1, r2=r2, inverse_n_coefficient=float(coef[2])))
