"""
Monte Carlo identities of the two-dimensional one-component plasma at
general β: the Ward (loop) identity and the second moment of the positions.
"""
import numpy as np

from ginlab.errors import InputError
from ginlab.sumrules.residual import Residual
from ginlab.utils.lab_logger import logger
from ginlab.utils.stats import blocked_jackknife


def _check_chain(chain):
    if chain.snapshots is None or len(chain.snapshots) < 2:
        raise InputError('the chain has no recorded snapshots')
    if not chain.equilibrated:
        raise InputError(f'chain is not equilibrated (burn_in={chain.burn_in}, '
                         f'accept={chain.accept_rate:.3f})')


def ward_statistic(snapshots, beta, potential, psi):
    """
    W[ψ] = (β/2)·½ Σ_{j≠k} (ψ_j - ψ_k)/(z_j - z_k) - β Σ_j ∂V(z_j) ψ(z_j) + Σ_j ∂ψ(z_j)
    for every row of ``snapshots``; its mean vanishes under exp(-βU).
    """
    z = np.atleast_2d(np.asarray(snapshots, dtype=complex))
    values = np.asarray(psi(z), dtype=complex)
    fx, fy = psi.gradient(z)
    d_psi = 0.5 * (np.asarray(fx) - 1j * np.asarray(fy))
    dz = z[:, :, None] - z[:, None, :]
    dv = values[:, :, None] - values[:, None, :]
    off = ~np.eye(z.shape[1], dtype=bool)
    pair = np.sum(np.where(off, dv / np.where(off, dz, 1.0), 0.0), axis=(1, 2))
    force = np.sum(potential.dz(z) * values, axis=1)
    return 0.25 * beta * pair - beta * force + np.sum(d_psi, axis=1)


def ward_residual(chain, psi):
    """Mean of W[ψ] over the chain's snapshots with a blocked jackknife error."""
    _check_chain(chain)
    w = ward_statistic(chain.snapshots, chain.beta, chain.potential, psi)
    mean, err = blocked_jackknife(w)
    mean = complex(mean)
    err = float(np.abs(err))
    logger.info(f'ward identity {psi.name}, beta={chain.beta}, N={chain.N}: '
                f'{mean.real:.4g}{mean.imag:+.4g}i ± {err:.2g}')
    return Residual(name=f'ward {psi.name}', target=0.0, value=abs(mean), method='mc',
                    err_est=err, meta=dict(real=mean.real, imag=mean.imag, beta=chain.beta,
                                           N=chain.N, samples=len(chain.snapshots)))


def second_moment_target(beta, N):
    """⟨Σ|z_j|²⟩ = 2N/β + N(N - 1)/2 for the potential |z|²/2."""
    return 2.0 * N / beta + 0.5 * N * (N - 1)


def moment_identity_residual(beta, N, chain=None):
    """
    Second moment identity, by Monte Carlo over ``chain`` when given and
    otherwise exactly at β = 2, where Σ|z_j|² is a sum of Gamma(j) radii.
    """
    target = second_moment_target(beta, N)
    if chain is None:
        if beta != 2:
            raise InputError(f'the exact second moment is only available at beta = 2, got {beta}')
        return Residual(name='second moment', target=target, value=0.5 * N * (N + 1),
                        method='closed-form', meta=dict(beta=beta, N=N))
    _check_chain(chain)
    if chain.potential.name != 'ginue':
        raise InputError(f'the second moment identity needs the |z|^2/2 potential, got {chain.potential.name}')
    if chain.beta != beta or chain.N != N:
        raise InputError(f'chain has beta={chain.beta}, N={chain.N}; asked for beta={beta}, N={N}')
    samples = np.sum(np.abs(chain.snapshots) ** 2, axis=1)
    mean, err = blocked_jackknife(samples)
    return Residual(name='second moment', target=target, value=float(mean), method='mc',
                    err_est=float(err), meta=dict(beta=beta, N=N, samples=samples.size))
