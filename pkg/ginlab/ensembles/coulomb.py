"""
Metropolis sampling of the two-dimensional one-component plasma

    U = -sum_{j<k} log|z_j - z_k| + sum_j V(z_j),  V(z) = q(|z|),

with Boltzmann factor exp(-beta U). At beta = 2 and q(r) = r^2/2 the
stationary law is the GinUE eigenvalue law.
"""
import math
from dataclasses import dataclass
from typing import Callable
from typing import Optional

import numpy as np

from ginlab.errors import InputError
from ginlab.utils.lab_logger import logger
from ginlab.utils.rng import STREAM_CHAIN
from ginlab.utils.rng import as_generator

TARGET_ACCEPT = (0.2, 0.5)
TUNE_EVERY = 20


@dataclass(frozen=True)
class RadialPotential:
    name: str
    q: Callable
    dq: Callable
    init_radius: float = 1.0
    d2q: Optional[Callable] = None

    def __call__(self, r):
        return self.q(r)

    def dz(self, z):
        """dV/dz for V(z) = q(|z|), i.e. q'(r) conj(z) / (2 r)."""
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        safe = np.where(r > 0, r, 1.0)
        return np.where(r > 0, self.dq(safe) * np.conj(z) / (2.0 * safe), 0.0)


def ginue_potential(N):
    return RadialPotential('ginue', q=lambda r: 0.5 * r ** 2, dq=lambda r: r,
                           init_radius=math.sqrt(N))


def induced_potential(N, charge):
    """r^2/2 - charge log r: a point charge at the origin repels the gas."""
    if charge < 0:
        raise InputError(f'charge must be nonnegative, got {charge}')
    return RadialPotential('induced', q=lambda r: 0.5 * r ** 2 - charge * np.log(r),
                           dq=lambda r: r - charge / r,
                           init_radius=math.sqrt(N + charge))


def spherical_potential(N):
    return RadialPotential('spherical', q=lambda r: 0.5 * (N + 1) * np.log1p(r ** 2),
                           dq=lambda r: (N + 1) * r / (1.0 + r ** 2),
                           init_radius=1.0)


def named_potential(name, N, charge=0.0):
    if name == 'ginue':
        return ginue_potential(N)
    if name == 'induced':
        return induced_potential(N, charge)
    if name == 'spherical':
        return spherical_potential(N)
    raise InputError(f'Unknown potential: {name}')


@dataclass
class CoulombChain:
    beta: float
    N: int
    potential: RadialPotential
    positions: np.ndarray
    step_scale: float
    accept_rate: float = 0.0
    equilibrated: bool = False
    burn_in: int = 0
    snapshots: Optional[np.ndarray] = None

    def energy(self, positions=None):
        z = self.positions if positions is None else positions
        return coulomb_energy(z, self.potential)


def coulomb_energy(z, potential):
    z = np.asarray(z, dtype=complex)
    diff = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(z.size, k=1)
    pair = np.sum(np.log(diff[iu]))
    return float(-pair + np.sum(potential(np.abs(z))))


def _delta_energy(z, i, new, potential):
    others = np.delete(z, i)
    old = z[i]
    d_pair = np.sum(np.log(np.abs(old - others))) - np.sum(np.log(np.abs(new - others)))
    return float(d_pair + potential(abs(new)) - potential(abs(old)))


def _sweep(z, beta, potential, step, rng):
    accepted = 0
    n = z.size
    kicks = step * (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
    uniforms = rng.random(n)
    for k, i in enumerate(rng.permutation(n)):
        new = z[i] + kicks[k]
        d_u = _delta_energy(z, i, new, potential)
        if not np.isfinite(d_u):
            continue
        if d_u <= 0 or uniforms[k] < math.exp(-beta * d_u):
            z[i] = new
            accepted += 1
    return accepted / n


def metropolis_coulomb(beta, N, potential, n_steps, seed, burn_in=None, record_every=1,
                       step_scale=None, min_burn_in=200):
    """
    Run a single-particle Metropolis chain.

    Args:
        beta (float): inverse temperature
        N (int): number of particles
        potential (RadialPotential or str): confining potential
        n_steps (int): production sweeps (N proposals each)
        seed (int or np.random.Generator): seed or keyed generator
        burn_in (int): tuning sweeps, default max(n_steps // 4, min_burn_in)
        record_every (int): keep a snapshot every this many sweeps

    Returns:
        CoulombChain: final state with snapshots of the production run
    """
    if beta <= 0:
        raise InputError(f'beta must be positive, got {beta}')
    if N < 1 or n_steps < 1:
        raise InputError(f'need N >= 1 and n_steps >= 1, got N={N}, n_steps={n_steps}')
    if isinstance(potential, str):
        potential = named_potential(potential, N)
    rng = as_generator(seed, STREAM_CHAIN)
    if burn_in is None:
        burn_in = max(n_steps // 4, min_burn_in)
    radius = potential.init_radius
    z = radius * np.sqrt(rng.random(N)) * np.exp(2j * math.pi * rng.random(N))
    if step_scale is None:
        step_scale = radius / math.sqrt(N) if N > 1 else 1.0

    window = []
    for sweep in range(burn_in):
        window.append(_sweep(z, beta, potential, step_scale, rng))
        if len(window) == TUNE_EVERY:
            rate = float(np.mean(window))
            if rate < TARGET_ACCEPT[0]:
                step_scale *= 0.7
            elif rate > TARGET_ACCEPT[1]:
                step_scale *= 1.3
            window = []
    logger.debug(f'coulomb chain N={N} beta={beta}: burn-in {burn_in} sweeps, step {step_scale:.4g}')

    snaps = []
    rates = []
    for sweep in range(n_steps):
        rates.append(_sweep(z, beta, potential, step_scale, rng))
        if sweep % record_every == 0:
            snaps.append(z.copy())
    accept = float(np.mean(rates))
    equilibrated = burn_in >= min_burn_in and TARGET_ACCEPT[0] / 2 <= accept <= 0.9
    if not equilibrated:
        logger.warning(f'coulomb chain may be unequilibrated: burn_in={burn_in}, accept={accept:.3f}')
    return CoulombChain(beta=beta, N=N, potential=potential, positions=z,
                        step_scale=step_scale, accept_rate=accept,
                        equilibrated=equilibrated, burn_in=burn_in,
                        snapshots=np.array(snaps))
