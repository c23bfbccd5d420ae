from dataclasses import dataclass

from ginlab.engine.basic_engine import BasicEngine
from ginlab.ensembles.coulomb import metropolis_coulomb
from ginlab.ensembles.coulomb import named_potential
from ginlab.linstats.test_function import power
from ginlab.sumrules.coulomb import moment_identity_residual
from ginlab.sumrules.coulomb import ward_residual
from ginlab.sumrules.residual import residual_table
from ginlab.utils.lab_logger import logger

WARD_POWERS = (1, 2)


@dataclass
class MCEngine(BasicEngine):
    """
    Metropolis sampling of the two-dimensional plasma at general β, checked
    against the Ward identity for ψ = z, z² and, for the Gaussian potential,
    against the second moment identity.
    """

    def run(self, **kwargs):
        cfg = self.cfg
        potential = named_potential(cfg.ensemble, cfg.N, charge=cfg.alpha or 0.0)
        chain = metropolis_coulomb(cfg.beta, cfg.N, potential, cfg.steps, cfg.seed,
                                   record_every=cfg.record_every)
        logger.info(f'chain beta={cfg.beta} N={cfg.N}: acceptance {chain.accept_rate:.3f}, '
                    f'{len(chain.snapshots)} snapshots')
        residuals = [ward_residual(chain, power(k)) for k in WARD_POWERS]
        if potential.name == 'ginue':
            residuals.append(moment_identity_residual(cfg.beta, cfg.N, chain))
        return residual_table(residuals, meta=self.table_meta(beta=cfg.beta, N=cfg.N,
                                                              potential=potential.name,
                                                              accept_rate=chain.accept_rate,
                                                              burn_in=chain.burn_in))
