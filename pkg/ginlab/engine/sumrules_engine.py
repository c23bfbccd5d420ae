from dataclasses import dataclass

from ginlab.engine.basic_engine import BasicEngine
from ginlab.errors import InputError
from ginlab.sumrules.bulk import carnie_chan_residual
from ginlab.sumrules.bulk import density_normalisation_residual
from ginlab.sumrules.bulk import higher_moment_residual
from ginlab.sumrules.bulk import screening_residual
from ginlab.sumrules.bulk import small_k_structure_residual
from ginlab.sumrules.bulk import stillinger_lovett_residual
from ginlab.sumrules.bulk import structure_scaling_residual
from ginlab.sumrules.coulomb import moment_identity_residual
from ginlab.sumrules.edge import edge_density_sum_rules
from ginlab.sumrules.edge import edge_dipole_residual
from ginlab.sumrules.edge import mass_one_residual
from ginlab.sumrules.edge import sa3_identity_residual
from ginlab.sumrules.residual import residual_table
from ginlab.utils.lab_logger import logger

SCREENING_ORDERS = (0, 1)
SCREENING_ANCHORS = (1, 2)
SA3_POINTS = (0.0, 0.5, 1.0)
MASS_ONE_POINTS = (-0.5, 0.0, 0.8)


def _screening():
    return [screening_residual(p, k) for p in SCREENING_ORDERS for k in SCREENING_ANCHORS]


def _moments():
    return [stillinger_lovett_residual(), higher_moment_residual(4), higher_moment_residual(6)]


def _structure():
    return [small_k_structure_residual(), structure_scaling_residual()]


def _edge():
    return list(edge_density_sum_rules(2.0)) + [edge_dipole_residual(2.0),
                                               mass_one_residual(MASS_ONE_POINTS)]


GROUPS = {
    'screening': _screening,
    'moments': _moments,
    'carnie_chan': lambda: [carnie_chan_residual(2.0)],
    'structure': _structure,
    'edge': _edge,
    'sa3': lambda: [sa3_identity_residual(SA3_POINTS)],
}


@dataclass
class SumrulesEngine(BasicEngine):
    """
    Quadrature checks of the β = 2 sum rules; ``--all`` runs every group.
    General β identities are sampled by the ``mc`` subcommand.
    """
    default_statistic = 'moments'

    def run(self, **kwargs):
        cfg = self.cfg
        if not cfg.beta2 and cfg.beta != 2.0:
            raise InputError(f'exact sum rules are evaluated at beta = 2 only, got {cfg.beta}; '
                             f'use the mc subcommand for general beta')
        if cfg.all:
            names = list(GROUPS) + ['normalisation', 'second_moment']
        else:
            names = [self.statistic]
        residuals = []
        for name in names:
            residuals.extend(self._group(name))
        failed = [res.name for res in residuals if not res.passed]
        if failed:
            logger.warning(f'sum rules outside tolerance: {", ".join(failed)}')
        else:
            logger.info(f'{len(residuals)} sum rules within tolerance')
        return residual_table(residuals, meta=self.table_meta(beta=2.0))

    def _group(self, name):
        if name in GROUPS:
            return GROUPS[name]()
        if name == 'normalisation':
            return [density_normalisation_residual(self.cfg.ensemble_spec())]
        if name == 'second_moment':
            return [moment_identity_residual(2.0, self.cfg.N)]
        raise self.unknown_statistic(list(GROUPS) + ['normalisation', 'second_moment'])
