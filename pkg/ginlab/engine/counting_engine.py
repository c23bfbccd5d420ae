from dataclasses import dataclass

import numpy as np

from ginlab.counting.asymptotics import variance_infinite_disk
from ginlab.counting.bernoulli import counting_report
from ginlab.counting.bernoulli import local_clt_distance
from ginlab.counting.report import Region
from ginlab.counting.spacing import spacing_mean
from ginlab.counting.spacing import spacing_moment
from ginlab.counting.spacing import spacing_pdf
from ginlab.counting.spacing import spacing_survival
from ginlab.engine.basic_engine import BasicEngine
from ginlab.utils.lab_logger import logger
from ginlab.utils.tables import ResultTable

SPACING_R_MAX = 3.0


@dataclass
class CountingEngine(BasicEngine):
    """
    Counting statistics of a disk or annulus as independent Bernoulli
    variables. ``--statistic infinite`` uses the N → ∞ bulk GinUE limit.
    """
    default_statistic = 'finite'

    def run(self, **kwargs):
        cfg = self.cfg
        radius = self.require('radius')
        region = Region.annulus(cfg.radius_inner, radius)
        orders = tuple(range(1, cfg.cumulants + 1))
        if self.statistic == 'infinite':
            report = counting_report('ginue', None, region, orders=orders)
        elif self.statistic == 'finite':
            spec = cfg.ensemble_spec()
            report = counting_report(spec.kind.value, spec.N, region, orders=orders,
                                     **spec.kostlan_params())
        else:
            raise self.unknown_statistic(('finite', 'infinite'))
        table = report.to_table()
        table.meta.update(self.table_meta(mean=report.mean, variance=report.variance,
                                          hole_probability=report.hole_probability,
                                          overcrowding_probability=report.overcrowding_probability))
        if report.variance > 0:
            table.meta['local_clt_distance'] = local_clt_distance(report.pmf)
        if report.N is None and region.is_disk:
            table.meta['variance_large_R'] = variance_infinite_disk(radius)
        logger.info(f'counting in {region.kind} ({region.r_inner}, {region.r_outer}): '
                    f'mean {report.mean:.6g}, variance {report.variance:.6g}')
        return table


@dataclass
class SpacingEngine(BasicEngine):
    """
    Nearest-neighbour spacing of the bulk scaled GinUE: the mean alone with
    ``--mean``, otherwise the density and survival on a grid plus the moments.
    """

    def run(self, **kwargs):
        cfg = self.cfg
        table = ResultTable(['quantity', 'r', 'value'], meta=self.table_meta())
        if cfg.mean:
            table.add_row('mean', None, spacing_mean())
            return table
        r_max = cfg.radius if cfg.radius is not None else SPACING_R_MAX
        for r in np.linspace(0.0, r_max, cfg.grid_size):
            table.add_row('pdf', float(r), spacing_pdf(r))
            table.add_row('survival', float(r), spacing_survival(r))
        for p in self.float_list('orders', default=(1.0, 2.0)):
            table.add_row(f'moment {p:g}', None, spacing_moment(p))
        return table
