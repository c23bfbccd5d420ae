from dataclasses import dataclass

import numpy as np

from ginlab.detstats.chaos import dsff
from ginlab.detstats.chaos import dsff_limit
from ginlab.detstats.chaos import dsff_mc
from ginlab.detstats.chaos import lindblad_limit
from ginlab.detstats.chaos import lindblad_mc
from ginlab.detstats.chaos import tr_moment
from ginlab.detstats.chaos import tr_moment_limit
from ginlab.detstats.chaos import tr_moment_mc
from ginlab.detstats.chaos import tr_moment_scaled
from ginlab.detstats.determinant import det_asymptotic_moment
from ginlab.detstats.determinant import det_global_moment
from ginlab.detstats.determinant import det_moment_table
from ginlab.detstats.determinant import det_mod2_moment
from ginlab.detstats.determinant import log_det_mean
from ginlab.detstats.determinant import log_det_variance
from ginlab.detstats.singular import catalan
from ginlab.detstats.singular import condition_number_sample
from ginlab.detstats.singular import marchenko_pastur_moment
from ginlab.detstats.singular import qr_diag_law
from ginlab.detstats.singular import qr_diag_sample
from ginlab.detstats.singular import singular_moment_mc
from ginlab.engine.basic_engine import BasicEngine
from ginlab.overlaps.limits import condition_number_cdf
from ginlab.utils.tables import ResultTable

STATISTICS = ('moments', 'moments_mc', 'global', 'dsff', 'dsff_mc', 'trace', 'trace_mc',
              'lindblad', 'lindblad_mc', 'marchenko_pastur', 'singular_mc', 'qr_mc', 'condition_mc')
COLUMNS = ['quantity', 'parameter', 'value', 'err_est', 'reference']


@dataclass
class DetstatsEngine(BasicEngine):
    """
    Determinants, singular values and the dissipative chaos statistics of
    GinUE. Names ending in ``_mc`` sample and need ``--seed``.
    """
    default_statistic = 'moments'

    def run(self, **kwargs):
        handler = getattr(self, f'_{self.statistic}', None)
        if self.statistic not in STATISTICS or handler is None:
            raise self.unknown_statistic(STATISTICS)
        table = handler()
        table.meta.update(self.table_meta(N=self.cfg.N))
        return table

    def _moments(self):
        N = self.cfg.N
        table = ResultTable(COLUMNS)
        for s in self.float_list('orders', default=(2.0, 3.0)):
            table.add_row('E|det|^(2(s-1))', s, det_mod2_moment(s, N), 0.0, None)
        table.add_row('E log|det|^2', None, log_det_mean(N), 0.0, None)
        table.add_row('Var log|det|^2', None, log_det_variance(N), 0.0, None)
        return table

    def _moments_mc(self):
        cfg = self.cfg
        moments = det_moment_table(cfg.N, self.float_list('orders', default=(2.0, 3.0)),
                                   cfg.replicas, cfg.seed)
        table = moments.to_table()
        table.meta['max_abs_z'] = float(np.max(np.abs(moments.z_scores())))
        return table

    def _global(self):
        N = self.cfg.N
        table = ResultTable(COLUMNS)
        gamma = self.require('gamma')
        table.add_row('E|det X/sqrt(N)|^gamma', gamma, det_global_moment(gamma, N), 0.0,
                      det_asymptotic_moment(gamma, N))
        return table

    def _times(self):
        return self.require('t'), self.cfg.s if self.cfg.s is not None else 0.0

    def _dsff(self):
        t, s = self._times()
        table = ResultTable(COLUMNS)
        table.add_row('dsff', f'{t},{s}', dsff(t, s, self.cfg.N), 0.0, dsff_limit(t, s))
        return table

    def _dsff_mc(self):
        cfg = self.cfg
        t, s = self._times()
        value, err = dsff_mc(t, s, cfg.N, cfg.replicas, cfg.seed, threads=cfg.threads)
        table = ResultTable(COLUMNS)
        table.add_row('dsff', f'{t},{s}', value, err, dsff(t, s, cfg.N))
        return table

    def _trace(self):
        N = self.cfg.N
        k = self.require('k')
        table = ResultTable(COLUMNS)
        table.add_row('E|Tr X^k|^2', k, tr_moment(k, N), 0.0, None)
        table.add_row('E|Tr X^k|^2/(k N^k)', k, tr_moment_scaled(k, N), 0.0,
                      tr_moment_limit(k / np.sqrt(N)))
        return table

    def _trace_mc(self):
        cfg = self.cfg
        k = self.require('k')
        mean, sem = tr_moment_mc(k, cfg.N, cfg.replicas, cfg.seed, threads=cfg.threads)
        table = ResultTable(COLUMNS)
        table.add_row('E|Tr X^k|^2', k, mean, sem, tr_moment(k, cfg.N))
        return table

    def _lindblad(self):
        t = self.require('t')
        table = ResultTable(COLUMNS)
        table.add_row('lindblad trace', t, lindblad_limit(t), 0.0, None)
        return table

    def _lindblad_mc(self):
        cfg = self.cfg
        t = self.require('t')
        mean, sem = lindblad_mc(t, cfg.N, cfg.replicas, cfg.seed, threads=cfg.threads)
        table = ResultTable(COLUMNS)
        table.add_row('lindblad trace', t, mean, sem, lindblad_limit(t))
        return table

    def _marchenko_pastur(self):
        table = ResultTable(COLUMNS)
        for k in self.int_list('orders', default=range(5)):
            table.add_row('marchenko-pastur moment', k, marchenko_pastur_moment(k), 0.0, catalan(k))
        return table

    def _singular_mc(self):
        cfg = self.cfg
        table = ResultTable(COLUMNS)
        for k in self.int_list('orders', default=(1, 2, 3)):
            mean, sem = singular_moment_mc(k, cfg.N, cfg.replicas, cfg.seed, threads=cfg.threads)
            table.add_row('singular moment', k, mean, sem, catalan(k))
        return table

    def _qr_mc(self):
        cfg = self.cfg
        r2 = qr_diag_sample(cfg.N, cfg.replicas, cfg.seed, threads=cfg.threads)
        table = ResultTable(COLUMNS)
        sem = r2.std(axis=0, ddof=1) / np.sqrt(r2.shape[0])
        for j, law in enumerate(qr_diag_law(cfg.N)):
            table.add_row('mean r_jj^2', j + 1, float(r2[:, j].mean()), float(sem[j]), float(law.mean()))
        return table

    def _condition_mc(self):
        cfg = self.cfg
        kappa = np.sort(condition_number_sample(cfg.N, cfg.replicas, cfg.seed, threads=cfg.threads))
        table = ResultTable(COLUMNS)
        empirical = np.arange(1, kappa.size + 1) / kappa.size
        for x, p in zip(kappa, empirical):
            table.add_row('condition number cdf', float(x), float(p), 0.0, float(condition_number_cdf(x)))
        return table
