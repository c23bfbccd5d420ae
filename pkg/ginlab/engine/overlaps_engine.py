from dataclasses import dataclass

from scipy import stats

from ginlab.engine.basic_engine import BasicEngine
from ginlab.ensembles.overlap_sampler import default_bin_halfwidth
from ginlab.overlaps.limits import limit_overlap_cdf
from ginlab.overlaps.limits import origin_overlap_cdf
from ginlab.overlaps.limits import overlap_products_mean
from ginlab.overlaps.matrix import bin_sensitivity
from ginlab.overlaps.matrix import conditioned_overlaps
from ginlab.overlaps.matrix import global_overlap_samples
from ginlab.overlaps.matrix import offdiag_overlap_mc
from ginlab.overlaps.matrix import overlap_records
from ginlab.overlaps.matrix import product_overlap_density_mc
from ginlab.utils.tables import ResultTable

STATISTICS = ('diagonal', 'bins', 'records', 'offdiag', 'products')
BIN_FACTORS = (0.5, 1.0, 2.0)


@dataclass
class OverlapsEngine(BasicEngine):
    """Eigenvector overlaps of the global scaled GinUE, sampled."""
    default_statistic = 'diagonal'

    def run(self, **kwargs):
        cfg = self.cfg
        name = self.statistic
        if name == 'diagonal':
            return self._diagonal()
        if name == 'bins':
            w = self.complex_arg('w', 0.0)
            widths = self.float_list('orders', default=[f * default_bin_halfwidth(cfg.N) for f in BIN_FACTORS])
            table = bin_sensitivity(cfg.N, w, cfg.replicas, cfg.seed, widths, method=cfg.method,
                                    threads=cfg.threads)
            table.meta.update(self.table_meta(N=cfg.N, w=w))
            return table
        if name == 'records':
            table = overlap_records(global_overlap_samples(cfg.N, cfg.replicas, cfg.seed, cfg.threads))
            table.meta.update(self.table_meta(N=cfg.N))
            return table
        if name == 'offdiag':
            return self._offdiag()
        if name == 'products':
            return self._products()
        raise self.unknown_statistic(STATISTICS)

    def _diagonal(self):
        cfg = self.cfg
        w = self.complex_arg('w', 0.0)
        o11 = conditioned_overlaps(cfg.N, w, cfg.replicas, cfg.seed, halfwidth=cfg.halfwidth,
                                   method=cfg.method, threads=cfg.threads)
        scale = cfg.N * (1.0 - abs(w) ** 2)
        meta = self.table_meta(N=cfg.N, w=w, method=cfg.method,
                               ks_limit=float(stats.kstest(o11 / scale, limit_overlap_cdf).statistic))
        if w == 0:
            meta['ks_origin_pvalue'] = float(stats.kstest(o11, lambda t: origin_overlap_cdf(t, cfg.N)).pvalue)
        table = ResultTable(['replica', 'O_11', 'scaled'], meta=meta)
        for replica, val in enumerate(o11):
            table.add_row(replica, float(val), float(val / scale))
        return table

    def _offdiag(self):
        cfg = self.cfg
        w1, w2 = self.require('w', 'w2')
        mean, sem, pairs, predicted = offdiag_overlap_mc(cfg.N, self.complex_arg('w'), self.complex_arg('w2'),
                                                         cfg.replicas, cfg.seed, halfwidth=cfg.halfwidth,
                                                         threads=cfg.threads)
        table = ResultTable(['quantity', 'value_re', 'value_im', 'err_est', 'pairs'],
                            meta=self.table_meta(N=cfg.N, w1=w1, w2=w2))
        table.add_row('O_12 sampled', mean.real, mean.imag, sem, pairs)
        table.add_row('O_12 predicted', predicted.real, predicted.imag, 0.0, pairs)
        return table

    def _products(self):
        cfg = self.cfg
        r, M = self.require('radius', 'M')
        halfwidth = cfg.halfwidth if cfg.halfwidth is not None else 0.05
        mean, sem = product_overlap_density_mc(r, M, cfg.N, cfg.replicas, cfg.seed,
                                               halfwidth=halfwidth, threads=cfg.threads)
        table = ResultTable(['radius', 'M', 'sampled', 'err_est', 'limit'],
                            meta=self.table_meta(N=cfg.N, halfwidth=halfwidth))
        table.add_row(r, M, mean, sem, overlap_products_mean(r, M))
        return table
