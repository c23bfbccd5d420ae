from dataclasses import dataclass

from ginlab.engine.basic_engine import BasicEngine
from ginlab.errors import InputError
from ginlab.linstats.clt import clt_harness
from ginlab.linstats.covariance import cov_smooth
from ginlab.linstats.covariance import cov_thinned
from ginlab.linstats.covariance import global_mean
from ginlab.linstats.test_function import gaussian_bump
from ginlab.linstats.test_function import modulus_squared
from ginlab.linstats.test_function import power
from ginlab.linstats.test_function import real_part
from ginlab.linstats.test_function import smoothed_indicator
from ginlab.utils.tables import ResultTable

FUNCTIONS = ('modulus_squared', 'real_part', 'power', 'gaussian_bump', 'smoothed_indicator')
MC_SUFFIX = '_mc'


@dataclass
class LinstatsEngine(BasicEngine):
    """
    Linear statistics Σ f(z_j) of the global scaled GinUE: the limiting
    covariance and mean, or with an ``_mc`` suffix the sampled CLT check.
    """
    default_statistic = 'modulus_squared'

    def test_function(self, name):
        cfg = self.cfg
        if name == 'modulus_squared':
            return modulus_squared()
        if name == 'real_part':
            return real_part()
        if name == 'power':
            return power(self.require('k'))
        if name == 'gaussian_bump':
            return gaussian_bump(cfg.radius if cfg.radius is not None else 1.0)
        if name == 'smoothed_indicator':
            return smoothed_indicator(self.require('radius'),
                                      cfg.halfwidth if cfg.halfwidth is not None else 0.1)
        raise InputError(f'Unknown test function: {name}; choose from {", ".join(FUNCTIONS)}')

    def run(self, **kwargs):
        name = self.statistic
        sampled = name.endswith(MC_SUFFIX)
        if sampled:
            name = name[:-len(MC_SUFFIX)]
        f = self.test_function(name)
        if sampled:
            return self._sampled(f)
        return self._limit(f)

    def _limit(self, f):
        cfg = self.cfg
        table = ResultTable(['function', 'quantity', 'value_re', 'value_im', 'err_est'],
                            meta=self.table_meta(N=cfg.N, zeta=cfg.zeta))
        cov = cov_smooth(f, f)
        value = complex(cov.value)
        table.add_row(f.name, 'variance', value.real, value.imag, cov.abs_err_est)
        mean = complex(global_mean(f, cfg.N))
        table.add_row(f.name, 'mean', mean.real, mean.imag, 0.0)
        if cfg.zeta is not None:
            thinned = complex(cov_thinned(f, f, cfg.N, cfg.zeta))
            table.add_row(f.name, 'thinned variance', thinned.real, thinned.imag, 0.0)
        return table

    def _sampled(self, f):
        cfg = self.cfg
        spec = cfg.ensemble_spec()
        summary = clt_harness(spec, f, cfg.replicas, cfg.seed, zeta=cfg.zeta, threads=cfg.threads)
        table = ResultTable(['function', 'quantity', 'value_re', 'value_im', 'err_est'],
                            meta=self.table_meta(N=spec.N, zeta=cfg.zeta, replicas=summary.replicas))
        table.add_row(f.name, 'mean', summary.mean.real, summary.mean.imag, 0.0)
        table.add_row(f.name, 'variance', summary.variance, 0.0, summary.variance_err)
        table.add_row(f.name, 'ks_distance', summary.ks_distance, 0.0, 0.0)
        if summary.exact_variance is not None:
            table.add_row(f.name, 'exact variance', summary.exact_variance, 0.0, 0.0)
        return table
