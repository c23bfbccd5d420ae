from dataclasses import dataclass

from ginlab.configs.run_config import parse_float_list
from ginlab.engine.basic_engine import BasicEngine
from ginlab.ensembles.spec import Scaling
from ginlab.errors import InputError
from ginlab.kernels.kpoint import tabulate_polar
from ginlab.kernels.limits import LimitRegime
from ginlab.kernels.limits import Regime

# tabulation reaches this far past the droplet edge by default
EDGE_MARGIN = 1.2
LIMIT_REACH = 4.0


@dataclass
class KernelEngine(BasicEngine):
    """
    Correlation kernel (``kernel``) or one-point density (``density``) on a
    polar grid, for a finite ensemble or, with ``--regime``, a limiting kernel.
    """

    def _target(self):
        cfg = self.cfg
        if cfg.regime is None:
            spec = cfg.ensemble_spec()
            if spec.scaling is Scaling.global_:
                return spec, EDGE_MARGIN
            if spec.scaling is Scaling.edge:
                return spec, LIMIT_REACH
            reach = EDGE_MARGIN * spec.global_scale
            if spec.support_radius() is not None:
                reach = spec.support_radius()
            return spec, reach
        try:
            kind = Regime(cfg.regime)
        except ValueError:
            raise InputError(f'Unknown regime: {cfg.regime}; '
                             f'choose from {", ".join(r.value for r in Regime)}')
        params = dict(kind=kind)
        if cfg.alpha is not None:
            params['alpha'] = cfg.alpha
        if cfg.n is not None:
            params['n'] = cfg.n
        if cfg.nu:
            params['nu'] = parse_float_list(cfg.nu)
        if cfg.k is not None:
            params['r'] = cfg.k
        w = self.complex_arg('w')
        if w is not None:
            params['phase'] = w
        return LimitRegime(**params), LIMIT_REACH

    def run(self, **kwargs):
        target, reach = self._target()
        r_max = self.cfg.radius if self.cfg.radius is not None else reach
        what = 'kernel' if self.cfg.subcommand == 'kernel' else 'density'
        table = tabulate_polar(target, r_max, n_r=self.cfg.grid_size, n_theta=self.cfg.grid_size,
                               r_min=self.cfg.radius_inner, what=what)
        table.meta.update(self.table_meta(r_max=r_max))
        return table
