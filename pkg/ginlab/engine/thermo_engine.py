from dataclasses import dataclass

from ginlab.engine.basic_engine import BasicEngine
from ginlab.thermo.free_energy import decay_exponent
from ginlab.thermo.free_energy import expansion_residuals
from ginlab.thermo.free_energy import free_energy_disk_beta2
from ginlab.thermo.free_energy import free_energy_disk_expansion
from ginlab.thermo.free_energy import free_energy_sphere_beta2
from ginlab.thermo.free_energy import free_energy_sphere_expansion
from ginlab.thermo.radial import annulus_potential
from ginlab.thermo.radial import disk_potential
from ginlab.thermo.radial import expansion_check_zn2q
from ginlab.thermo.radial import log_partition_annulus
from ginlab.thermo.radial import log_partition_disk
from ginlab.utils.tables import ResultTable

PARTITION_GRID = (20, 40, 80, 160, 320)
FREE_ENERGY_GRID = (8, 10, 12, 16, 20, 24)
STATISTICS = ('disk', 'annulus', 'disk_quadrature', 'annulus_quadrature',
              'disk_free_energy', 'sphere_free_energy')


@dataclass
class ThermoEngine(BasicEngine):
    """
    β = 2 partition functions against their large-N expansions.

    ``disk`` and ``annulus`` fit the Euler index from log Z_N, exactly or by
    the radial quadratures (``_quadrature``); ``*_free_energy`` report the
    exact free energy minus its expansion and the decay exponent.
    """
    default_statistic = 'disk'

    def run(self, **kwargs):
        name = self.statistic
        if name.endswith('_free_energy'):
            return self._free_energy(name[:-len('_free_energy')])
        quadrature = name.endswith('_quadrature')
        base = name[:-len('_quadrature')] if quadrature else name
        grid = self.int_list('N_grid', default=PARTITION_GRID)
        if base == 'disk':
            potential, exact = disk_potential(), log_partition_disk
        elif base == 'annulus':
            alpha = self.cfg.alpha if self.cfg.alpha is not None else 1.0
            potential = annulus_potential(alpha)

            def exact(N):
                return log_partition_annulus(alpha, N)
        else:
            raise self.unknown_statistic(STATISTICS)
        report = expansion_check_zn2q(potential, grid, exact=None if quadrature else exact,
                                      threads=self.cfg.threads)
        table = report.to_table()
        table.meta.update(self.table_meta(method='quadrature' if quadrature else 'exact'))
        return table

    def _free_energy(self, surface):
        if surface == 'disk':
            exact, expansion = free_energy_disk_beta2, free_energy_disk_expansion
        elif surface == 'sphere':
            exact, expansion = free_energy_sphere_beta2, free_energy_sphere_expansion
        else:
            raise self.unknown_statistic(STATISTICS)
        grid = self.int_list('N_grid', default=FREE_ENERGY_GRID)
        residuals = expansion_residuals(exact, expansion, grid)
        table = ResultTable(['surface', 'N', 'exact', 'expansion', 'residual'],
                            meta=self.table_meta(decay_exponent=decay_exponent(grid, residuals)))
        for N, res in zip(grid, residuals):
            table.add_row(surface, N, exact(N), expansion(N), float(res))
        return table
