from dataclasses import dataclass

from ginlab.engine.basic_engine import BasicEngine
from ginlab.ensembles.eig import sample_spectrum
from ginlab.ensembles.kostlan import kostlan_for_spec
from ginlab.ensembles.thinning import thin_spectrum
from ginlab.runner.replica_runner import ReplicaRunner
from ginlab.utils.lab_logger import logger
from ginlab.utils.rng import STREAM_RADIAL
from ginlab.utils.rng import STREAM_THINNING
from ginlab.utils.rng import replica_rng
from ginlab.utils.tables import ResultTable

STATISTICS = ('eigenvalues', 'kostlan')


@dataclass
class SampleEngine(BasicEngine):
    """
    Eigenvalue samples, one row per eigenvalue. ``kostlan`` draws the
    squared moduli of a rotation invariant ensemble instead, as independent
    one-dimensional variables.
    """
    default_statistic = 'eigenvalues'

    def run(self, **kwargs):
        cfg = self.cfg
        spec = cfg.ensemble_spec()
        seed = cfg.seed
        if self.statistic == 'eigenvalues':
            return self._eigenvalues(spec, seed)
        if self.statistic == 'kostlan':
            return self._kostlan(spec, seed)
        raise self.unknown_statistic(STATISTICS)

    def _eigenvalues(self, spec, seed):
        zeta = self.cfg.zeta
        scaling = self.cfg.scaling

        def one(replica):
            z = sample_spectrum(spec, seed, replica).scaled(scaling)
            if zeta is not None:
                z = thin_spectrum(z, zeta, replica_rng(seed, replica, STREAM_THINNING))
            return z

        spectra = ReplicaRunner(threads=self.cfg.threads, desc='spectra')(one, self.cfg.replicas)
        table = ResultTable(['replica', 'index', 're', 'im'],
                            meta=self.table_meta(ensemble=spec.kind.value, N=spec.N,
                                                 scaling=spec.scaling.value, zeta=zeta))
        for replica, z in enumerate(spectra):
            for j, val in enumerate(z):
                table.add_row(replica, j, float(val.real), float(val.imag))
        logger.info(f'sampled {len(spectra)} spectra of {spec.kind.value} N={spec.N}')
        return table

    def _kostlan(self, spec, seed):
        def one(replica):
            return kostlan_for_spec(spec, replica_rng(seed, replica, STREAM_RADIAL))

        draws = ReplicaRunner(threads=self.cfg.threads, desc='radial draws')(one, self.cfg.replicas)
        table = ResultTable(['replica', 'index', 'modulus_squared'],
                            meta=self.table_meta(ensemble=spec.kind.value, N=spec.N))
        for replica, r2 in enumerate(draws):
            for j, val in enumerate(r2):
                table.add_row(replica, j, float(val))
        return table
