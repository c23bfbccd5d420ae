import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ginlab.configs import set_config
from ginlab.configs.run_config import RunConfig
from ginlab.engine.basic_engine import BasicEngine
from ginlab.engine.counting_engine import CountingEngine
from ginlab.engine.counting_engine import SpacingEngine
from ginlab.engine.detstats_engine import DetstatsEngine
from ginlab.engine.kernel_engine import KernelEngine
from ginlab.engine.linstats_engine import LinstatsEngine
from ginlab.engine.mc_engine import MCEngine
from ginlab.engine.overlaps_engine import OverlapsEngine
from ginlab.engine.sample_engine import SampleEngine
from ginlab.engine.sumrules_engine import SumrulesEngine
from ginlab.engine.thermo_engine import ThermoEngine
from ginlab.errors import InputError
from ginlab.specfun.gamma import reg_gamma_lower


def make_cfg(subcommand, **kwargs):
    cfg = RunConfig(subcommand=subcommand, threads=1, **kwargs)
    cfg.validate()
    return cfg


def test_engine_uses_global_config():
    cfg = set_config('spacing')
    cfg.mean = True
    engine = SpacingEngine()
    assert engine.cfg is cfg
    with pytest.raises(NotImplementedError):
        BasicEngine(cfg).run()


def test_spacing_mean():
    table = SpacingEngine(make_cfg('spacing', mean=True)).run()
    assert table.column('quantity') == ['mean']
    assert abs(table.column('value')[0] - 1.142929) < 1e-4


def test_spacing_grid_and_moments():
    table = SpacingEngine(make_cfg('spacing', grid_size=5, orders='1')).run()
    records = table.as_records()
    survival = [r['value'] for r in records if r['quantity'] == 'survival']
    assert survival[0] == 1.0
    assert all(b <= a for a, b in zip(survival, survival[1:]))
    moment = [r['value'] for r in records if r['quantity'] == 'moment 1']
    assert abs(moment[0] - 1.142929) < 1e-4


def test_counting_cumulants():
    table = CountingEngine(make_cfg('counting', N=50, radius=3.0, cumulants=4)).run()
    records = table.as_records()
    cumulants = [r['value'] for r in records if r['quantity'] == 'cumulant']
    assert len(cumulants) == 4
    expected_mean = sum(reg_gamma_lower(j, 9.0) for j in range(1, 51))
    assert_allclose(cumulants[0], expected_mean, rtol=1e-12)
    assert_allclose(table.meta['mean'], expected_mean, rtol=1e-12)
    assert 0.0 < table.meta['hole_probability'] < 1.0


def test_counting_infinite_limit_and_missing_radius():
    table = CountingEngine(make_cfg('counting', radius=2.0, statistic='infinite')).run()
    assert table.meta['N'] is None
    assert_allclose(table.meta['mean'], 4.0, rtol=1e-10)
    assert_allclose(table.meta['variance_large_R'], table.meta['variance'], rtol=1e-8)
    with pytest.raises(InputError):
        CountingEngine(make_cfg('counting', N=20)).run()


def test_density_tabulation():
    table = KernelEngine(make_cfg('density', N=10, grid_size=4)).run()
    assert len(table.rows) == 16
    assert_allclose(table.column('value_re')[0], 1.0 / math.pi, rtol=1e-12)
    assert table.meta['what'] == 'density'


def test_limit_kernel_tabulation():
    table = KernelEngine(make_cfg('kernel', regime='bulk', grid_size=3, radius=1.0)).run()
    # the first grid point is the origin, paired with itself
    assert_allclose(table.column('value_re')[0], 1.0 / math.pi, rtol=1e-12)
    with pytest.raises(InputError):
        KernelEngine(make_cfg('kernel', regime='nowhere')).run()


def test_sample_is_reproducible():
    cfg = make_cfg('sample', N=5, replicas=3, seed=11)
    a = SampleEngine(cfg).run()
    b = SampleEngine(cfg).run()
    assert len(a.rows) == 15
    assert a.rows == b.rows
    trace = sum(complex(re, im) for re, im in zip(a.column('re')[:5], a.column('im')[:5]))
    assert np.isfinite(abs(trace))


def test_sample_kostlan_draws():
    table = SampleEngine(make_cfg('sample', N=4, replicas=2, seed=3, statistic='kostlan')).run()
    assert len(table.rows) == 8
    assert all(v > 0 for v in table.column('modulus_squared'))


def test_linstats_limit():
    table = LinstatsEngine(make_cfg('linstats', N=40, statistic='modulus_squared')).run()
    values = dict(zip(table.column('quantity'), table.column('value_re')))
    assert_allclose(values['variance'], 0.5, atol=1e-10)
    assert_allclose(values['mean'], 20.0, rtol=1e-10)
    with pytest.raises(InputError):
        LinstatsEngine(make_cfg('linstats', statistic='power')).run()
    with pytest.raises(InputError):
        LinstatsEngine(make_cfg('linstats', statistic='cosine')).run()


def test_linstats_sampled():
    cfg = make_cfg('linstats', N=30, replicas=400, seed=5, statistic='modulus_squared_mc')
    table = LinstatsEngine(cfg).run()
    records = {r['quantity']: r for r in table.as_records()}
    assert records['exact variance']['value_re'] == pytest.approx(0.5, abs=1e-8)
    assert abs(records['variance']['value_re'] - 0.5) < 4.0 * records['variance']['err_est'] + 0.05


def test_sumrules_moments():
    table = SumrulesEngine(make_cfg('sumrules')).run()
    assert table.column('name') == ['stillinger-lovett', 'moment 4', 'moment 6']
    assert all(table.column('passed'))
    assert_allclose(table.column('target')[0], -1.0 / math.pi)


def test_sumrules_reject_general_beta():
    with pytest.raises(InputError):
        SumrulesEngine(make_cfg('sumrules', beta=4.0)).run()
    table = SumrulesEngine(make_cfg('sumrules', beta=4.0, beta2=True, statistic='sa3')).run()
    assert table.column('passed') == [True]
    with pytest.raises(InputError):
        SumrulesEngine(make_cfg('sumrules', statistic='virial')).run()


def test_thermo_euler_index():
    table = ThermoEngine(make_cfg('thermo')).run()
    assert abs(table.meta['chi_hat'] - 1.0) < 0.1
    assert table.column('N') == [20, 40, 80, 160, 320]
    annulus = ThermoEngine(make_cfg('thermo', statistic='annulus', alpha=1.0)).run()
    assert abs(annulus.meta['chi_hat']) < 0.1


def test_thermo_free_energy_decay():
    table = ThermoEngine(make_cfg('thermo', statistic='sphere_free_energy')).run()
    assert abs(table.meta['decay_exponent'] + 4.0) < 0.3
    with pytest.raises(InputError):
        ThermoEngine(make_cfg('thermo', statistic='torus_free_energy')).run()


def test_detstats_exact_quantities():
    table = DetstatsEngine(make_cfg('detstats', N=5, orders='2')).run()
    assert_allclose(table.column('value')[0], 120.0, rtol=1e-12)
    dsff_table = DetstatsEngine(make_cfg('detstats', N=40, statistic='dsff', t=0.0)).run()
    assert dsff_table.column('value')[0] == pytest.approx(0.0, abs=1e-12)
    trace = DetstatsEngine(make_cfg('detstats', N=20, statistic='trace', k=2)).run()
    assert trace.column('value')[0] == 800.0
    mp = DetstatsEngine(make_cfg('detstats', statistic='marchenko_pastur', orders='0,1,2,3')).run()
    assert_allclose(mp.column('value'), mp.column('reference'), rtol=1e-10)


def test_detstats_requires_parameters():
    with pytest.raises(InputError):
        DetstatsEngine(make_cfg('detstats', statistic='lindblad')).run()
    with pytest.raises(InputError):
        DetstatsEngine(make_cfg('detstats', statistic='times')).run()
    with pytest.raises(InputError):
        make_cfg('detstats', statistic='trace_mc', k=2)


def test_detstats_sampled_trace():
    cfg = make_cfg('detstats', N=20, k=2, replicas=2000, seed=12, statistic='trace_mc')
    row = DetstatsEngine(cfg).run().as_records()[0]
    assert abs(row['value'] - row['reference']) < 4.0 * row['err_est']


def test_overlaps_at_origin():
    cfg = make_cfg('overlaps', N=10, replicas=200, seed=4)
    table = OverlapsEngine(cfg).run()
    assert len(table.rows) == 200
    assert all(v >= 1.0 for v in table.column('O_11'))
    assert 0.0 <= table.meta['ks_origin_pvalue'] <= 1.0
    with pytest.raises(InputError):
        OverlapsEngine(make_cfg('overlaps', seed=4, statistic='offdiag', w='0.1')).run()


def test_overlap_records():
    table = OverlapsEngine(make_cfg('overlaps', N=6, replicas=3, seed=8, statistic='records')).run()
    assert len(table.rows) == 18


def test_mc_identities():
    cfg = make_cfg('mc', N=6, beta=2.0, steps=400, seed=9)
    table = MCEngine(cfg).run()
    assert table.column('name') == ['ward z^1', 'ward z^2', 'second moment']
    assert table.column('target')[2] == pytest.approx(2.0 * 6 / 2.0 + 15.0)
    assert table.meta['potential'] == 'ginue'
