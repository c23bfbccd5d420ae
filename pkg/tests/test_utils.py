import json
import math

import numpy as np
import pytest
import yaml
from numpy.testing import assert_allclose

from ginlab.configs.command_line import cfg_from_cmd
from ginlab.configs.run_config import RunConfig
from ginlab.configs.run_config import parse_complex
from ginlab.configs.run_config import parse_int_list
from ginlab.errors import InputError
from ginlab.errors import NumericError
from ginlab.runner.replica_runner import ReplicaRunner
from ginlab.runner.replica_runner import resolve_threads
from ginlab.utils.common import config_hash
from ginlab.utils.common import load_from_json
from ginlab.utils.common import save_to_json
from ginlab.utils.common import to_builtin
from ginlab.utils.grid import get_grid_combo
from ginlab.utils.lab_logger import logger
from ginlab.utils.quadrature import adaptive_quad
from ginlab.utils.quadrature import polar_rule
from ginlab.utils.rng import STREAM_RADIAL
from ginlab.utils.rng import replica_rng
from ginlab.utils.stats import blocked_jackknife
from ginlab.utils.stats import mean_and_sem
from ginlab.utils.tables import ResultTable


def _draw(replica):
    return float(replica_rng(7, replica).standard_normal())


def test_replica_streams_are_keyed():
    a = replica_rng(3, 5).random(4)
    assert_allclose(a, replica_rng(3, 5).random(4))
    assert not np.allclose(a, replica_rng(3, 6).random(4))
    assert not np.allclose(a, replica_rng(3, 5, STREAM_RADIAL).random(4))
    with pytest.raises(InputError):
        replica_rng(-1)


def test_runner_order_does_not_depend_on_workers():
    serial = ReplicaRunner(threads=1)(_draw, 8)
    pooled = ReplicaRunner(threads=2)(_draw, 8)
    assert serial == pooled
    with pytest.raises(InputError):
        ReplicaRunner(threads=1)(_draw, 0)


def test_threads_fall_back_to_environment(monkeypatch):
    monkeypatch.setenv('GINUE_LAB_THREADS', '3')
    assert resolve_threads(None) == 3
    assert resolve_threads(2) == 2
    monkeypatch.setenv('GINUE_LAB_THREADS', 'many')
    with pytest.raises(InputError):
        resolve_threads(None)


def test_jackknife_matches_plain_error_for_iid_samples():
    x = replica_rng(1).standard_normal(20000)
    mean, err = blocked_jackknife(x)
    _, sem = mean_and_sem(x)
    assert mean == pytest.approx(x.mean())
    assert_allclose(err, sem, rtol=0.4)
    with pytest.raises(InputError):
        blocked_jackknife(x[:1])


def test_quadrature_rules():
    z, w = polar_rule(1.0, n_radial=16, n_angle=32)
    assert_allclose(np.sum(w), math.pi, rtol=1e-13)
    assert_allclose(np.sum(np.abs(z) ** 2 * w), 0.5 * math.pi, rtol=1e-13)
    val, _ = adaptive_quad(lambda x: math.exp(-x * x), -np.inf, np.inf)
    assert_allclose(val, math.sqrt(math.pi), rtol=1e-12)


def test_quadrature_failure_is_numeric():
    with pytest.raises(NumericError):
        adaptive_quad(lambda x: 1.0 / x, 0.0, 1.0, limit=5)


def test_table_csv_and_json():
    table = ResultTable(['name', 'value', 'ok'], meta=dict(N=4))
    table.add_row('a', 0.1, True)
    table.add_row('b', None, False)
    config = dict(subcommand='x', seed=2)
    csv = table.render('csv', config, 2)
    lines = csv.splitlines()
    assert lines[0].startswith('# ginlab_version: ')
    assert lines[1] == f'# config_hash: {config_hash(config)}'
    assert lines[-2:] == ['a,0.1,true', 'b,,false']
    doc = json.loads(table.render('json', config, 2))
    assert doc['results'][0] == dict(name='a', value=0.1, ok=True)
    assert doc['meta']['N'] == 4
    with pytest.raises(InputError):
        table.add_row('c')
    with pytest.raises(InputError):
        table.render('xml', config, 2)


def test_json_round_trip_of_numpy_values(tmp_path):
    path = tmp_path.joinpath('out').joinpath('data.json')
    save_to_json(dict(x=np.float64(1.5), z=1 + 2j, v=np.arange(3)), path)
    assert load_from_json(path) == dict(x=1.5, z=dict(re=1.0, im=2.0), v=[0, 1, 2])
    assert to_builtin(np.bool_(True)) is True
    assert config_hash(dict(a=1)) != config_hash(dict(a=2))


def test_grid_combinations():
    combos = get_grid_combo(dict(N=[10, 20], beta=2.0, chain=dict(steps=[100, 200])))
    assert len(combos) == 4
    assert combos[0] == {'N': 10, 'beta': 2.0, 'chain/steps': 100}


def test_run_config_validation():
    RunConfig(subcommand='spacing').validate()
    with pytest.raises(InputError):
        RunConfig(subcommand='overlaps').validate()
    with pytest.raises(InputError):
        RunConfig(subcommand='detstats', statistic='dsff_mc').validate()
    with pytest.raises(InputError):
        RunConfig(subcommand='thermo', zeta=1.5).validate()
    with pytest.raises(InputError):
        RunConfig(subcommand='thermo', format='xlsx').validate()
    with pytest.raises(InputError):
        RunConfig(subcommand='walk').validate()
    assert parse_complex('0.2+0.3i') == 0.2 + 0.3j
    assert parse_int_list('1,2') == (1, 2)
    with pytest.raises(InputError):
        parse_int_list('1.5')


def test_flags_and_yaml_defaults(tmp_path):
    config = tmp_path.joinpath('defaults.yml')
    config.write_text(yaml.dump(dict(N=30, beta=4.0)))
    cfg = RunConfig(subcommand='mc')
    _, diff = cfg_from_cmd(cfg, ['--config', config.as_posix(), '--N', '12', '--seed', '5'])
    assert (cfg.N, cfg.beta, cfg.seed) == (12, 4.0, 5)
    assert diff['N'] == 12 and diff['beta'] == 4.0
    bad = tmp_path.joinpath('bad.yml')
    bad.write_text(yaml.dump(dict(temperature=1.0)))
    with pytest.raises(InputError):
        cfg_from_cmd(RunConfig(subcommand='mc'), ['--config', bad.as_posix()])


def test_run_directory_records_config(tmp_path):
    cfg = RunConfig(subcommand='spacing', seed=3, save_dir_root=tmp_path.as_posix())
    cfg.diff_cfg = dict(N=10, seed=3)
    run_dir = cfg.create_run_dir()
    assert run_dir == tmp_path.joinpath('data', 'spacing', 'N_10', 'seed_3')
    stored = load_from_json(run_dir.joinpath('hp.json'))
    assert stored['subcommand'] == 'spacing'
    assert 'git_info' in stored
    assert run_dir.joinpath('run.log').exists()
    fresh = RunConfig(subcommand='spacing', seed=3, save_dir_root=tmp_path.as_posix())
    fresh.N = 99
    fresh.restore_cfg(path=run_dir)
    assert fresh.N == 50


def test_logger_levels():
    logger.set_level('debug')
    assert logger.verbose
    logger.set_level('error')
    assert not logger.verbose
    logger.set_level('info')
    with pytest.raises(InputError):
        logger.set_level('chatty')
