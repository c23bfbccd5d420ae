import json

import pytest
import yaml

from ginlab.cli import run
from ginlab.configs.run_config import RunConfig
from ginlab.engine.counting_engine import SpacingEngine
from ginlab.errors import NumericError


def data_lines(text):
    return [line for line in text.splitlines() if not line.startswith('#')]


def test_spacing_mean_to_stdout(capsys):
    assert run(['spacing', '--mean']) == 0
    out = capsys.readouterr().out
    assert out.startswith('# ginlab_version: ')
    header, row = data_lines(out)
    assert header == 'quantity,r,value'
    assert abs(float(row.split(',')[-1]) - 1.142929) < 1e-4


def test_counting_csv_file(tmp_path):
    out = tmp_path.joinpath('counting.csv')
    code = run(['counting', '--ensemble', 'ginue', '--N', '50', '--radius', '3',
                '--cumulants', '4', '--out', out.as_posix()])
    assert code == 0
    text = out.read_text()
    assert '# config_hash: ' in text
    assert '# seed: None' in text
    rows = data_lines(text)
    assert rows[0] == 'region,r_inner,r_outer,quantity,index,value,err_est'
    assert sum(1 for r in rows if ',cumulant,' in r) == 4


def test_identical_runs_give_identical_files(tmp_path):
    files = []
    for i in range(2):
        out = tmp_path.joinpath(f'sample_{i}.csv')
        assert run(['sample', '--N', '6', '--replicas', '4', '--seed', '21',
                    '--threads', '1', '--out', out.as_posix()]) == 0
        files.append(out.read_bytes())
    assert files[0] == files[1]


def test_hashed_config_skips_plumbing_fields():
    cfg = RunConfig(subcommand='sample', threads=3, out='a.csv')
    data = cfg.hashed_dict()
    assert 'threads' not in data and 'out' not in data
    assert data['subcommand'] == 'sample'


def test_json_output(tmp_path):
    out = tmp_path.joinpath('trace.json')
    code = run(['detstats', '--statistic', 'trace', '--k', '2', '--N', '20',
                '--format', 'json', '--out', out.as_posix()])
    assert code == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {'config', 'results', 'meta'}
    assert doc['results'][0]['value'] == 800.0
    assert doc['config']['N'] == 20


def test_yaml_config_defaults(tmp_path, capsys):
    config = tmp_path.joinpath('run.yml')
    config.write_text(yaml.dump(dict(statistic='trace', k=2, N=20)))
    assert run(['detstats', '--config', config.as_posix()]) == 0
    rows = data_lines(capsys.readouterr().out)
    assert rows[1].startswith('E|Tr X^k|^2,2,800.0')
    # explicit flags win over the file
    assert run(['detstats', '--config', config.as_posix(), '--N', '1']) == 0
    rows = data_lines(capsys.readouterr().out)
    assert rows[1].startswith('E|Tr X^k|^2,2,2.0')


def test_parameter_grid(tmp_path, capsys):
    grid = tmp_path.joinpath('grid.yml')
    grid.write_text(yaml.dump(dict(N=[5, 6])))
    assert run(['detstats', '--orders', '2', '--grid', grid.as_posix()]) == 0
    rows = data_lines(capsys.readouterr().out)
    assert rows[0] == 'N,quantity,parameter,value,err_est,reference'
    assert len(rows) == 1 + 2 * 3
    first = rows[1].split(',')
    assert first[:3] == ['5', 'E|det|^(2(s-1))', '2.0']
    assert float(first[3]) == pytest.approx(120.0)


def test_input_errors_exit_one(capsys):
    assert run(['sample', '--N', '5']) == 1
    assert run(['counting', '--N', '5']) == 1
    assert run(['counting', '--radius', '-1']) == 1
    assert run(['sample', '--seed', '1', '--ensemble', 'elliptic']) == 1
    assert run(['spacing', '--log_level', 'loud']) == 1
    assert run(['spacing', '--no_such_flag', '3']) == 1
    assert run(['plot']) == 1
    assert 'usage' in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert run(['--help']) == 0
    out = capsys.readouterr().out
    assert 'usage: ginlab' in out
    assert 'counting' in out and 'overlaps' in out


def test_numeric_failure_exits_two(monkeypatch):
    def fail(self, **kwargs):
        raise NumericError('quadrature did not converge', dict(abs_err=1.0))

    monkeypatch.setattr(SpacingEngine, 'run', fail)
    assert run(['spacing', '--mean']) == 2


@pytest.mark.parametrize('subcommand', ['kernel', 'density'])
def test_tabulation_subcommands(subcommand, capsys):
    assert run([subcommand, '--N', '8', '--grid_size', '3']) == 0
    rows = data_lines(capsys.readouterr().out)
    assert rows[0] == 're,im,value_re,value_im'
    assert len(rows) == 1 + 9


def test_bad_config_files_exit_one(tmp_path):
    assert run(['spacing', '--config', tmp_path.joinpath('missing.yml').as_posix()]) == 1
    grid = tmp_path.joinpath('grid.yml')
    grid.write_text('- 1\n- 2\n')
    assert run(['detstats', '--grid', grid.as_posix()]) == 1
    grid.write_text('N: [5, 6\n')
    assert run(['detstats', '--grid', grid.as_posix()]) == 1
