import json
from dataclasses import dataclass
from pathlib import Path

from ginlab.errors import InputError
from ginlab.utils.common import get_git_infos
from ginlab.utils.common import save_to_json
from ginlab.utils.lab_logger import logger

# fields that change neither the results nor their meaning
PLUMBING_FIELDS = ('threads', 'out', 'log_level', 'save_dir', 'save_dir_root', 'config')


@dataclass
class BasicConfig:
    seed: int = None
    threads: int = None
    out: str = None
    format: str = 'csv'
    log_level: str = 'info'
    replicas: int = 1000
    save_dir: str = None
    save_dir_root: str = None
    config: str = None

    @property
    def root_dir(self):
        return Path(__file__).resolve().parents[2]

    @property
    def data_dir(self):
        """
        Directory of a saved run. An explicit ``save_dir`` is used as given
        (below ``save_dir_root`` when relative); otherwise the path is built
        from the subcommand and the flags that differ from their defaults,
        e.g. ``data/counting/N_50_radius_3.0/seed_None``.
        """
        root = Path.cwd() if self.save_dir_root is None else Path(self.save_dir_root)
        if self.save_dir is not None:
            data_dir = root.joinpath(self.save_dir)
            if data_dir.name.startswith('seed_'):
                return data_dir
            return data_dir.joinpath(f'seed_{self.seed}')
        data_dir = root.joinpath('data', getattr(self, 'subcommand', None) or 'run')
        skip = set(PLUMBING_FIELDS) | {'subcommand', 'seed', 'format'}
        diff_cfg = {k: v for k, v in getattr(self, 'diff_cfg', {}).items() if k not in skip}
        if diff_cfg:
            data_dir = data_dir.joinpath('_'.join(f'{k}_{v}' for k, v in sorted(diff_cfg.items())))
        else:
            data_dir = data_dir.joinpath('default')
        return data_dir.joinpath(f'seed_{self.seed}')

    def to_dict(self):
        hps = {k: v for k, v in self.__dict__.items() if not k.startswith('_')}
        hps.pop('diff_cfg', None)
        return hps

    def hashed_dict(self):
        """The part of the configuration echoed into, and hashed for, the output."""
        return {k: v for k, v in self.to_dict().items() if k not in PLUMBING_FIELDS}

    def create_run_dir(self):
        """Create data_dir, store hp.json with the git state and mirror the log into run.log."""
        data_dir = self.data_dir
        Path.mkdir(data_dir, parents=True, exist_ok=True)
        hps = self.to_dict()
        hps['git_info'] = get_git_infos(self.root_dir)
        save_to_json(hps, data_dir.joinpath('hp.json'))
        logger.log_to_file(data_dir.joinpath('run.log'))
        logger.info(f'Run directory: {data_dir}')
        return data_dir

    def restore_cfg(self, skip_params=None, path=None):
        hp_file = Path(self.data_dir if path is None else path).joinpath('hp.json')
        if not hp_file.exists():
            raise InputError(f'No stored configuration at {hp_file}')
        with hp_file.open() as f:
            cfg_stored = json.load(f)
        skip = set(skip_params or ()) | set(PLUMBING_FIELDS) | {'git_info'}
        for key, val in cfg_stored.items():
            if hasattr(self, key) and key not in skip:
                setattr(self, key, val)
                logger.debug(f'Restoring {key} to {val}.')
