from dataclasses import dataclass
from typing import Any

from ginlab.configs import cfg as global_cfg
from ginlab.configs.run_config import parse_complex
from ginlab.configs.run_config import parse_float_list
from ginlab.configs.run_config import parse_int_list
from ginlab.errors import InputError
from ginlab.utils.lab_logger import logger


@dataclass
class BasicEngine:
    """
    One subcommand. ``run`` computes a ResultTable from the run config; the
    caller takes care of rendering and writing it.
    """
    cfg: Any = None

    def __post_init__(self):
        if self.cfg is None:
            self.cfg = global_cfg.run
        if self.cfg is None:
            raise InputError('no run configuration has been set')
        logger.debug(f'{type(self).__name__} for {self.cfg.subcommand}')

    def run(self, **kwargs):
        raise NotImplementedError

    @property
    def statistic(self):
        return self.cfg.statistic or self.default_statistic

    default_statistic = None

    def require(self, *names):
        """Values of the named config fields, which must all be set."""
        missing = [name for name in names if getattr(self.cfg, name) is None]
        if missing:
            flags = ', '.join(f'--{name}' for name in missing)
            what = ' '.join(str(v) for v in (self.cfg.subcommand, self.statistic) if v)
            raise InputError(f'{what} needs {flags}')
        vals = [getattr(self.cfg, name) for name in names]
        return vals[0] if len(vals) == 1 else vals

    def complex_arg(self, name, default=None):
        val = parse_complex(getattr(self.cfg, name))
        return default if val is None else val

    def float_list(self, name, default=()):
        return parse_float_list(getattr(self.cfg, name)) or tuple(default)

    def int_list(self, name, default=()):
        return parse_int_list(getattr(self.cfg, name)) or tuple(default)

    def table_meta(self, **extra):
        meta = dict(subcommand=self.cfg.subcommand)
        if self.statistic is not None:
            meta['statistic'] = self.statistic
        meta.update(extra)
        return meta

    def unknown_statistic(self, choices):
        return InputError(f'Unknown {self.cfg.subcommand} statistic: {self.statistic}; '
                          f'choose from {", ".join(choices)}')
