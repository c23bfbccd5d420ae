from dataclasses import dataclass
from typing import Any

from ginlab.configs.run_config import RunConfig
from ginlab.utils.lab_logger import logger


@dataclass
class CFG:
    run: Any = None


cfg = CFG()


def set_config(subcommand=None, config_func=None):
    global cfg
    if config_func is not None:
        cfg.run = config_func()
        logger.debug(f'Config type: {config_func.__name__}')
        return cfg.run
    cfg.run = RunConfig(subcommand=subcommand)
    logger.debug(f'Subcommand: {subcommand}')
    return cfg.run
