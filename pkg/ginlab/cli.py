import argparse
import copy
import sys

from ginlab.configs import set_config
from ginlab.configs.command_line import cfg_from_cmd
from ginlab.configs.run_config import SUBCOMMANDS
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
from ginlab.errors import NumericError
from ginlab.utils.common import atomic_write_text
from ginlab.utils.grid import load_grid
from ginlab.utils.lab_logger import logger
from ginlab.utils.tables import ResultTable
from ginlab.version import __version__

ENGINES = {
    'sample': SampleEngine,
    'kernel': KernelEngine,
    'density': KernelEngine,
    'counting': CountingEngine,
    'spacing': SpacingEngine,
    'linstats': LinstatsEngine,
    'sumrules': SumrulesEngine,
    'thermo': ThermoEngine,
    'overlaps': OverlapsEngine,
    'detstats': DetstatsEngine,
    'mc': MCEngine,
}
EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


def build_parser():
    parser = argparse.ArgumentParser(prog='ginlab',
                                     description='Numerical laboratory for complex random matrices.')
    parser.add_argument('subcommand', choices=SUBCOMMANDS)
    parser.add_argument('--version', action='version', version=f'ginlab {__version__}')
    return parser


def run_grid(cfg):
    """
    Run the engine once per point of the YAML grid in ``cfg.grid`` and stack
    the tables, with one leading column per grid key.
    """
    combos = load_grid(cfg.grid)
    table = None
    for combo in combos:
        unknown = [key for key in combo if not hasattr(cfg, key)]
        if unknown:
            raise InputError(f'Unknown grid keys: {unknown}')
        point = copy.deepcopy(cfg)
        for key, val in combo.items():
            setattr(point, key, val)
        point.grid = None
        point.validate()
        logger.info(f'grid point {combo}')
        sub = ENGINES[point.subcommand](point).run()
        keys = sorted(combo)
        if table is None:
            table = ResultTable(keys + sub.columns, meta=dict(sub.meta, grid=cfg.grid))
        elif table.columns != keys + sub.columns:
            raise InputError('grid points produced tables with different columns')
        for row in sub.rows:
            table.add_row(*([combo[k] for k in keys] + row))
    if table is None:
        raise InputError(f'grid file {cfg.grid} has no points')
    return table


def execute(cfg):
    if cfg.grid is not None:
        return run_grid(cfg)
    return ENGINES[cfg.subcommand](cfg).run()


def run(argv=None):
    """
    Parse ``argv``, run one subcommand and write its table.

    Returns:
        exit code: 0 on success, 1 on an input error, 2 on a numerical failure
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        cfg = set_config()
        cfg_from_cmd(cfg, argv, parser=parser)
        logger.set_level(cfg.log_level)
        cfg.validate()
        table = execute(cfg)
        text = table.render(cfg.format, cfg.hashed_dict(), cfg.seed)
        if cfg.save_dir is not None:
            run_dir = cfg.create_run_dir()
            atomic_write_text(text, run_dir.joinpath(f'{cfg.subcommand}.{cfg.format}'))
        if cfg.out is not None:
            atomic_write_text(text, cfg.out)
            logger.info(f'{len(table.rows)} rows written to {cfg.out}')
        else:
            sys.stdout.write(text)
    except SystemExit as err:
        # argparse exits 0 for --help and --version, 2 on usage errors
        return EXIT_OK if not err.code else EXIT_INPUT
    except InputError as err:
        logger.error(f'input error: {err}')
        return EXIT_INPUT
    except NumericError as err:
        logger.error(f'numerical failure: {err}')
        return EXIT_NUMERIC
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
