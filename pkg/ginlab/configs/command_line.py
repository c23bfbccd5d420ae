import argparse
from dataclasses import asdict
from dataclasses import fields

from ginlab.errors import InputError
from ginlab.utils.common import load_from_yaml


def cfg_from_cmd(cfg, argv=None, parser=None, skip=('subcommand',)):
    """
    Add one flag per dataclass field, parse ``argv`` and write the values
    back into ``cfg``.

    A YAML file given with ``--config`` supplies defaults that explicit flags
    override. Fields that differ from the dataclass defaults are stored in
    ``cfg.diff_cfg``.
    """
    field_types = {field.name: field.type for field in fields(cfg)}
    default_cfg = asdict(cfg)
    if parser is None or not isinstance(parser, argparse.ArgumentParser):
        parser = argparse.ArgumentParser()

    for key, val in default_cfg.items():
        if key in skip:
            continue
        # flags defined on the parser beforehand keep their own defaults
        try:
            if isinstance(val, bool):
                if not val:
                    parser.add_argument('--' + key, action='store_true')
                else:
                    parser.add_argument('--no_' + key, dest=key, action='store_false')
            else:
                parser.add_argument('--' + key, type=field_types[key], default=val)
        except argparse.ArgumentError:
            pass

    pre_args, _ = parser.parse_known_args(argv)
    config_file = getattr(pre_args, 'config', None)
    if config_file is not None:
        file_vals = load_from_yaml(config_file) or {}
        if not isinstance(file_vals, dict):
            raise InputError(f'{config_file} must hold a mapping of flag names to values')
        unknown = [k for k in file_vals if k not in default_cfg]
        if unknown:
            raise InputError(f'Unknown keys in {config_file}: {unknown}')
        parser.set_defaults(**file_vals)

    args = parser.parse_args(argv)
    args_dict = vars(args)
    diff_hps = {key: val for key, val in args_dict.items() if
                key in default_cfg and val != default_cfg[key]}

    for key, val in args_dict.items():
        setattr(cfg, key, val)

    setattr(cfg, 'diff_cfg', diff_hps)
    return args, diff_hps
