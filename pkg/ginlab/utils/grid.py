import itertools

from ginlab.errors import InputError
from ginlab.utils.common import load_from_yaml


def expand_grid_items(grid, keys, vals, key_prefix=None):
    for key, elem in grid.items():
        if isinstance(elem, (list, tuple)):
            key = key if key_prefix is None else f'{key_prefix}/{key}'
            keys.append(key)
            vals.append(elem)
        elif isinstance(elem, dict):
            expand_grid_items(elem, keys, vals, key_prefix=key)
        else:
            key = key if key_prefix is None else f'{key_prefix}/{key}'
            keys.append(key)
            vals.append([elem])


def get_grid_combo(grid):
    """
    Cross product of every list-valued entry of ``grid``.

    inputs:
      grid is a dict whose values are scalars, lists, or nested dicts of the
      same; scalars are treated as single-element lists.

    output:
      a list of flat dicts, one per point of the product grid.
    """
    vals = []
    keys = []
    expand_grid_items(grid, keys, vals)
    return [dict(zip(keys, combo)) for combo in itertools.product(*vals)]


def load_grid(file_name):
    grid = load_from_yaml(file_name)
    if not isinstance(grid, dict) or not grid:
        raise InputError(f'{file_name} must hold a non-empty mapping of parameters')
    return get_grid_combo(grid)
