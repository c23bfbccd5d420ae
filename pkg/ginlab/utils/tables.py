import io
import json
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Dict
from typing import List

import numpy as np

from ginlab.errors import InputError
from ginlab.utils.common import atomic_write_text
from ginlab.utils.common import config_hash
from ginlab.utils.common import to_builtin
from ginlab.version import __version__


def _format_cell(val):
    if isinstance(val, (bool, np.bool_)):
        return 'true' if val else 'false'
    if isinstance(val, (int, np.integer)):
        return str(int(val))
    if isinstance(val, (float, np.floating)):
        return repr(float(val))
    if val is None:
        return ''
    return str(val)


@dataclass
class ResultTable:
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values):
        if len(values) != len(self.columns):
            raise InputError(f'row has {len(values)} values, table has {len(self.columns)} columns')
        self.rows.append(list(values))

    def extend(self, other):
        if other.columns != self.columns:
            raise InputError('cannot merge tables with different columns')
        self.rows.extend(other.rows)

    def column(self, name):
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def as_records(self):
        return [dict(zip(self.columns, row)) for row in self.rows]

    def to_csv(self, config, seed):
        buf = io.StringIO()
        buf.write(f'# ginlab_version: {__version__}\n')
        buf.write(f'# config_hash: {config_hash(config)}\n')
        buf.write(f'# seed: {seed}\n')
        for key in sorted(self.meta):
            buf.write(f'# {key}: {_format_cell(self.meta[key])}\n')
        buf.write(','.join(self.columns) + '\n')
        for row in self.rows:
            buf.write(','.join(_format_cell(v) for v in row) + '\n')
        return buf.getvalue()

    def to_json(self, config, seed):
        doc = {
            'config': to_builtin(config),
            'results': to_builtin(self.as_records()),
            'meta': to_builtin(dict(self.meta,
                                    ginlab_version=__version__,
                                    config_hash=config_hash(config),
                                    seed=seed)),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + '\n'

    def render(self, fmt, config, seed):
        if fmt == 'csv':
            return self.to_csv(config, seed)
        if fmt == 'json':
            return self.to_json(config, seed)
        raise InputError(f'Unknown output format: {fmt}')

    def write(self, file_name, fmt, config, seed):
        atomic_write_text(self.render(fmt, config, seed), file_name)
