from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Dict

from ginlab.errors import InputError
from ginlab.utils.tables import ResultTable

METHODS = ('quadrature', 'finite-difference', 'series', 'mc', 'closed-form')
QUADRATURE_TOL = 1e-6
MC_SIGMAS = 3.0


@dataclass(frozen=True)
class Residual:
    """
    A computed value set against the value an identity predicts.

    For method ``mc`` the error estimate is the standard error of the mean.
    """
    name: str
    target: float
    value: float
    method: str
    err_est: float = 0.0
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise InputError(f'Unknown residual method: {self.method}')

    @property
    def residual(self):
        return abs(self.value - self.target)

    @property
    def passed(self):
        if self.method == 'mc':
            return self.residual <= MC_SIGMAS * self.err_est
        return self.residual <= QUADRATURE_TOL

    def to_row(self):
        return [self.name, self.method, self.target, self.value, self.residual,
                self.err_est, self.passed]


def residual_table(residuals, meta=None):
    table = ResultTable(columns=['name', 'method', 'target', 'value', 'residual', 'err_est', 'passed'],
                        meta=dict(meta or {}))
    for res in residuals:
        table.add_row(*res.to_row())
        for key, val in res.meta.items():
            table.meta[f'{res.name}.{key}'] = val
    return table
