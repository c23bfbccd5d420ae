from dataclasses import dataclass
from typing import Union

import numpy as np

from ginlab.errors import NumericError


@dataclass(frozen=True)
class EvalResult:
    value: Union[float, complex]
    abs_err_est: float = 0.0
    exp_scaled: bool = False

    def __post_init__(self):
        if self.abs_err_est < 0:
            raise NumericError('negative error estimate', dict(abs_err_est=self.abs_err_est))
        if not np.all(np.isfinite(self.value)):
            raise NumericError('non-finite special function value',
                               dict(value=self.value, abs_err_est=self.abs_err_est))

    def __float__(self):
        return float(np.real(self.value))
