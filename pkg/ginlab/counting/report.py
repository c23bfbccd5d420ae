import math
from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import Optional

import numpy as np

from ginlab.errors import InputError
from ginlab.utils.tables import ResultTable


@dataclass(frozen=True)
class Region:
    """Disk (r_inner = 0) or annulus r_inner < |z| < r_outer, radii in raw units."""
    r_inner: float = 0.0
    r_outer: float = math.inf

    def __post_init__(self):
        if self.r_inner < 0 or self.r_outer < self.r_inner:
            raise InputError(f'invalid region radii ({self.r_inner}, {self.r_outer})')

    @classmethod
    def disk(cls, R):
        return cls(0.0, float(R))

    @classmethod
    def annulus(cls, r_inner, r_outer):
        return cls(float(r_inner), float(r_outer))

    @property
    def is_disk(self):
        return self.r_inner == 0.0

    @property
    def kind(self):
        return 'disk' if self.is_disk else 'annulus'

    def to_dict(self):
        return dict(region=self.kind, r_inner=self.r_inner, r_outer=self.r_outer)


def as_region(region):
    """Accept a Region, a disk radius, or an (r_inner, r_outer) pair."""
    if isinstance(region, Region):
        return region
    if np.ndim(region) == 0:
        return Region.disk(region)
    radii = tuple(float(v) for v in region)
    if len(radii) != 2:
        raise InputError(f'region needs one radius or two, got {region}')
    return Region.annulus(*radii)


@dataclass
class CountingReport:
    region: Region
    N: Optional[int]
    weight: str
    lam: np.ndarray
    pmf: np.ndarray
    cumulants: Dict[int, float] = field(default_factory=dict)
    tail_bound: float = 0.0

    @property
    def mean(self):
        return float(np.sum(self.lam))

    @property
    def variance(self):
        return float(np.sum(self.lam * (1.0 - self.lam)))

    @property
    def hole_probability(self):
        return float(self.pmf[0])

    @property
    def overcrowding_probability(self):
        """E_N(N; D), all eigenvalues inside the region."""
        return float(np.prod(self.lam))

    def to_table(self):
        table = ResultTable(columns=['region', 'r_inner', 'r_outer', 'quantity', 'index', 'value', 'err_est'],
                            meta=dict(weight=self.weight, N=self.N, tail_bound=self.tail_bound))
        head = [self.region.kind, self.region.r_inner, self.region.r_outer]
        for j, lam in enumerate(self.lam, start=1):
            table.add_row(*head, 'lambda', j, float(lam), 0.0)
        for k, prob in enumerate(self.pmf):
            table.add_row(*head, 'pmf', k, float(prob), self.tail_bound)
        for p in sorted(self.cumulants):
            table.add_row(*head, 'cumulant', p, self.cumulants[p], self.tail_bound)
        return table
