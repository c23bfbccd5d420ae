import math
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from typing import Optional
from typing import Tuple

import numpy as np

from ginlab.errors import InputError


class Kind(Enum):
    GinUE = 'ginue'
    EllipticGinUE = 'elliptic'
    InducedGinUE = 'induced'
    Spherical = 'spherical'
    InducedSpherical = 'induced_spherical'
    TruncatedUnitary = 'truncated'
    ProductGinUE = 'product'
    ProductTruncated = 'truncated_product'


class Scaling(Enum):
    raw = 'raw'
    global_ = 'global'
    bulk = 'bulk'
    edge = 'edge'

    @classmethod
    def parse(cls, name):
        name = name.value if isinstance(name, Scaling) else str(name)
        for member in cls:
            if member.value == name:
                return member
        raise InputError(f'Unknown scaling: {name}')


# kinds whose eigenvalue law is rotation invariant; Kostlan's theorem applies
RADIAL_KINDS = (Kind.GinUE, Kind.InducedGinUE, Kind.Spherical, Kind.InducedSpherical,
                Kind.TruncatedUnitary, Kind.ProductGinUE, Kind.ProductTruncated)


@dataclass(frozen=True)
class EnsembleSpec:
    kind: Kind
    N: int
    tau: Optional[float] = None
    n: Optional[int] = None
    M: Optional[int] = None
    nu: Tuple[float, ...] = field(default_factory=tuple)
    n_list: Tuple[int, ...] = field(default_factory=tuple)
    scaling: Scaling = Scaling.raw

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, 'kind', parse_kind(self.kind))
        object.__setattr__(self, 'scaling', Scaling.parse(self.scaling))
        object.__setattr__(self, 'nu', tuple(float(v) for v in self.nu))
        object.__setattr__(self, 'n_list', tuple(int(v) for v in self.n_list))
        if int(self.N) != self.N or self.N < 1:
            raise InputError(f'N must be a positive integer, got {self.N}')
        object.__setattr__(self, 'N', int(self.N))
        kind = self.kind
        if kind is Kind.EllipticGinUE:
            if self.tau is None or not 0.0 < self.tau < 1.0:
                raise InputError(f'elliptic GinUE needs 0 < tau < 1, got {self.tau}')
        elif kind is Kind.InducedGinUE:
            if self.n is None or self.n < self.N:
                raise InputError(f'induced GinUE needs n >= N, got n={self.n}, N={self.N}')
        elif kind is Kind.TruncatedUnitary:
            if self.n is None or self.n < 1:
                raise InputError(f'truncated unitary needs n >= 1, got {self.n}')
        elif kind is Kind.InducedSpherical:
            if self.n is None or self.M is None or self.n < self.N or self.M < self.N:
                raise InputError(f'induced spherical needs n, M >= N, got n={self.n}, M={self.M}')
        elif kind is Kind.ProductGinUE:
            if len(self.nu) < 1:
                raise InputError('product ensemble needs at least one exponent nu')
            if any(v < 0 for v in self.nu):
                raise InputError(f'product exponents must be >= 0, got {self.nu}')
        elif kind is Kind.ProductTruncated:
            if len(self.n_list) < 1 or any(v < 1 for v in self.n_list):
                raise InputError(f'truncated product needs sizes n_m >= 1, got {self.n_list}')
        if self.scaling is Scaling.edge and kind is not Kind.GinUE:
            raise InputError('edge scaling is defined for GinUE only')

    @property
    def n_factors(self):
        if self.kind is Kind.ProductGinUE:
            return len(self.nu)
        if self.kind is Kind.ProductTruncated:
            return len(self.n_list)
        return 1

    @property
    def is_radial(self):
        return self.kind in RADIAL_KINDS

    @property
    def global_scale(self):
        """Factor dividing raw eigenvalues to reach the O(1) global droplet."""
        if self.kind in (Kind.GinUE, Kind.EllipticGinUE, Kind.InducedGinUE):
            return math.sqrt(self.N)
        if self.kind is Kind.ProductGinUE:
            return self.N ** (self.n_factors / 2.0)
        return 1.0

    def support_radius(self):
        """Hard bound on |z| for the compact kinds, None otherwise."""
        if self.kind in (Kind.TruncatedUnitary, Kind.ProductTruncated):
            return 1.0
        return None

    def kostlan_params(self):
        return dict(n=self.n, M=self.M, nu=self.nu, n_list=self.n_list)

    def with_scaling(self, scaling):
        data = self.to_dict()
        data['scaling'] = scaling
        return EnsembleSpec.from_dict(data)

    def to_dict(self):
        data = asdict(self)
        data['kind'] = self.kind.value
        data['scaling'] = self.scaling.value
        data['nu'] = list(self.nu)
        data['n_list'] = list(self.n_list)
        return data

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        data['kind'] = parse_kind(data['kind'])
        return cls(**data)


def parse_kind(name):
    if isinstance(name, Kind):
        return name
    key = str(name).lower().replace('-', '_')
    for member in Kind:
        if member.value == key or member.name.lower() == key:
            return member
    raise InputError(f'Unknown ensemble: {name}')


@dataclass
class ComplexSpectrum:
    eigenvalues: np.ndarray
    spec: Optional[EnsembleSpec] = None
    seed: Optional[int] = None
    replica: int = 0

    def __post_init__(self):
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=complex).ravel()
        if self.spec is not None and self.eigenvalues.size != self.spec.N:
            raise InputError(f'spectrum has {self.eigenvalues.size} values, spec says N={self.spec.N}')

    def __len__(self):
        return self.eigenvalues.size

    def scaled(self, scaling):
        """Eigenvalues in the requested convention, from the raw sample."""
        scaling = Scaling.parse(scaling)
        z = self.eigenvalues
        if scaling is Scaling.raw or scaling is Scaling.bulk:
            return z.copy()
        if self.spec is None:
            raise InputError('scaling conversion needs the ensemble spec')
        if scaling is Scaling.global_:
            return z / self.spec.global_scale
        # edge coordinates: x along the boundary, y > 0 inside the droplet
        root_n = math.sqrt(self.spec.N)
        return root_n * np.angle(z) + 1j * (root_n - np.abs(z))

    def moduli_squared(self, scaling=Scaling.raw):
        return np.abs(self.scaled(scaling)) ** 2

    def check_support(self, tol=1e-8):
        if self.spec is None:
            return True
        bound = self.spec.support_radius()
        if bound is None:
            return True
        return bool(np.all(np.abs(self.eigenvalues) < bound + tol))

    def to_rows(self):
        return [[float(v.real), float(v.imag)] for v in self.eigenvalues]

    def to_dict(self):
        return dict(spec=None if self.spec is None else self.spec.to_dict(),
                    seed=self.seed,
                    replica=self.replica,
                    eigenvalues=self.to_rows())
