from dataclasses import dataclass

from ginlab.configs.basic_config import BasicConfig
from ginlab.ensembles.spec import EnsembleSpec
from ginlab.ensembles.spec import parse_kind
from ginlab.errors import InputError

SUBCOMMANDS = ('sample', 'kernel', 'density', 'counting', 'spacing', 'linstats',
               'sumrules', 'thermo', 'overlaps', 'detstats', 'mc')
STOCHASTIC_SUBCOMMANDS = ('sample', 'overlaps', 'mc')
FORMATS = ('csv', 'json')


def parse_float_list(text):
    if text is None or text == '':
        return ()
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    try:
        return tuple(float(v) for v in str(text).split(','))
    except ValueError:
        raise InputError(f'expected a comma separated list of numbers, got {text!r}')


def parse_int_list(text):
    vals = parse_float_list(text)
    if any(v != int(v) for v in vals):
        raise InputError(f'expected integers, got {text!r}')
    return tuple(int(v) for v in vals)


def parse_complex(text):
    if text is None:
        return None
    try:
        return complex(str(text).replace(' ', '').replace('i', 'j'))
    except ValueError:
        raise InputError(f'expected a complex number such as 0.2+0.3j, got {text!r}')


@dataclass
class RunConfig(BasicConfig):
    subcommand: str = None
    ensemble: str = 'ginue'
    N: int = 50
    tau: float = None
    nu: str = None
    n: int = None
    n_list: str = None
    M: int = None
    alpha1: float = None
    alpha2: float = None
    beta: float = 2.0
    radius: float = None
    radius_inner: float = 0.0
    alpha: float = None
    zeta: float = None
    cumulants: int = 4
    statistic: str = None
    mean: bool = False
    all: bool = False
    beta2: bool = False
    steps: int = 2000
    t: float = None
    s: float = None
    k: int = None
    gamma: float = None
    w: str = None
    w2: str = None
    grid: str = None
    grid_size: int = 16
    scaling: str = 'raw'
    regime: str = None
    N_grid: str = None
    orders: str = None
    halfwidth: float = None
    method: str = 'schur'
    record_every: int = 1

    @property
    def is_stochastic(self):
        statistic = self.statistic or ''
        return self.subcommand in STOCHASTIC_SUBCOMMANDS or statistic.endswith('_mc')

    def ensemble_spec(self):
        return EnsembleSpec(kind=parse_kind(self.ensemble),
                            N=self.N,
                            tau=self.tau,
                            n=self.n,
                            M=self.M,
                            nu=parse_float_list(self.nu),
                            n_list=parse_int_list(self.n_list),
                            scaling=self.scaling)

    def validate(self):
        """Check every referenced parameter before any computation starts."""
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f'Unknown subcommand: {self.subcommand}')
        if self.format not in FORMATS:
            raise InputError(f'format must be one of {FORMATS}, got {self.format}')
        if self.replicas is None or self.replicas < 1:
            raise InputError(f'replicas must be positive, got {self.replicas}')
        if self.threads is not None and self.threads < 0:
            raise InputError(f'threads must be nonnegative, got {self.threads}')
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise InputError(f'seed must be a 64-bit unsigned integer, got {self.seed}')
        if self.is_stochastic and self.seed is None:
            raise InputError(f'{self.subcommand} draws random samples: --seed is required')
        if self.beta is not None and self.beta <= 0:
            raise InputError(f'beta must be positive, got {self.beta}')
        if self.radius is not None and self.radius < 0:
            raise InputError(f'radius must be nonnegative, got {self.radius}')
        if self.radius is not None and self.radius_inner > self.radius:
            raise InputError(f'inner radius {self.radius_inner} exceeds outer radius {self.radius}')
        if self.zeta is not None and not 0.0 < self.zeta <= 1.0:
            raise InputError(f'zeta must lie in (0, 1], got {self.zeta}')
        if self.steps < 1:
            raise InputError(f'steps must be positive, got {self.steps}')
        if self.halfwidth is not None and self.halfwidth <= 0:
            raise InputError(f'halfwidth must be positive, got {self.halfwidth}')
        if self.record_every < 1:
            raise InputError(f'record_every must be positive, got {self.record_every}')
        parse_complex(self.w)
        parse_complex(self.w2)
        parse_int_list(self.N_grid)
        parse_float_list(self.orders)
        if self.subcommand in ('sample', 'kernel', 'density', 'counting', 'linstats', 'overlaps'):
            self.ensemble_spec()
