import numpy as np
from numpy.random import Generator
from numpy.random import Philox

from ginlab.errors import InputError

STREAM_MATRIX = 0
STREAM_RADIAL = 1
STREAM_OVERLAP = 2
STREAM_CHAIN = 3
STREAM_THINNING = 4
STREAM_AUX = 5

_MAX_STREAM = 1 << 16


def replica_rng(seed, replica=0, stream=STREAM_MATRIX):
    """
    Counter-based generator keyed by (seed, replica, stream).

    The Philox key is fixed by the triple alone, so a replica draws the same
    numbers no matter which worker process evaluates it.
    """
    seed = int(seed)
    replica = int(replica)
    stream = int(stream)
    if seed < 0 or seed >= 2 ** 64:
        raise InputError(f'seed must be a 64-bit unsigned integer, got {seed}')
    if replica < 0 or replica >= 2 ** 48:
        raise InputError(f'replica index out of range: {replica}')
    if stream < 0 or stream >= _MAX_STREAM:
        raise InputError(f'stream id out of range: {stream}')
    key = np.array([seed, (replica << 16) | stream], dtype=np.uint64)
    return Generator(Philox(key=key))


def as_generator(rng_or_seed, stream=STREAM_MATRIX):
    if isinstance(rng_or_seed, Generator):
        return rng_or_seed
    return replica_rng(rng_or_seed, 0, stream)
