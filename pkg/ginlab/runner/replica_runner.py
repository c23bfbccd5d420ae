import multiprocessing as mp
import os
from dataclasses import dataclass
from typing import Optional

from tqdm import tqdm

from ginlab.errors import InputError
from ginlab.utils.lab_logger import logger

THREADS_ENV = 'GINUE_LAB_THREADS'


class CloudpickleWrapper(object):
    """
    Uses cloudpickle to serialize contents
    (otherwise multiprocessing tries to use pickle,
    which cannot ship lambdas and closures)
    """

    def __init__(self, x):
        self.x = x

    def __getstate__(self):
        import cloudpickle
        return cloudpickle.dumps(self.x)

    def __setstate__(self, ob):
        import pickle
        self.x = pickle.loads(ob)

    def __call__(self, *args, **kwargs):
        return self.x(*args, **kwargs)


def resolve_threads(threads=None):
    if threads is not None and int(threads) > 0:
        return int(threads)
    env_val = os.environ.get(THREADS_ENV)
    if env_val:
        try:
            val = int(env_val)
        except ValueError:
            raise InputError(f'{THREADS_ENV} must be an integer, got {env_val!r}')
        if val > 0:
            return val
    return os.cpu_count() or 1


def _run_one(job):
    func, idx = job
    return func(idx)


@dataclass
class ReplicaRunner:
    """
    Maps a replica function over replica indices.

    The function receives the replica index only; it derives its random
    stream from (seed, index), so the results do not depend on the number
    of workers. Results come back in index order.
    """
    threads: Optional[int] = None
    context: str = 'spawn'
    desc: str = 'replicas'
    chunksize: Optional[int] = None

    def __post_init__(self):
        self.threads = resolve_threads(self.threads)

    def __call__(self, func, n_replicas, start=0):
        if n_replicas < 1:
            raise InputError(f'need at least one replica, got {n_replicas}')
        indices = range(start, start + n_replicas)
        disable = not logger.verbose
        if self.threads == 1 or n_replicas == 1:
            return [func(i) for i in tqdm(indices, desc=self.desc, disable=disable)]
        wrapped = CloudpickleWrapper(func)
        jobs = [(wrapped, i) for i in indices]
        chunksize = self.chunksize or max(1, n_replicas // (4 * self.threads))
        ctx = mp.get_context(self.context)
        logger.debug(f'{self.desc}: {n_replicas} replicas on {self.threads} workers')
        with ctx.Pool(processes=self.threads) as pool:
            results = list(tqdm(pool.imap(_run_one, jobs, chunksize=chunksize),
                                total=n_replicas, desc=self.desc, disable=disable))
        return results
