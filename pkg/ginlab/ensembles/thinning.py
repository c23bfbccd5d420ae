import math

import numpy as np

from ginlab.errors import InputError
from ginlab.utils.rng import STREAM_THINNING
from ginlab.utils.rng import as_generator


def thin_spectrum(eigenvalues, zeta, seed, rescale=False):
    """
    Keep each point independently with probability zeta.

    With ``rescale`` the survivors are multiplied by sqrt(zeta) so the bulk
    density is restored to that of the unthinned process.
    """
    if not 0.0 < zeta <= 1.0:
        raise InputError(f'zeta must lie in (0, 1], got {zeta}')
    z = np.asarray(eigenvalues, dtype=complex)
    rng = as_generator(seed, STREAM_THINNING)
    kept = z[rng.random(z.size) < zeta]
    if rescale:
        kept = kept * math.sqrt(zeta)
    return kept
