import numpy as np

_CHUNK = 4096


def _series_block(x, log_h, log_pref):
    k = np.arange(log_h.size, dtype=float)
    with np.errstate(divide='ignore'):
        log_abs = np.log(np.abs(x))
    phase = np.angle(x)
    with np.errstate(invalid='ignore'):
        log_terms = k[None, :] * log_abs[:, None] - log_h[None, :]
    log_terms[:, 0] = -log_h[0]
    shift = np.max(log_terms, axis=1)
    terms = np.exp(log_terms - shift[:, None] + 1j * k[None, :] * phase[:, None])
    total = np.sum(terms, axis=1)
    with np.errstate(invalid='ignore'):
        out = np.exp(shift + log_pref) * total
    return np.where(np.isneginf(log_pref), 0.0, out)


def radial_kernel_series(w, z, log_h, log_weight):
    """
    sqrt(ω(w) ω(z)) Σ_{k<N} (w conj(z))^k / h_k for a rotation invariant weight.

    Magnitudes are handled in log space, so N in the thousands and points far
    out in the droplet do not overflow.

    Args:
        w, z (array_like): complex points, broadcast against each other
        log_h (np.ndarray): log h_k, k = 0..N-1
        log_weight (callable): s -> log ω(s) at s = |z|^2, vectorised, -inf off support

    Returns:
        np.ndarray or complex: kernel values with the broadcast shape
    """
    w, z = np.broadcast_arrays(np.asarray(w, dtype=complex), np.asarray(z, dtype=complex))
    shape = w.shape
    w = w.ravel()
    z = z.ravel()
    log_h = np.asarray(log_h, dtype=float)
    x = w * np.conj(z)
    log_pref = 0.5 * (np.asarray(log_weight(np.abs(w) ** 2), dtype=float)
                      + np.asarray(log_weight(np.abs(z) ** 2), dtype=float))
    log_pref = np.broadcast_to(log_pref, x.shape)
    out = np.empty(x.shape, dtype=complex)
    for start in range(0, x.size, _CHUNK):
        sl = slice(start, start + _CHUNK)
        out[sl] = _series_block(x[sl], log_h, log_pref[sl])
    out = out.reshape(shape)
    return complex(out) if out.ndim == 0 else out


def series_length_for(log_h_func, log_abs_x, rel_tol=1e-18, start=64, max_terms=1 << 16):
    """
    Number of terms after which an infinite series Σ x^k / h_k has dropped
    below rel_tol of its largest term; used for the N -> infinity kernels.
    """
    n = start
    while n <= max_terms:
        k = np.arange(n, dtype=float)
        logs = k * log_abs_x - log_h_func(k)
        peak = int(np.argmax(logs))
        if peak < n - 1 and logs[-1] - logs[peak] < np.log(rel_tol):
            return n
        n *= 2
    return max_terms
