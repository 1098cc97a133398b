"""Hot integer kernels.

Two implementations of each kernel live here: a numba ``@njit`` version and a
pure-numpy fallback. The active one is chosen at import time; set
``GENTOR_JIT=0`` to force the numpy path (numba missing also forces it).

Letters are nonzero int64 codes. Pattern batches are passed flattened with an
offsets array, ``patterns[offsets[j]:offsets[j + 1]]`` being pattern ``j``.
"""
import os

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("GENTOR_JIT", "1").strip().lower()
USE_JIT = numba is not None and _FLAG not in ("0", "false", "no", "off")
BACKEND = "numba" if USE_JIT else "numpy"


def pack(patterns):
    """Flatten a sequence of 1-d int arrays into (flat, offsets)."""
    offsets = np.zeros(len(patterns) + 1, dtype=np.int64)
    for j, p in enumerate(patterns):
        offsets[j + 1] = offsets[j] + len(p)
    if offsets[-1]:
        flat = np.concatenate([np.asarray(p, dtype=np.int64) for p in patterns])
    else:
        flat = np.zeros(0, dtype=np.int64)
    return flat, offsets


# --------------------------------------------------------------------------
# overlapping occurrence counts

def count_many_numpy(text, flat, offsets):
    n = text.shape[0]
    out = np.zeros(offsets.shape[0] - 1, dtype=np.int64)
    for j in range(out.shape[0]):
        pat = flat[offsets[j]:offsets[j + 1]]
        m = pat.shape[0]
        if m == 0 or m > n:
            continue
        win = sliding_window_view(text, m)
        out[j] = np.count_nonzero((win == pat).all(axis=1))
    return out


def _count_many_loop(text, flat, offsets):
    n = text.shape[0]
    npat = offsets.shape[0] - 1
    out = np.zeros(npat, dtype=np.int64)
    for j in range(npat):
        start = offsets[j]
        m = offsets[j + 1] - start
        if m == 0 or m > n:
            continue
        first = flat[start]
        c = 0
        for i in range(n - m + 1):
            if text[i] != first:
                continue
            ok = True
            for t in range(1, m):
                if text[i + t] != flat[start + t]:
                    ok = False
                    break
            if ok:
                c += 1
        out[j] = c
    return out


# --------------------------------------------------------------------------
# cyclic prefix-match lengths (triviality prover)

def match_lengths_numpy(word, flat, offsets):
    """out[i, j] = longest common prefix of the cyclic word read from i and pattern j.

    Matches are capped at ``len(word)`` and at the pattern length.
    """
    n = word.shape[0]
    npat = offsets.shape[0] - 1
    if n == 0 or npat == 0:
        return np.zeros((n, npat), dtype=np.int64)
    lens = np.diff(offsets)
    k = int(min(lens.max(), n))
    padded = np.zeros((npat, k), dtype=np.int64)
    for j in range(npat):
        m = min(int(lens[j]), k)
        padded[j, :m] = flat[offsets[j]:offsets[j] + m]
    idx = (np.arange(n)[:, None] + np.arange(k)[None, :]) % n
    rot = word[idx]
    eq = rot[:, None, :] == padded[None, :, :]
    # padding zeros never equal a letter, so the cumulative product stops there
    return np.cumprod(eq, axis=2).sum(axis=2).astype(np.int64)


def _match_lengths_loop(word, flat, offsets):
    n = word.shape[0]
    npat = offsets.shape[0] - 1
    out = np.zeros((n, npat), dtype=np.int64)
    for i in range(n):
        for j in range(npat):
            start = offsets[j]
            m = offsets[j + 1] - start
            if m > n:
                m = n
            ell = 0
            pos = i
            while ell < m and word[pos] == flat[start + ell]:
                ell += 1
                pos += 1
                if pos == n:
                    pos = 0
            out[i, j] = ell
    return out


if numba is not None:
    count_many_jit = numba.njit(cache=True, nogil=True)(_count_many_loop)
    match_lengths_jit = numba.njit(cache=True, nogil=True)(_match_lengths_loop)
else:  # pragma: no cover
    count_many_jit = None
    match_lengths_jit = None

if USE_JIT:
    count_many = count_many_jit
    match_lengths = match_lengths_jit
else:
    count_many = count_many_numpy
    match_lengths = match_lengths_numpy
