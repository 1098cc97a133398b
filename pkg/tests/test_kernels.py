import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gentor import _kernels

alphabet = st.sampled_from([1, -1, 2, -2, 3])
texts = st.lists(alphabet, max_size=30)
pattern_lists = st.lists(st.lists(alphabet, min_size=1, max_size=5), min_size=1, max_size=6)


def naive_counts(text, patterns):
    return [sum(text[i:i + len(p)] == p for i in range(len(text) - len(p) + 1)) for p in patterns]


def naive_matches(word, patterns):
    n = len(word)
    out = np.zeros((n, len(patterns)), dtype=np.int64)
    for i in range(n):
        for j, p in enumerate(patterns):
            ell = 0
            while ell < min(len(p), n) and word[(i + ell) % n] == p[ell]:
                ell += 1
            out[i, j] = ell
    return out


def _impls(name):
    impls = [getattr(_kernels, f"{name}_numpy"), getattr(_kernels, f"_{name}_loop")]
    jit = getattr(_kernels, f"{name}_jit")
    if jit is not None:
        impls.append(jit)
    return impls


@given(texts, pattern_lists)
def test_count_many_backends_agree(text, patterns):
    flat, offsets = _kernels.pack([np.array(p) for p in patterns])
    arr = np.array(text, dtype=np.int64)
    expected = naive_counts(text, patterns)
    for fn in _impls("count_many"):
        assert fn(arr, flat, offsets).tolist() == expected


@given(texts.filter(bool), pattern_lists)
def test_match_lengths_backends_agree(word, patterns):
    flat, offsets = _kernels.pack([np.array(p) for p in patterns])
    arr = np.array(word, dtype=np.int64)
    expected = naive_matches(word, patterns)
    for fn in _impls("match_lengths"):
        assert (fn(arr, flat, offsets) == expected).all()


def test_pack_empty():
    flat, offsets = _kernels.pack([])
    assert flat.size == 0 and offsets.tolist() == [0]


@pytest.mark.parametrize("flag, backend", [("0", "numpy"), ("1", "numba")])
def test_env_flag_selects_backend(flag, backend):
    env = dict(os.environ, GENTOR_JIT=flag)
    out = subprocess.run([sys.executable, "-c", "from gentor import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == backend
