"""Compare the numba and numpy backends of the hot kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

count_many: default-family occurrence counts on g^256 for random words in
Z * Z (the quasimorphism homogenization workload). match_lengths: relator
prefix matches on random words of prover size for a filled twist knot.
"""
import argparse
import random
import timeit

import numpy as np

from gentor import _kernels
from gentor.presentations import dehn_filling, twist_sum
from gentor.presentations.prover import _Moves
from gentor.quasimorphisms import _Patterns, default_family
from gentor.words import letter_expansion, parse_group, power, random_word


def qm_workload(count=20, seed=1):
    group = parse_group("Z * Z")
    r = random.Random(seed)
    pats = _Patterns(default_family(group))
    texts = [letter_expansion(power(random_word(group, r, 6, 3, 1), 256)) for _ in range(count)]
    return texts, pats.flat, pats.offsets


def prover_workload(count=200, length=40, seed=2):
    P = dehn_filling(twist_sum([1, 1]), 3)
    moves = _Moves([tuple(rel) for rel in P.relators])
    r = random.Random(seed)
    n = len(P.gens)
    words = [np.array([r.choice([1, -1]) * r.randint(1, n) for _ in range(length)],
                      dtype=np.int64) for _ in range(count)]
    return words, moves.flat, moves.offsets


def bench(name, fns, inputs, flat, offsets, repeat):
    for backend, fn in fns.items():
        if fn is None:
            print(f"{name:14s} {backend:6s} unavailable")
            continue
        for x in inputs[:1]:
            fn(x, flat, offsets)  # warm-up / JIT compile
        t = min(timeit.repeat(lambda: [fn(x, flat, offsets) for x in inputs],
                              number=1, repeat=repeat))
        print(f"{name:14s} {backend:6s} {t * 1e3:9.2f} ms")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    texts, flat, offsets = qm_workload()
    print(f"count_many: {len(texts)} texts of ~{int(np.mean([len(t) for t in texts]))} letters, "
          f"{len(offsets) - 1} patterns")
    bench("count_many", {"numba": _kernels.count_many_jit, "numpy": _kernels.count_many_numpy},
          texts, flat, offsets, args.repeat)
    words, flat, offsets = prover_workload()
    print(f"match_lengths: {len(words)} words of {len(words[0])} letters, "
          f"{len(offsets) - 1} relator conjugates")
    bench("match_lengths",
          {"numba": _kernels.match_lengths_jit, "numpy": _kernels.match_lengths_numpy},
          words, flat, offsets, args.repeat)


if __name__ == "__main__":
    main()
