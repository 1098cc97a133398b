"""Bounded search for generalized-torsion certificates of the meridian in a
Dehn-filled knot group."""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from itertools import product as _tuples
from typing import NamedTuple, Optional

from .. import _parallel
from ..errors import NoPeripheralError, PreconditionError
from .core import Presentation, free_reduce, inverse, simplify
from .homology import h1_order
from .prover import Derivation, prove_trivial
from .replay import check_derivation


@dataclass(frozen=True)
class MeridianRecord:
    presentation: Presentation   # the simplified presentation the derivation refers to
    element: tuple
    conjugators: tuple
    derivation: Derivation

    @property
    def k(self) -> int:
        return len(self.conjugators)

    def product_word(self) -> tuple:
        return conjugate_product(self.element, self.conjugators)

    def replay(self) -> bool:
        d = self.derivation
        return (d.word == self.product_word()
                and check_derivation(self.presentation.relators, d.word, d.steps))


class MeridianSearch(NamedTuple):
    record: Optional[MeridianRecord]
    h1_order: object
    max_k: int
    max_conj_len: int
    budget: int
    candidates: int

    def budget_line(self) -> str:
        return (f"searched: k<={self.max_k} conj-len<={self.max_conj_len} "
                f"prover-budget={self.budget} candidates={self.candidates}")


def conjugate_product(g, conjugators) -> tuple:
    out = []
    for x in conjugators:
        out.extend(x)
        out.extend(g)
        out.extend(inverse(x))
    return free_reduce(out)


def free_words(ngens: int, max_len: int) -> list:
    """Freely reduced words up to max_len in shortlex order (x1 < X1 < x2 < ...)."""
    alphabet = []
    for i in range(1, ngens + 1):
        alphabet += [i, -i]
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in alphabet if not w or w[-1] != -a]
        out.extend(layer)
    return out


def _try_chunk(P, mu, words, k, budget, chunk):
    start, stop = chunk
    for first in range(start, stop):
        for rest in _tuples(range(len(words)), repeat=k - 2):
            xs = ((),) + (words[first],) + tuple(words[j] for j in rest)
            u = conjugate_product(mu, xs)
            d = prove_trivial(P, u, budget)
            if d is not None:
                return xs, d
    return None


def meridian_gt_search(P: Presentation, m: int, budget: int = 20000, max_k: int = None,
                       max_conj_len: int = 2, jobs: int = 1) -> MeridianSearch:
    """Look for mu (x_2 mu x_2^-1) ... (x_k mu x_k^-1) = 1 with short x_j.

    P is Tietze-simplified first. k steps through multiples of the H_1 order
    of mu (which is m for a slope m/n filling); each candidate product gets
    ``budget`` prover units. Returns the first certified record in
    (k, shortlex tuple) order, or none.
    """
    if P.peripheral is None:
        raise NoPeripheralError("meridian search needs a peripheral pair")
    if m < 1:
        raise PreconditionError("slope numerator must be positive")
    Q = simplify(P)
    mu = free_reduce(Q.mu)
    order = h1_order(Q, mu)
    if order == float("inf"):
        raise PreconditionError("meridian has infinite order in H_1; presentation is not filled")
    step = max(order, 1)
    max_k = max_k if max_k is not None else max(step, 2)
    words = free_words(len(Q.gens), max_conj_len)
    result = partial(MeridianSearch, h1_order=order, max_k=max_k,
                     max_conj_len=max_conj_len, budget=budget)
    tried = 0
    for k in range(step, max_k + 1, step):
        if k == 1:
            if not mu:
                d = prove_trivial(Q, mu, budget)
                return result(MeridianRecord(Q, mu, ((),), d), candidates=1)
            d = prove_trivial(Q, mu, budget)
            tried += 1
            if d is not None:
                return result(MeridianRecord(Q, mu, ((),), d), candidates=tried)
            continue
        fn = partial(_try_chunk, Q, mu, words, k, budget)
        hit = _parallel.first_hit(fn, _parallel.chunked(len(words), jobs), jobs)
        if hit is not None:
            xs, d = hit
            rec = MeridianRecord(Q, mu, xs, d)
            # count candidates up to and including the hit
            tried += _index_of(words, xs, k) + 1
            return result(rec, candidates=tried)
        tried += len(words) ** (k - 1)
    return result(None, candidates=tried)


def _index_of(words, xs, k):
    pos = {w: j for j, w in enumerate(words)}
    idx = 0
    for x in xs[1:]:
        idx = idx * len(words) + pos[x]
    return idx
