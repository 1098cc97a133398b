"""Budgeted triviality prover with replayable derivations.

The search works on cyclically reduced words (conjugation does not change
triviality). One step rotates the current word, prepends a cyclic conjugate
of a relator or its inverse, and freely plus cyclically reduces. Candidate
insertions are those whose inserted word cancels at least one letter; each
one tried costs one budget unit. States are explored shortest first with a
table of visited cyclic words, so the prover never claims nontriviality,
only returns a derivation or None.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import BadWordError, ParseError
from .core import Presentation, cyclic_reduce, inverse

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class Step:
    rotate: int      # move this many leading letters to the end
    relator: int     # index into the presentation's relators
    sign: int        # +1 relator, -1 its inverse
    shift: int       # cyclic conjugate start inside relator^sign


@dataclass(frozen=True)
class Derivation:
    word: tuple
    steps: tuple

    def __len__(self):
        return len(self.steps)


def relator_conjugate(relators, step: Step) -> tuple:
    r = relators[step.relator]
    s = tuple(r) if step.sign > 0 else inverse(r)
    return s[step.shift:] + s[:step.shift]


def _canon(w):
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class _Moves:
    """Inverse-patterns of every relator conjugate, packed for the kernel."""

    def __init__(self, relators):
        self.steps = []
        pats = []
        for ri, r in enumerate(relators):
            for sign in (1, -1):
                for shift in range(len(r)):
                    step = Step(0, ri, sign, shift)
                    q = relator_conjugate(relators, step)
                    self.steps.append(step)
                    pats.append(np.asarray(inverse(q), dtype=np.int64))
        self.inserts = [relator_conjugate(relators, s) for s in self.steps]
        self.flat, self.offsets = _kernels.pack(pats)


def _check_word(P, u):
    n = len(P.gens)
    if any(not isinstance(x, (int, np.integer)) or x == 0 or abs(x) > n for x in u):
        raise BadWordError("word uses letters outside the presentation")


def prove_trivial(P: Presentation, u, budget: int = DEFAULT_BUDGET, max_growth: int = None):
    """Search for a derivation of u = 1; returns a Derivation or None."""
    _check_word(P, u)
    if budget < 1:
        raise ValueError("budget must be positive")
    start = cyclic_reduce(tuple(int(x) for x in u))
    if not start:
        return Derivation(tuple(u), ())
    rels = [tuple(r) for r in P.relators]
    if not rels:
        return None
    moves = _Moves(rels)
    if max_growth is None:
        max_growth = max(len(r) for r in rels)
    cap = len(start) + max_growth
    parents = {_canon(start): None}
    heap = [(len(start), 0, start)]
    counter = 1
    spent = 0
    while heap:
        _, _, w = heapq.heappop(heap)
        n = len(w)
        matches = _kernels.match_lengths(np.asarray(w, dtype=np.int64), moves.flat, moves.offsets)
        pos, idx = np.nonzero(matches)
        for i, j in zip(pos.tolist(), idx.tolist()):
            spent += 1
            if spent > budget:
                return None
            rotated = w[i:] + w[:i]
            child = cyclic_reduce(moves.inserts[j] + rotated)
            if len(child) > cap:
                continue
            key = _canon(child)
            if key in parents:
                continue
            base = moves.steps[j]
            parents[key] = (w, Step(i, base.relator, base.sign, base.shift))
            if not child:
                return Derivation(tuple(u), _unwind(parents, key, start))
            heapq.heappush(heap, (len(child), counter, child))
            counter += 1
    return None


def _unwind(parents, key, start):
    steps = []
    while True:
        entry = parents[key]
        if entry is None:
            break
        prev, step = entry
        steps.append(step)
        key = _canon(prev)
    steps.reverse()
    return tuple(steps)


# ---------------------------------------------------------------------------
# serialization

HEADER = "derivation v1"


def format_derivation(P: Presentation, d: Derivation) -> str:
    lines = [HEADER, f"word: {P.format(d.word)}", f"steps: {len(d.steps)}"]
    for n, s in enumerate(d.steps, start=1):
        lines.append(f"{n}: rotate {s.rotate} insert r{s.relator}{'+' if s.sign > 0 else '-'} "
                     f"shift {s.shift} reduce")
    return "\n".join(lines) + "\n"


def parse_derivation(P: Presentation, text: str) -> Derivation:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3 or lines[0] != HEADER:
        raise ParseError("not a 'derivation v1' file")
    if not lines[1].startswith("word:") or not lines[2].startswith("steps:"):
        raise ParseError("expected 'word:' and 'steps:' lines")
    word = P.parse(lines[1][5:])
    count = int(lines[2][6:])
    body = lines[3:]
    if len(body) != count:
        raise ParseError(f"steps: {count} but {len(body)} step lines")
    steps = []
    for n, line in enumerate(body, start=1):
        num, _, rest = line.partition(":")
        parts = rest.split()
        if (num.strip() != str(n) or len(parts) != 7 or parts[0] != "rotate"
                or parts[2] != "insert" or parts[4] != "shift" or parts[6] != "reduce"
                or not parts[3].startswith("r") or parts[3][-1] not in "+-"):
            raise ParseError(f"bad step line {line!r}")
        steps.append(Step(int(parts[1]), int(parts[3][1:-1]),
                          1 if parts[3][-1] == "+" else -1, int(parts[5])))
    return Derivation(word, tuple(steps))
