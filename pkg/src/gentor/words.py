"""Exact word calculus in free products of cyclic groups.

A group is entered as ``Z/2 * Z/3 * Z``; its factors receive the generator
letters ``a, b, c, ...`` in order. Elements are kept in free-product normal
form: a tuple of syllables ``(factor, exponent)`` with adjacent syllables in
different factors and finite-cyclic exponents stored as least positive
residues.
"""
from __future__ import annotations

import math
import re
import string
from dataclasses import dataclass
from functools import reduce as _fold
from typing import Iterable, Sequence

import numpy as np

from .errors import (BadOrderError, GroupMismatchError, ParseError,
                     TooManyFactorsError, TrivialInputError,
                     UnknownGeneratorError)

INF = math.inf
LETTERS = string.ascii_lowercase


@dataclass(frozen=True)
class FactorSpec:
    """One cyclic factor. ``order == 0`` encodes the infinite cyclic group."""

    order: int = 0

    def __post_init__(self):
        if self.order != 0 and self.order < 2:
            raise BadOrderError(f"cyclic order must be >= 2, got {self.order}")

    @property
    def torsion_free(self) -> bool:
        return self.order == 0

    def __str__(self):
        return "Z" if self.order == 0 else f"Z/{self.order}"


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ParseError("a group needs at least one factor")
        if len(self.factors) > len(LETTERS):
            raise TooManyFactorsError(f"at most 26 factors, got {len(self.factors)}")

    @classmethod
    def of(cls, *orders: int) -> "GroupSpec":
        """``GroupSpec.of(2, 3)`` is Z/2 * Z/3; use 0 for an infinite factor."""
        return cls(tuple(FactorSpec(n) for n in orders))

    @property
    def orders(self) -> tuple:
        return tuple(f.order for f in self.factors)

    @property
    def gens(self) -> str:
        return LETTERS[:len(self.factors)]

    @property
    def torsion_free(self) -> bool:
        return all(f.torsion_free for f in self.factors)

    def factor_group(self, i: int) -> "GroupSpec":
        return GroupSpec((self.factors[i],))

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, i: int) -> "Word":
        return Word(self, ((i, 1),))

    def __str__(self):
        return " * ".join(str(f) for f in self.factors)


@dataclass(frozen=True)
class Word:
    """A normal-form element. Build through :func:`reduce`, not directly."""

    group: GroupSpec
    syllables: tuple

    def __len__(self):
        return len(self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __mul__(self, other):
        return multiply(self, other)

    def __invert__(self):
        return invert(self)

    def __pow__(self, n):
        return power(self, n)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r} in {self.group})"

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def conj(self, x: "Word") -> "Word":
        """x self x^-1."""
        return multiply(multiply(x, self), invert(x))


# ---------------------------------------------------------------------------
# parsing

_GROUP_TOKEN = re.compile(r"Z(?:/(-?\d+))?$")


def parse_group(text: str) -> GroupSpec:
    body = "".join(text.split())
    if not body:
        raise ParseError("empty group")
    factors = []
    for tok in body.split("*"):
        m = _GROUP_TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad factor {tok!r}")
        if m.group(1) is None:
            factors.append(FactorSpec(0))
            continue
        n = int(m.group(1))
        if n < 2:
            raise BadOrderError(f"cyclic order must be >= 2, got {n}")
        factors.append(FactorSpec(n))
    if len(factors) > len(LETTERS):
        raise TooManyFactorsError(f"at most 26 factors, got {len(factors)}")
    return GroupSpec(tuple(factors))


class _Tokens:
    """Small cursor over a word string; whitespace is insignificant."""

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg):
        return ParseError(f"{msg} at position {self.pos} in {self.text!r}")


def parse_letters(text: str, match_generator) -> list:
    """Parse the shared word grammar into a flat list of (generator, exponent).

    ``match_generator(text, pos)`` returns ``(index, sign, new_pos)`` for a
    generator token starting at ``pos`` or None. Parenthesised subwords may
    carry exponents; ``1`` is the identity.
    """
    toks = _Tokens(text)

    def integer():
        toks.skip()
        m = re.compile(r"[+-]?\s*\d+").match(toks.text, toks.pos)
        if not m:
            raise toks.error("expected integer exponent")
        toks.pos = m.end()
        return int(m.group().replace(" ", ""))

    def sequence(depth):
        out = []
        while True:
            c = toks.peek()
            if c == "" or c == ")":
                if c == ")" and depth == 0:
                    raise toks.error("unbalanced ')'")
                return out
            if c == "(":
                toks.pos += 1
                item = sequence(depth + 1)
                if toks.peek() != ")":
                    raise toks.error("missing ')'")
                toks.pos += 1
            elif c == "1" and not toks.text[toks.pos + 1:toks.pos + 2].isdigit():
                toks.pos += 1
                item = []
            else:
                hit = match_generator(toks.text, toks.pos)
                if hit is None:
                    if c.isalpha():
                        raise UnknownGeneratorError(
                            f"unknown generator at position {toks.pos} in {text!r}")
                    raise toks.error(f"unexpected {c!r}")
                gen, sign, toks.pos = hit
                item = [(gen, sign)]
            if toks.peek() == "^":
                toks.pos += 1
                e = integer()
                if e >= 0:
                    item = item * e
                else:
                    item = [(g, -s) for g, s in reversed(item)] * (-e)
            out.extend(item)

    return sequence(0)


def parse_word(text: str, group: GroupSpec) -> Word:
    gens = group.gens

    def match(s, pos):
        c = s[pos]
        if c in gens:
            return gens.index(c), 1, pos + 1
        if c.isupper() and c.lower() in gens:
            return gens.index(c.lower()), -1, pos + 1
        return None

    return reduce(parse_letters(text, match), group)


# ---------------------------------------------------------------------------
# normal forms and group operations

def reduce(raw: Iterable, group: GroupSpec) -> Word:
    """Free-product normal form of any syllable sequence (idempotent)."""
    orders = group.orders
    out = []
    for i, e in raw:
        n = orders[i]
        if out and out[-1][0] == i:
            e += out.pop()[1]
        if n:
            e %= n
        if e:
            out.append((i, e))
    return Word(group, tuple(out))


def _same_group(u: Word, v: Word):
    if u.group != v.group:
        raise GroupMismatchError(f"{u.group} vs {v.group}")


def multiply(u: Word, v: Word) -> Word:
    _same_group(u, v)
    if not u.syllables:
        return v
    if not v.syllables:
        return u
    orders = u.group.orders
    left = list(u.syllables)
    right = v.syllables
    j = 0
    while left and j < len(right) and left[-1][0] == right[j][0]:
        i, e = left.pop()
        n = orders[i]
        e += right[j][1]
        if n:
            e %= n
        j += 1
        if e:
            left.append((i, e))
            break
    return Word(u.group, tuple(left) + right[j:])


def product(words: Sequence[Word], group: GroupSpec = None) -> Word:
    if not words:
        if group is None:
            raise ValueError("empty product needs a group")
        return group.identity()
    return _fold(multiply, words)


def invert(u: Word) -> Word:
    orders = u.group.orders
    return Word(u.group, tuple((i, (orders[i] - e) if orders[i] else -e)
                               for i, e in reversed(u.syllables)))


def power(u: Word, n: int) -> Word:
    if n == 0 or not u.syllables:
        return u.group.identity()
    if n < 0:
        return power(invert(u), -n)
    c, w = cyclically_reduce(u)
    if len(w) == 1:
        core = reduce([(w.syllables[0][0], w.syllables[0][1] * n)], u.group)
    else:
        core = Word(u.group, w.syllables * n)
    return multiply(multiply(c, core), invert(c))


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    return product([invert(u), invert(v), u, v])


def cyclically_reduce(u: Word):
    """Return (c, w) with u = c w c^-1 and w cyclically reduced.

    At each peel the shorter of the two single-syllable conjugators is taken
    (prefix side on ties), so c is the shortest such prefix.
    """
    group = u.group
    orders = group.orders
    syl = list(u.syllables)
    conj = []
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        i, e_first = syl[0]
        e_last = syl[-1][1]
        n = orders[i]
        total = e_first + e_last
        if n:
            total %= n
        if total == 0:
            conj.append((i, e_first))
            syl = syl[1:-1]
            continue
        inner = syl[1:-1]
        if n:
            cost_first, cost_last = e_first, n - e_last
        else:
            cost_first, cost_last = abs(e_first), abs(e_last)
        if cost_first <= cost_last:
            conj.append((i, e_first))
            syl = inner + [(i, total)]
        else:
            conj.append((i, -e_last % n if n else -e_last))
            syl = [(i, total)] + inner
        break
    return reduce(conj, group), Word(group, tuple(syl))


def conjugate_into_factor(u: Word):
    """(factor, c, e) with u = c gen^e c^-1, or None when the cyclic core is longer."""
    if not u.syllables:
        raise TrivialInputError("identity is conjugate into every factor")
    c, w = cyclically_reduce(u)
    if len(w) != 1:
        return None
    i, e = w.syllables[0]
    return i, c, e


def abelianize(u: Word) -> tuple:
    orders = u.group.orders
    vec = [0] * len(orders)
    for i, e in u.syllables:
        vec[i] += e
    return tuple(v % n if n else v for v, n in zip(vec, orders))


def abelian_order(u: Word):
    """Order of the image in the abelianization; ``math.inf`` if infinite."""
    order = 1
    for v, n in zip(abelianize(u), u.group.orders):
        if n == 0:
            if v:
                return INF
        else:
            order = math.lcm(order, n // math.gcd(n, v))
    return order


def project(u: Word, i: int) -> Word:
    """Image under the retraction onto factor i, as a word of the one-factor group."""
    fg = u.group.factor_group(i)
    return reduce([(0, e) for j, e in u.syllables if j == i], fg)


# ---------------------------------------------------------------------------
# display and letter expansions

def format_word(u: Word) -> str:
    if not u.syllables:
        return "1"
    gens = u.group.gens
    return " ".join(gens[i] if e == 1 else f"{gens[i]}^{e}" for i, e in u.syllables)


_FINITE_STRIDE = 1 << 32


def letter_code(group: GroupSpec, i: int, e: int) -> int:
    """Code of one letter. Infinite factors use +-(i+1) per unit; a finite
    factor syllable is a single letter keyed by its residue."""
    if group.orders[i]:
        return (i + 1) * _FINITE_STRIDE + e
    return (i + 1) if e > 0 else -(i + 1)


def letter_expansion(u: Word) -> np.ndarray:
    """int64 letter sequence; the expansion of u^-1 is the reversed,
    letter-inverted expansion of u."""
    orders = u.group.orders
    codes = []
    counts = []
    for i, e in u.syllables:
        if orders[i]:
            codes.append((i + 1) * _FINITE_STRIDE + e)
            counts.append(1)
        else:
            codes.append(i + 1 if e > 0 else -(i + 1))
            counts.append(abs(e))
    if not codes:
        return np.zeros(0, dtype=np.int64)
    return np.repeat(np.asarray(codes, dtype=np.int64), counts)


def letter_length(u: Word) -> int:
    orders = u.group.orders
    return sum(1 if orders[i] else abs(e) for i, e in u.syllables)


def letters(group: GroupSpec) -> list:
    """All single letters as one-syllable words, in a fixed order."""
    out = []
    for i, n in enumerate(group.orders):
        if n:
            out.extend(Word(group, ((i, e),)) for e in range(1, n))
        else:
            out.extend((Word(group, ((i, 1),)), Word(group, ((i, -1),))))
    return out


def enumerate_words(group: GroupSpec, max_syllables: int, max_abs_exponent: int) -> list:
    """Distinct reduced words with <= max_syllables syllables whose exponents
    come from +-1..+-max_abs_exponent, in shortlex order (syllable count,
    then factor/exponent sequence)."""
    orders = group.orders
    per_factor = []
    for n in orders:
        exps = set()
        for e in range(-max_abs_exponent, max_abs_exponent + 1):
            if e == 0:
                continue
            r = e % n if n else e
            if r:
                exps.add(r)
        per_factor.append(sorted(exps))
    layer = [()]
    seen = {()}
    out = [group.identity()]
    for _ in range(max_syllables):
        nxt = []
        for syl in layer:
            for i, exps in enumerate(per_factor):
                if syl and syl[-1][0] == i:
                    continue
                for e in exps:
                    s = syl + ((i, e),)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
        nxt.sort()
        out.extend(Word(group, s) for s in nxt)
        layer = nxt
    return out


def random_word(group: GroupSpec, rng, max_syllables: int = 6, max_abs_exponent: int = 3,
                min_syllables: int = 0) -> Word:
    """Reduced word with a uniform syllable count in [min, max] (before reduction)."""
    count = rng.randint(min_syllables, max_syllables)
    nf = len(group.orders)
    syl = []
    last = None
    for _ in range(count):
        choices = [i for i in range(nf) if i != last] or [0]
        i = rng.choice(choices)
        last = i
        n = group.orders[i]
        if n:
            e = rng.randint(1, n - 1)
        else:
            e = rng.choice([s * m for m in range(1, max_abs_exponent + 1) for s in (1, -1)])
        syl.append((i, e))
    return reduce(syl, group)
