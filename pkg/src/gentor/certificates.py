"""Generalized-torsion certificates: evaluation, verification, search, transport.

A certificate for ``g`` is a tuple of conjugators ``x_1, ..., x_k`` such that
``(x_1 g x_1^-1) ... (x_k g x_k^-1)`` reduces to the identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import partial
from typing import NamedTuple, Optional, Sequence

from . import _parallel
from .errors import (GroupMismatchError, InternalError,
                     NotConjugateIntoFactorError, NotVerifiedError, ParseError,
                     TheoremViolationError, TrivialInputError)
from .words import (INF, GroupSpec, Word, abelian_order, conjugate_into_factor,
                    enumerate_words, format_word, invert, multiply,
                    parse_group, parse_word, project)


@dataclass(frozen=True)
class GTCertificate:
    group: GroupSpec
    g: Word
    conjugators: tuple
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.conjugators:
            raise ValueError("a certificate needs k >= 1 conjugators")
        if self.g.is_identity:
            raise TrivialInputError("generalized torsion elements are nontrivial")

    @property
    def k(self) -> int:
        return len(self.conjugators)


def evaluate_product(g: Word, conjugators: Sequence[Word]) -> Word:
    acc = g.group.identity()
    for x in conjugators:
        if x.group != g.group:
            raise GroupMismatchError(f"conjugator in {x.group}, element in {g.group}")
        acc = multiply(acc, multiply(multiply(x, g), invert(x)))
    return acc


def _check_groups(cert):
    for w in (cert.g, *cert.conjugators):
        if w.group != cert.group:
            raise GroupMismatchError(f"word in {w.group}, certificate over {cert.group}")


def verify(cert: GTCertificate) -> bool:
    _check_groups(cert)
    if not evaluate_product(cert.g, cert.conjugators).is_identity:
        return False
    order = abelian_order(cert.g)
    if order == INF or cert.k % order:
        raise InternalError(f"verified product with k={cert.k} but abelian order {order}")
    return True


def certify(cert: GTCertificate) -> GTCertificate:
    """Verify and return a copy flagged as verified; raise if it fails."""
    if not verify(cert):
        raise NotVerifiedError("product of conjugates is not the identity")
    return replace(cert, verified=True)


def _require_verified(cert):
    if not cert.verified:
        raise NotVerifiedError("certificate has not been verified")


def normalize(cert: GTCertificate) -> GTCertificate:
    """Left-translate conjugators by x_1^-1 so the first one is trivial."""
    _require_verified(cert)
    head = invert(cert.conjugators[0])
    ys = tuple(multiply(head, x) for x in cert.conjugators)
    out = replace(cert, conjugators=ys, verified=False)
    return certify(out)


def conjugate_certificate(cert: GTCertificate, h: Word) -> GTCertificate:
    """Certificate for h g h^-1 with conjugators h x_i h^-1."""
    hi = invert(h)
    g = multiply(multiply(h, cert.g), hi)
    xs = tuple(multiply(multiply(h, x), hi) for x in cert.conjugators)
    return GTCertificate(cert.group, g, xs)


def transport_to_factor(cert: GTCertificate) -> GTCertificate:
    """Move a certificate for an element conjugate into factor i into that factor.

    With g = c w c^-1 and y = c^-1, the identity y (prod x_j g x_j^-1) y^-1 = 1
    projects under the retraction onto factor i to a certificate for w with
    conjugators p(y x_j y^-1); k is unchanged.
    """
    _require_verified(cert)
    hit = conjugate_into_factor(cert.g)
    if hit is None:
        if cert.group.torsion_free:
            if verify(cert):
                raise TheoremViolationError(
                    "verified certificate over torsion-free factors whose element "
                    "is not conjugate into a factor")
            raise NotVerifiedError("certificate failed re-verification")
        raise NotConjugateIntoFactorError(f"{format_word(cert.g)} is not conjugate into a factor")
    i, c, e = hit
    y = invert(c)
    g1 = project(multiply(multiply(y, cert.g), c), i)
    xs = tuple(project(multiply(multiply(y, x), c), i) for x in cert.conjugators)
    return certify(GTCertificate(cert.group.factor_group(i), g1, xs))


# ---------------------------------------------------------------------------
# bounded search

class OrderSearch(NamedTuple):
    certificate: Optional[GTCertificate]
    lower_bound: object  # int or math.inf
    max_k: int
    max_conj_syllables: int
    max_abs_exponent: int

    @property
    def exact(self) -> bool:
        """True when the found k meets the abelianization lower bound."""
        return self.certificate is not None and self.certificate.k == self.lower_bound

    def budget_line(self) -> str:
        return (f"searched: k<={self.max_k} conj-len<={self.max_conj_syllables} "
                f"max-exp<={self.max_abs_exponent}")


def _search_chunk(g, words, conj_words, first_index, k, chunk):
    """DFS over (x_2..x_{k-1}) with x_2 restricted to chunk; x_k by lookup.

    Returns the lexicographically first index tuple in the chunk, or None.
    """
    start, stop = chunk
    depth = k - 2  # free positions before the looked-up last one
    if depth == 0:
        idx = first_index.get(invert(g))
        return (idx,) if idx is not None else None
    def rec(level, prefix, chosen):
        lo, hi = (start, stop) if level == 0 else (0, len(words))
        for j in range(lo, hi):
            p = multiply(prefix, conj_words[j])
            if level + 1 == depth:
                idx = first_index.get(invert(p))
                if idx is not None:
                    return tuple(chosen) + (j, idx)
            else:
                chosen.append(j)
                hit = rec(level + 1, p, chosen)
                chosen.pop()
                if hit is not None:
                    return hit
        return None

    return rec(0, g, [])


def search_order(group: GroupSpec, g: Word, max_k: int, max_conj_syllables: int,
                 max_abs_exponent: int, jobs: int = 1) -> OrderSearch:
    """Smallest-k certificate within bounds, conjugators in shortlex order.

    k runs through multiples of the abelianization order of g; x_1 is pinned
    to the identity. Returns no certificate (with the lower bound) when the
    bounded space is exhausted.
    """
    if g.is_identity:
        raise TrivialInputError("identity is not a generalized torsion element")
    if g.group != group:
        raise GroupMismatchError(f"word in {g.group}, search over {group}")
    lower = abelian_order(g)
    result = partial(OrderSearch, lower_bound=lower, max_k=max_k,
                     max_conj_syllables=max_conj_syllables,
                     max_abs_exponent=max_abs_exponent)
    if lower == INF:
        return result(None)
    words = enumerate_words(group, max_conj_syllables, max_abs_exponent)
    conj_words = [g.conj(x) for x in words]
    first_index = {}
    for j, c in enumerate(conj_words):
        first_index.setdefault(c, j)
    identity = group.identity()
    for k in range(lower, max_k + 1, lower):
        if k == 1:
            continue  # g itself is nontrivial
        fn = partial(_search_chunk, g, words, conj_words, first_index, k)
        if k == 2:
            hit = fn((0, len(words)))
        else:
            hit = _parallel.first_hit(fn, _parallel.chunked(len(words), jobs), jobs)
        if hit is not None:
            xs = (identity,) + tuple(words[j] for j in hit)
            return result(certify(GTCertificate(group, g, xs)))
    return result(None)


# ---------------------------------------------------------------------------
# constructors used by the corpus and examples

def torsion_certificate(g: Word) -> GTCertificate:
    """k = order trivial-conjugator certificate for g conjugate into Z/n."""
    hit = conjugate_into_factor(g)
    if hit is None or not g.group.orders[hit[0]]:
        raise NotConjugateIntoFactorError(f"{format_word(g)} is not conjugate into a finite factor")
    i, _, e = hit
    n = g.group.orders[i]
    k = n // math.gcd(n, e)
    return certify(GTCertificate(g.group, g, (g.group.identity(),) * k))


def lens_certificate(p: int, q: int) -> GTCertificate:
    """Certificate of length lcm(p, q) for ab in Z/p * Z/q.

    The q-block (ab)(b^{q-1} ab b^{1-q}) ... (b ab b^-1) equals a^q; repeating
    it p / gcd(p, q) times kills a^q.
    """
    group = GroupSpec.of(p, q)
    g = parse_word("a b", group)
    b = group.gen(1)
    block = tuple(b ** (-j % q) for j in range(q))
    reps = p // math.gcd(p, q)
    return certify(GTCertificate(group, g, block * reps))


# ---------------------------------------------------------------------------
# file format

HEADER = "gtcert v1"


def format_certificate(cert: GTCertificate) -> str:
    lines = [HEADER, f"group: {cert.group}", f"g: {format_word(cert.g)}", f"k: {cert.k}"]
    lines += [f"x: {format_word(x)}" for x in cert.conjugators]
    return "\n".join(lines) + "\n"


def _field(line, name, lineno):
    prefix = name + ":"
    if not line.startswith(prefix):
        raise ParseError(f"line {lineno}: expected '{prefix}'")
    return line[len(prefix):].strip()


def parse_certificate(text: str) -> GTCertificate:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) < 5 or lines[0].strip() != HEADER:
        raise ParseError("not a 'gtcert v1' file")
    group = parse_group(_field(lines[1], "group", 2))
    g = parse_word(_field(lines[2], "g", 3), group)
    try:
        k = int(_field(lines[3], "k", 4))
    except ValueError as exc:
        raise ParseError("line 4: k must be an integer") from exc
    body = lines[4:]
    if k < 1 or len(body) != k:
        raise ParseError(f"k={k} but {len(body)} conjugator lines")
    xs = tuple(parse_word(_field(line, "x", 5 + j), group) for j, line in enumerate(body))
    if g.is_identity:
        raise TrivialInputError("certificate element is the identity")
    return GTCertificate(group, g, xs)
