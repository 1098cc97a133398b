"""Counting quasimorphisms on free-product normal forms.

``phi_w(g) = c_w(g) - c_{w^-1}(g)`` where ``c_u(v)`` counts overlapping
occurrences of the letter expansion of ``u`` inside that of ``v``. Letters of
an infinite factor are signed unit letters; a finite-cyclic syllable is one
letter keyed by its residue. With this expansion the expansion of ``g^-1`` is
the reversed inverted expansion of ``g``, so ``phi_w(g^-1) = -phi_w(g)``
exactly and the junction argument for Brooks counting functions bounds the
defect by ``3 |w|``.

Every lower bound derived here is conditional on the configured defect bound
``D`` dominating both the defect of ``phi_w`` and that of its
homogenization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DefectViolationError, GroupMismatchError, ParseError, TrivialInputError
from .words import (INF, GroupSpec, Word, abelian_order, invert, letter_expansion,
                    letter_length, letters, multiply, parse_word, power, reduce)

DEFAULT_N = 256
DEFECT_FACTOR = 6


@dataclass(frozen=True)
class CountingQM:
    w: Word
    defect_bound: Fraction = None

    def __post_init__(self):
        if self.w.is_identity:
            raise TrivialInputError("counting quasimorphism of the identity")
        if self.defect_bound is None:
            object.__setattr__(self, "defect_bound",
                               Fraction(DEFECT_FACTOR * letter_length(self.w)))
        else:
            object.__setattr__(self, "defect_bound", Fraction(self.defect_bound))
        if self.defect_bound <= 0:
            raise ValueError("defect bound must be positive")

    @property
    def group(self) -> GroupSpec:
        return self.w.group

    def __str__(self):
        return f"{self.w}:{self.defect_bound}"


@dataclass(frozen=True)
class Interval:
    center: Fraction
    radius: Fraction

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("negative radius")

    @property
    def lo(self):
        return self.center - self.radius

    @property
    def hi(self):
        return self.center + self.radius

    def contains(self, x) -> bool:
        return abs(Fraction(x) - self.center) <= self.radius

    def intersects(self, other: "Interval") -> bool:
        return abs(self.center - other.center) <= self.radius + other.radius

    def scaled(self, m) -> "Interval":
        m = Fraction(m)
        return Interval(self.center * m, self.radius * abs(m))

    def __neg__(self):
        return Interval(-self.center, self.radius)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


# ---------------------------------------------------------------------------
# evaluation

class _Patterns:
    """Packed letter patterns of w and w^-1 for each family member."""

    def __init__(self, family: Sequence[CountingQM]):
        pats = []
        for phi in family:
            pats.append(letter_expansion(phi.w))
            pats.append(letter_expansion(invert(phi.w)))
        self.flat, self.offsets = _kernels.pack(pats)
        self.size = len(family)

    def values(self, text: np.ndarray) -> np.ndarray:
        if self.size == 0:
            return np.zeros(0, dtype=np.int64)
        counts = _kernels.count_many(text, self.flat, self.offsets)
        return counts[0::2] - counts[1::2]


def _check_family(family, g):
    for phi in family:
        if phi.group != g.group:
            raise GroupMismatchError(f"quasimorphism on {phi.group}, word in {g.group}")


def evaluate_family(family: Sequence[CountingQM], g: Word) -> list:
    _check_family(family, g)
    return [int(v) for v in _Patterns(family).values(letter_expansion(g))]


def evaluate(phi: CountingQM, g: Word) -> int:
    return evaluate_family([phi], g)[0]


def homogenize_family(family: Sequence[CountingQM], g: Word, N: int = DEFAULT_N,
                      patterns: _Patterns = None) -> list:
    """Certified enclosures of the homogenized values at g.

    Uses |phi_bar(g) - phi(g^N)/N| <= D(phi)/N.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    _check_family(family, g)
    patterns = patterns or _Patterns(family)
    vals = patterns.values(letter_expansion(power(g, N)))
    return [Interval(Fraction(int(v), N), phi.defect_bound / N)
            for v, phi in zip(vals, family)]


def homogenize(phi: CountingQM, g: Word, N: int = DEFAULT_N) -> Interval:
    return homogenize_family([phi], g, N)[0]


# ---------------------------------------------------------------------------
# defect and axiom checks

def defect_sample(phi: CountingQM, pairs: Iterable) -> Fraction:
    """Largest observed |phi(gh) - phi(g) - phi(h)|; raises if it beats D."""
    pats = _Patterns([phi])
    worst = 0
    seen = False
    for g, h in pairs:
        _check_family([phi], g)
        _check_family([phi], h)
        seen = True
        d = abs(int(pats.values(letter_expansion(multiply(g, h)))[0])
                - int(pats.values(letter_expansion(g))[0])
                - int(pats.values(letter_expansion(h))[0]))
        worst = max(worst, d)
    if not seen:
        raise ValueError("defect_sample needs at least one pair")
    worst = Fraction(worst)
    if worst > phi.defect_bound:
        raise DefectViolationError(
            f"observed defect {worst} exceeds configured bound {phi.defect_bound} for {phi.w}")
    return worst


def defect_sample_family(family: Sequence[CountingQM], pairs: Sequence) -> list:
    """Per-member defect maxima over one sample; raises on the first violation."""
    pats = _Patterns(family)
    worst = np.zeros(len(family), dtype=np.int64)
    for g, h in pairs:
        d = np.abs(pats.values(letter_expansion(multiply(g, h)))
                   - pats.values(letter_expansion(g))
                   - pats.values(letter_expansion(h)))
        np.maximum(worst, d, out=worst)
    out = [Fraction(int(v)) for v in worst]
    for phi, v in zip(family, out):
        if v > phi.defect_bound:
            raise DefectViolationError(
                f"observed defect {v} exceeds configured bound {phi.defect_bound} for {phi.w}")
    return out


CHECKS = ("antisymmetry", "class-function", "homogeneity", "refinement")


@dataclass
class AxiomReport:
    """Per-sample outcome of the interval checks; failures list (sample, quasimorphism, check)."""

    samples: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self):
        yield f"samples: {self.samples}"
        yield f"checks: {self.checks}"
        yield f"failures: {len(self.failures)}"
        for idx, w, check in self.failures:
            yield f"fail: sample={idx} qm={w} check={check}"


def axiom_checks(family, samples: Iterable, N: int = DEFAULT_N, m: int = 2,
                 raise_on_failure: bool = True) -> AxiomReport:
    """Necessary conditions for the configured bounds, on certified intervals.

    ``samples`` holds pairs (g, h). For each member: phi_bar(g^-1) against
    -phi_bar(g); phi_bar(h g h^-1) against phi_bar(g); phi_bar(g^m) against
    m phi_bar(g); and the N- against the 2N-interval of g.
    """
    if isinstance(family, CountingQM):
        family = [family]
    family = list(family)
    pats = _Patterns(family)
    report = AxiomReport()
    for idx, (g, h) in enumerate(samples):
        _check_family(family, g)
        base = homogenize_family(family, g, N, pats)
        inv = homogenize_family(family, invert(g), N, pats)
        cls = homogenize_family(family, g.conj(h), N, pats)
        pow_m = homogenize_family(family, power(g, m), N, pats)
        fine = homogenize_family(family, g, 2 * N, pats)
        report.samples += 1
        for j, phi in enumerate(family):
            results = (
                inv[j].intersects(-base[j]),
                cls[j].intersects(base[j]),
                pow_m[j].intersects(base[j].scaled(m)),
                fine[j].intersects(base[j]),
            )
            report.checks += len(results)
            for name, ok in zip(CHECKS, results):
                if not ok:
                    report.failures.append((idx, str(phi.w), name))
    if raise_on_failure and report.failures:
        raise DefectViolationError(
            f"{len(report.failures)} interval check(s) failed", report=report)
    return report


# ---------------------------------------------------------------------------
# families and Bavard lower bounds

def default_family(group: GroupSpec, lengths=(2, 3)) -> list:
    """Reduced words of the given letter lengths, one per inverse pair,
    skipping self-inverse words (their counting function vanishes)."""
    alphabet = letters(group)
    orders = group.orders
    chosen = []
    seen = set()
    for length in sorted(lengths):
        layer = [(a,) for a in alphabet]
        for _ in range(length - 1):
            nxt = []
            for seq in layer:
                last = seq[-1].syllables[0]
                for a in alphabet:
                    i, e = a.syllables[0]
                    if i == last[0] and (orders[i] or e != last[1]):
                        continue
                    nxt.append(seq + (a,))
            layer = nxt
        for seq in layer:
            w = reduce([s.syllables[0] for s in seq], group)
            if w in seen:
                continue
            wi = invert(w)
            seen.add(w)
            seen.add(wi)
            if wi == w:
                continue
            chosen.append(CountingQM(w))
    return chosen


def parse_family(text: str, group: GroupSpec) -> list:
    """``"ab:6, aba:9"`` -> counting quasimorphisms; the ``:D`` suffix is optional."""
    family = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        word, _, bound = item.partition(":")
        try:
            d = Fraction(bound.strip()) if bound.strip() else None
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad defect bound {bound!r}") from exc
        w = parse_word(word, group)
        if w.is_identity:
            raise ParseError(f"quasimorphism word {word!r} is trivial")
        family.append(CountingQM(w, d))
    return family


def bavard_lower(g: Word, family: Sequence[CountingQM], N: int = DEFAULT_N):
    """Lower bound for scl(g) from a finite family (``math.inf`` if no power of
    g is a product of commutators).

    With k0 the abelianization order, the bound is
    max_phi max(0, (|c| - r) / 2D) / k0 over the certified intervals
    [c - r, c + r] of phi_bar(g^k0).
    """
    if g.is_identity:
        raise TrivialInputError("scl bound of the identity")
    k0 = abelian_order(g)
    if k0 == INF:
        return INF
    family = list(family)
    if not family:
        return Fraction(0)
    gk = power(g, k0)
    best = Fraction(0)
    for phi, iv in zip(family, homogenize_family(family, gk, N)):
        best = max(best, (abs(iv.center) - iv.radius) / (2 * phi.defect_bound))
    return best / k0


def bavard_center_estimate(g: Word, family: Sequence[CountingQM], total_power: int):
    """max_phi |phi(g^T)| / (2 D T): the radius-free estimate at total power T."""
    family = list(family)
    if not family:
        return Fraction(0)
    vals = evaluate_family(family, power(g, total_power))
    return max(Fraction(abs(v), 2 * total_power) / phi.defect_bound
               for v, phi in zip(vals, family))
