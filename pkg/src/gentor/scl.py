"""scl bounds and the decision pipeline for generalized torsion in free products."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .certificates import (GTCertificate, OrderSearch, format_certificate,
                           search_order, torsion_certificate)
from .errors import DefectViolationError, NotVerifiedError, PreconditionError, TrivialInputError
from .quasimorphisms import DEFAULT_N, bavard_lower, default_family
from .words import INF, GroupSpec, Word, abelian_order, conjugate_into_factor, format_word

# reason tags carried by NotGT verdicts
REASON_INFINITE_ORDER = "infinite-abelian-order"
REASON_CHEN = "chen-scl-bound"
REASON_BIORDERABLE = "biorderable-factor"


class Budget(NamedTuple):
    max_k: int = 12
    max_conj_syllables: int = 2
    max_abs_exponent: int = 2


def format_rational(x) -> str:
    if x == INF:
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class SclBounds:
    lower: object
    upper: object
    provenance: list = field(default_factory=list)

    def __post_init__(self):
        if self.upper != INF and self.lower > self.upper:
            raise DefectViolationError(
                f"scl lower bound {self.lower} exceeds upper bound {self.upper}; "
                "some configured defect bound is too small")

    @property
    def gap(self):
        if self.upper == INF:
            return INF
        return self.upper - self.lower

    def lines(self):
        yield f"scl_lower: {format_rational(self.lower)}"
        yield f"scl_upper: {format_rational(self.upper)}"
        yield "provenance: " + ", ".join(self.provenance)


# ---------------------------------------------------------------------------
# verdicts

@dataclass(frozen=True)
class Torsion:
    order: int
    certificate: GTCertificate
    exit_code = 0


@dataclass(frozen=True)
class GTFound:
    certificate: GTCertificate
    search: OrderSearch
    exit_code = 0


@dataclass(frozen=True)
class NotGT:
    reason: str
    exit_code = 1


@dataclass(frozen=True)
class Unknown:
    bounds: SclBounds
    search: OrderSearch
    exit_code = 2


def _cert_line(cert):
    return "cert: " + " ; ".join([format_word(cert.g)] + [format_word(x) for x in cert.conjugators])


def format_verdict(v) -> str:
    name = type(v).__name__
    lines = [f"verdict: {name}"]
    if isinstance(v, Torsion):
        lines += [f"order: {v.order}", _cert_line(v.certificate)]
    elif isinstance(v, GTFound):
        lines += [f"order: {v.certificate.k}", f"lower_bound: {v.search.lower_bound}",
                  _cert_line(v.certificate)]
        if not v.search.exact:
            lines.append(v.search.budget_line())
    elif isinstance(v, NotGT):
        lines.append(f"reason: {v.reason}")
    else:
        lines += list(v.bounds.lines())
        lines.append(v.search.budget_line())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bounds and gates

def upper_from_certificate(cert: GTCertificate) -> Fraction:
    """scl(g) <= (k - 2) / 2k for a certificate of length k."""
    if not cert.verified:
        raise NotVerifiedError("certificate has not been verified")
    return Fraction(cert.k - 2, 2 * cert.k)


def infinite_order_gate(group: GroupSpec, g: Word) -> Optional[NotGT]:
    if abelian_order(g) == INF:
        return NotGT(REASON_INFINITE_ORDER)
    return None


def chen_gate(group: GroupSpec, g: Word) -> NotGT:
    """Every nontrivial element of a free product of infinite cyclic groups is refuted.

    Not conjugate into a factor: scl >= 1/2 contradicts the < 1/2 bound any
    certificate would give. Conjugate into a factor: the factor is Z, which is
    bi-orderable.
    """
    if not group.torsion_free:
        raise PreconditionError("chen gate needs every factor torsion-free")
    if g.is_identity:
        raise TrivialInputError("identity")
    if conjugate_into_factor(g) is None:
        return NotGT(REASON_CHEN)
    return NotGT(REASON_BIORDERABLE)


def _finite_factor_hit(g):
    hit = conjugate_into_factor(g)
    if hit is not None and g.group.orders[hit[0]]:
        return hit
    return None


def classify(group: GroupSpec, g: Word, budget: Budget = Budget(), family=None,
             N: int = DEFAULT_N, jobs: int = 1):
    """First applicable of: infinite-order gate, Chen gate, torsion, bounded
    search, and finally Unknown with the scl bound ledger."""
    if g.is_identity:
        raise TrivialInputError("identity")
    verdict = infinite_order_gate(group, g)
    if verdict is not None:
        return verdict
    if group.torsion_free:
        return chen_gate(group, g)
    if _finite_factor_hit(g) is not None:
        cert = torsion_certificate(g)
        return Torsion(cert.k, cert)
    search = search_order(group, g, *budget, jobs=jobs)
    if search.certificate is not None:
        return GTFound(search.certificate, search)
    return Unknown(_assemble(g, family, N, search), search)


def _assemble(g, family, N, search, cert=None):
    fam = default_family(g.group) if family is None else list(family)
    lower = bavard_lower(g, fam, N)
    provenance = [f"bavard(family={len(fam)}, N={N})"]
    upper = INF
    if lower == INF:
        return SclBounds(INF, INF, ["infinite-abelian-order"])
    if _finite_factor_hit(g) is not None:
        upper = Fraction(0)
        provenance.append("torsion")
    else:
        known = [c for c in (cert, search.certificate if search is not None else None) if c]
        if known:
            best = min(known, key=lambda c: c.k)
            upper = upper_from_certificate(best)
            provenance.append(f"certificate(k={best.k})")
    return SclBounds(lower, upper, provenance)


def bounds(group: GroupSpec, g: Word, family=None, budget: Budget = Budget(),
           N: int = DEFAULT_N, jobs: int = 1, certificate: GTCertificate = None) -> SclBounds:
    """Bavard lower bound plus the best upper bound over the given certificate
    and a bounded search (inf if neither yields one)."""
    if g.is_identity:
        raise TrivialInputError("identity")
    search = None
    # over torsion-free factors no certificate exists, so searching is pointless
    if not group.torsion_free and abelian_order(g) != INF and _finite_factor_hit(g) is None:
        search = search_order(group, g, *budget, jobs=jobs)
    return _assemble(g, family, N, search, certificate)
