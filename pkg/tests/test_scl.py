from fractions import Fraction

import pytest
from hypothesis import given, settings

from gentor import scl
from gentor.certificates import GTCertificate, certify, lens_certificate, search_order
from gentor.errors import (DefectViolationError, NotVerifiedError, PreconditionError,
                           TrivialInputError)
from gentor.quasimorphisms import CountingQM
from gentor.words import INF, parse_group, parse_word

from conftest import words
from corpus import factor_corpus, lens_corpus

G23 = parse_group("Z/2 * Z/3")
F2 = parse_group("Z * Z")


def _cert_of_length(k):
    z = parse_group(f"Z/{k}")
    return certify(GTCertificate(z, parse_word("a", z), (z.identity(),) * k))


@pytest.mark.parametrize("k, expected", [(2, 0), (3, Fraction(1, 6)), (6, Fraction(1, 3))])
def test_upper_from_certificate(k, expected):
    assert scl.upper_from_certificate(_cert_of_length(k)) == expected


def test_upper_is_increasing_and_below_half():
    values = [scl.upper_from_certificate(_cert_of_length(k)) for k in range(2, 30)]
    assert values == sorted(values) and len(set(values)) == len(values)
    assert all(v < Fraction(1, 2) for v in values)


def test_upper_requires_verification():
    z = parse_group("Z/2")
    with pytest.raises(NotVerifiedError):
        scl.upper_from_certificate(GTCertificate(z, parse_word("a", z), (z.identity(),) * 2))


def test_infinite_order_gate():
    assert scl.infinite_order_gate(F2, parse_word("a", F2)).reason == scl.REASON_INFINITE_ORDER
    assert scl.infinite_order_gate(G23, parse_word("ab", G23)) is None
    assert scl.infinite_order_gate(F2, parse_word("a b A B", F2)) is None


def test_chen_gate():
    assert scl.chen_gate(F2, parse_word("a b A B", F2)).reason == scl.REASON_CHEN
    assert scl.chen_gate(F2, parse_word("b a^3 B", F2)).reason == scl.REASON_BIORDERABLE
    with pytest.raises(PreconditionError):
        scl.chen_gate(G23, parse_word("ab", G23))


class TestClassify:
    def test_examples(self):
        z2 = parse_group("Z/2")
        v = scl.classify(z2, parse_word("a", z2))
        assert isinstance(v, scl.Torsion) and v.order == 2
        v = scl.classify(G23, parse_word("ab", G23))
        assert isinstance(v, scl.GTFound) and v.certificate.k == 6 and v.certificate.verified
        v = scl.classify(F2, parse_word("a b A B", F2))
        assert isinstance(v, scl.NotGT)
        with pytest.raises(TrivialInputError):
            scl.classify(F2, F2.identity())

    @settings(max_examples=50, deadline=None)
    @given(words(F2, 6).filter(bool))
    def test_free_group_never_gt(self, g):
        v = scl.classify(F2, g)
        assert isinstance(v, scl.NotGT)
        assert v.reason in (scl.REASON_INFINITE_ORDER, scl.REASON_CHEN, scl.REASON_BIORDERABLE)

    def test_torsion_before_search(self):
        g = parse_group("Z/6 * Z")
        v = scl.classify(g, parse_word("b a^4 B", g))
        assert isinstance(v, scl.Torsion) and v.order == 3 and v.certificate.k == 3

    def test_unknown_carries_budget(self):
        v = scl.classify(G23, parse_word("ab", G23), scl.Budget(4, 1, 1))
        assert isinstance(v, scl.Unknown)
        text = scl.format_verdict(v)
        assert "searched: k<=4 conj-len<=1 max-exp<=1" in text
        assert "scl_upper: inf" in text and v.exit_code == 2

    def test_format(self):
        v = scl.classify(G23, parse_word("ab", G23))
        assert scl.format_verdict(v) == (
            "verdict: GTFound\norder: 6\nlower_bound: 6\n"
            "cert: a b ; 1 ; 1 ; 1 ; 1 ; b^2 ; a b^2\n")
        assert scl.format_verdict(scl.NotGT("chen-scl-bound")) == \
            "verdict: NotGT\nreason: chen-scl-bound\n"


class TestBounds:
    def test_ab_with_certificate(self):
        b = scl.bounds(G23, parse_word("ab", G23))
        assert b.upper == Fraction(1, 3)
        assert 0 <= b.lower <= Fraction(1, 3)
        assert b.provenance == ["bavard(family=4, N=256)", "certificate(k=6)"]

    def test_keeps_smallest_certificate(self):
        long_cert = lens_certificate(2, 3)
        doubled = certify(GTCertificate(G23, long_cert.g, long_cert.conjugators * 2))
        b = scl.bounds(G23, long_cert.g, certificate=doubled)
        assert b.upper == Fraction(1, 3)

    def test_infinite(self):
        b = scl.bounds(F2, parse_word("a", F2))
        assert b.lower == INF and b.upper == INF
        assert list(b.lines())[:2] == ["scl_lower: inf", "scl_upper: inf"]

    def test_torsion_upper_zero(self):
        b = scl.bounds(G23, parse_word("b", G23))
        assert b.upper == 0 and b.lower == 0

    def test_lower_above_upper_is_a_defect_violation(self):
        g = parse_word("ab", G23)
        tiny = [CountingQM(parse_word("ab", G23), Fraction(1, 100))]
        with pytest.raises(DefectViolationError):
            scl.bounds(G23, g, family=tiny)

    @pytest.mark.parametrize("cert", lens_corpus() + factor_corpus(8), ids=lambda c: str(c.g))
    def test_certificate_upper_dominates_lower(self, cert):
        b = scl.bounds(cert.group, cert.g, certificate=cert, budget=scl.Budget(2, 1, 1))
        assert b.lower <= scl.upper_from_certificate(cert)


def test_search_and_classify_deterministic():
    g = parse_word("ab", G23)
    assert scl.classify(G23, g) == scl.classify(G23, g, jobs=3)
    assert search_order(G23, g, 6, 2, 2) == search_order(G23, g, 6, 2, 2)
