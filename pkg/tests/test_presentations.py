import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from gentor.errors import (BadParamError, BadSlopeError, BadWordError, NoPeripheralError,
                           NotKnotLikeError, ParseError)
from gentor.presentations import (Presentation, Step, alexander_polynomial, check_derivation,
                                  connected_sum, dehn_filling, format_derivation,
                                  format_polynomial, format_presentation, h1_order, homology_h1,
                                  meridian_gt_search, parse_derivation, parse_presentation,
                                  prove_trivial, simplify, smith_normal_form,
                                  twist_knot_presentation, twist_sum)
from gentor.presentations.core import commutator, exponent_sums, inverse
from gentor.presentations.meridian import conjugate_product, free_words

T = sympy.Symbol("t")

int_matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def cofactor_det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(len(M)))


def pres(text):
    return parse_presentation(text)


class TestSmith:
    @pytest.mark.parametrize("M, diag, free", [
        ([[2]], (2,), 0), ([[2, 0], [0, 3]], (1, 6), 0), ([[0]], (), 1),
        ([[1, 2, 3], [4, 5, 6]], (1, 3), 1),
    ])
    def test_examples(self, M, diag, free):
        snf = smith_normal_form(M)
        assert snf.diagonal == diag and snf.free_rank == free

    def test_empty_matrix(self):
        assert smith_normal_form([], 3) == ((), 3)

    @given(int_matrices)
    def test_matches_sympy_invariant_factors(self, M):
        snf = smith_normal_form(M)
        expected = [abs(int(d)) for d in invariant_factors(sympy.Matrix(M)) if d != 0]
        assert list(snf.diagonal) == expected
        assert all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:]))
        assert snf.free_rank == len(M[0]) - sympy.Matrix(M).rank()

    @given(st.integers(1, 4).flatmap(lambda n: st.lists(
        st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_square_product_is_abs_determinant(self, M):
        det = cofactor_det(M)
        snf = smith_normal_form(M)
        if det == 0:
            assert snf.free_rank > 0
        else:
            assert snf.free_rank == 0 and math.prod(snf.diagonal) == abs(det)


class TestHomology:
    def test_cyclic(self):
        assert str(homology_h1(pres("pres v1\ngens: x\nrel: x^2\n"))) == "Z/2"
        assert str(homology_h1(pres("pres v1\ngens: x\n"))) == "Z"
        assert str(homology_h1(pres("pres v1\ngens: x y\nrel: x y\n"))) == "Z"

    @pytest.mark.parametrize("p", range(1, 6))
    def test_twist_knots_have_h1_z(self, p):
        P = twist_knot_presentation(p)
        assert len(P.gens) == 2 and len(P.relators) == 1
        assert smith_normal_form([exponent_sums(r, 2) for r in P.relators]) == ((1,), 1)
        assert not sum(exponent_sums(P.lam, 2))

    @pytest.mark.parametrize("ps", [(1,), (2,), (1, 1), (1, 2), (1, 1, 1)])
    def test_filling_gives_cyclic_h1(self, ps):
        P = twist_sum(list(ps))
        assert len(P.gens) == 2 * len(ps) and len(P.relators) == 2 * len(ps) - 1
        assert str(homology_h1(P)) == "Z"
        assert str(homology_h1(dehn_filling(P, 0))) == "Z"
        assert str(homology_h1(dehn_filling(P, 1))) == "0"
        for m in range(2, 9):
            Q = dehn_filling(P, m)
            assert str(homology_h1(Q)) == f"Z/{m}"
            assert h1_order(Q, Q.mu) == m

    def test_slope_denominator(self):
        assert str(homology_h1(dehn_filling(twist_sum([1]), 5, 2))) == "Z/5"

    def test_errors(self):
        bare = pres("pres v1\ngens: x\nrel: x^2\n")
        with pytest.raises(NoPeripheralError):
            dehn_filling(bare, 2)
        with pytest.raises(NoPeripheralError):
            connected_sum(bare, twist_knot_presentation(1))
        with pytest.raises(BadSlopeError):
            dehn_filling(twist_sum([1]), 4, 2)
        with pytest.raises(BadSlopeError):
            dehn_filling(twist_sum([1]), 0, 0)
        with pytest.raises(BadParamError):
            twist_knot_presentation(0)


class TestAlexander:
    def test_unknot_like(self):
        assert alexander_polynomial(pres("pres v1\ngens: x\n")) == (1,)
        with pytest.raises(NotKnotLikeError):
            alexander_polynomial(pres("pres v1\ngens: x\nrel: x^2\n"))

    @pytest.mark.parametrize("p", range(1, 6))
    def test_twist_knot_polynomials(self, p):
        assert alexander_polynomial(twist_knot_presentation(p)) == (p, -(2 * p + 1), p)

    def test_pairwise_distinct(self):
        polys = {alexander_polynomial(twist_knot_presentation(p)) for p in range(1, 6)}
        assert len(polys) == 5

    @pytest.mark.parametrize("ps", [(1, 2), (2, 3), (1, 1, 2)])
    def test_connected_sum_multiplies(self, ps):
        expected = sympy.Integer(1)
        for p in ps:
            expected *= p * T ** 2 - (2 * p + 1) * T + p
        coeffs = tuple(int(c) for c in reversed(sympy.Poly(sympy.expand(expected), T).all_coeffs()))
        assert alexander_polynomial(twist_sum(list(ps))) == coeffs

    @pytest.mark.parametrize("ps", [(1,), (3,), (1, 2)])
    def test_tietze_invariance(self, ps):
        P = twist_sum(list(ps))
        Q = simplify(P)
        assert len(Q.gens) < len(P.gens) or len(ps) == 1
        assert alexander_polynomial(Q) == alexander_polynomial(P)
        assert homology_h1(simplify(dehn_filling(P, 3))) == homology_h1(dehn_filling(P, 3))

    def test_format(self):
        assert format_polynomial((2, -5, 2)) == "2*t^2 - 5*t + 2"
        assert format_polynomial((1,)) == "1"
        assert format_polynomial(()) == "0"
        assert format_polynomial((-1, 0, 1)) == "t^2 - 1"


class TestPresentationIO:
    @pytest.mark.parametrize("ps, m", [((1,), None), ((1, 2), 5), ((2, 1, 1), 3)])
    def test_roundtrip(self, ps, m):
        P = twist_sum(list(ps))
        if m:
            P = dehn_filling(P, m)
        text = format_presentation(P)
        assert parse_presentation(text) == P
        assert format_presentation(parse_presentation(text)) == text

    @pytest.mark.parametrize("text", [
        "", "pres v2\ngens: x\n", "pres v1\nrel: x\n", "pres v1\ngens: x\nrel: z\n",
        "pres v1\ngens: x\nmu: x\n", "pres v1\ngens: x y\nmu: x\nlambda: x\n",
        "pres v1\ngens: x x\n", "pres v1\ngens: X\n",
    ])
    def test_rejects_malformed(self, text):
        with pytest.raises(ParseError):
            parse_presentation(text)


class TestProver:
    def test_examples(self):
        P = twist_knot_presentation(1)
        r = P.relators[0]
        d = prove_trivial(P, r)
        assert len(d) == 1 and check_derivation(P.relators, r, d.steps)
        assert len(prove_trivial(P, ())) == 0
        with pytest.raises(BadWordError):
            prove_trivial(P, (3,))

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_peripheral_commute(self, p):
        P = twist_knot_presentation(p)
        u = commutator(P.mu, P.lam)
        d = prove_trivial(P, u)
        assert d is not None and check_derivation(P.relators, u, d.steps)

    def test_never_claims_free_word_trivial(self):
        free = pres("pres v1\ngens: x y\nrel: x^2\n")
        assert prove_trivial(free, free.parse("x y X Y"), budget=2000) is None
        assert prove_trivial(free, free.parse("y"), budget=2000) is None

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(0, 20)),
                    min_size=1, max_size=4),
           st.integers(0, 2 ** 16))
    def test_products_of_relator_conjugates(self, parts, seed):
        # random products of conjugated relators are trivial; every hit must replay
        P = dehn_filling(twist_knot_presentation(1), 2)
        r = random.Random(seed)
        word = []
        for ri, sign, _ in parts:
            rel = P.relators[ri % len(P.relators)]
            rel = rel if sign else inverse(rel)
            x = tuple(r.choice([1, -1, 2, -2]) for _ in range(r.randint(0, 2)))
            word += list(x) + list(rel) + list(inverse(x))
        d = prove_trivial(P, tuple(word), budget=3000)
        if d is not None:
            assert check_derivation(P.relators, tuple(word), d.steps)

    def test_derivation_roundtrip_and_corruption(self):
        P = twist_knot_presentation(2)
        u = commutator(P.mu, P.lam)
        d = prove_trivial(P, u)
        text = format_derivation(P, d)
        back = parse_derivation(P, text)
        assert back == d and format_derivation(P, back) == text
        bad = [Step(s.rotate, s.relator, s.sign, (s.shift + 1) % len(P.relators[s.relator]))
               for s in d.steps]
        assert not check_derivation(P.relators, u, bad)
        assert not check_derivation(P.relators, u, d.steps[:-1])
        assert not check_derivation(P.relators, u + (1,), d.steps)
        assert not check_derivation(P.relators, u, [Step(0, 5, 1, 0)])
        with pytest.raises(ParseError):
            parse_derivation(P, text.replace("steps: ", "steps: 9"))


class TestMeridian:
    def test_free_words_shortlex(self):
        ws = free_words(2, 2)
        assert ws[:5] == [(), (1,), (-1,), (2,), (-2,)]
        assert len(ws) == 1 + 4 + 12

    def test_conjugate_product(self):
        assert conjugate_product((1,), [(), (2,)]) == (1, 2, 1, -2)

    def test_small_instance_terminates(self):
        P = dehn_filling(twist_sum([1]), 2)
        res = meridian_gt_search(P, 2, budget=500, max_conj_len=1)
        assert res.h1_order == 2 and res.candidates == 5
        assert res.budget_line().startswith("searched: k<=2 conj-len<=1")
        if res.record is not None:
            assert res.record.k % 2 == 0 and res.record.replay()

    def test_m1_is_sound(self):
        P = dehn_filling(twist_sum([1]), 1)
        res = meridian_gt_search(P, 1, budget=2000, max_conj_len=1)
        assert res.h1_order == 1
        if res.record is not None:
            assert res.record.replay()

    def test_record_for_cyclic_group(self):
        # <x | x^3>: meridian x, filling-free toy case where the certificate exists
        P = Presentation(("x", "y"), ((1, 1, 1), (2,)), ((1,), ()))
        res = meridian_gt_search(P, 3, budget=100, max_k=3, max_conj_len=1)
        assert res.record is not None and res.record.k == 3 and res.record.replay()

    def test_requires_peripheral(self):
        with pytest.raises(NoPeripheralError):
            meridian_gt_search(pres("pres v1\ngens: x\nrel: x^2\n"), 2)
