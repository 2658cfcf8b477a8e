import random
from fractions import Fraction

import pytest

from carlitz.groebner import (
    GrevLex,
    GrLex,
    Lex,
    groebner_basis,
    hilbert_series_data,
    term_order,
)
from carlitz.multipoly import MultiPoly, QQ, aring, parse_poly, to_text

R3 = aring(2)  # QQ[a0, a1, a2]


def P(text, ring=R3):
    return parse_poly(text, ring)


class TestTermOrderPacking:
    @pytest.mark.parametrize("cls", [GrevLex, Lex, GrLex])
    def test_pack_unpack_roundtrip(self, cls):
        rng = random.Random(17)
        order = cls(4)
        for _ in range(300):
            e = tuple(rng.randrange(12) for _ in range(4))
            assert order.unpack(order.pack(e)) == e

    @pytest.mark.parametrize("cls", [GrevLex, Lex, GrLex])
    def test_mul_div_divides_lcm(self, cls):
        rng = random.Random(23)
        order = cls(3)
        for _ in range(400):
            e1 = tuple(rng.randrange(7) for _ in range(3))
            e2 = tuple(rng.randrange(7) for _ in range(3))
            k1, k2 = order.pack(e1), order.pack(e2)
            prod = tuple(a + b for a, b in zip(e1, e2))
            assert order.unpack(order.mul(k1, k2)) == prod
            assert order.div(order.mul(k1, k2), k2) == k1
            divides = all(a <= b for a, b in zip(e1, e2))
            assert order.divides(k1, k2) == divides
            lcm = tuple(max(a, b) for a, b in zip(e1, e2))
            assert order.unpack(order.lcm(k1, k2)) == lcm
            assert order.degree(k1) == sum(e1)

    def test_grevlex_comparison(self):
        order = GrevLex(3)
        # degree dominates
        assert order.pack((2, 0, 0)) > order.pack((1, 0, 0))
        # within a degree the first variable wins
        assert order.pack((1, 1, 0)) > order.pack((0, 2, 0))
        # the last variable is the strongest downward tiebreaker
        assert order.pack((0, 2, 0)) > order.pack((0, 1, 1))

    def test_lex_comparison(self):
        order = Lex(3)
        assert order.pack((1, 0, 0)) > order.pack((0, 5, 5))

    def test_unknown_order(self):
        from carlitz.errors import InvalidInputError

        with pytest.raises(InvalidInputError):
            term_order("weird", 3)


class TestBuchberger:
    def test_principal_ideal(self):
        gb = groebner_basis([P("a0")], R3)
        assert [to_text(g) for g in gb.polynomials] == ["a0"]

    def test_already_reduced_pair(self):
        gb = groebner_basis([P("a0*a1"), P("a0*a2")], R3)
        assert {to_text(g) for g in gb.polynomials} == {"a0*a1", "a0*a2"}

    def test_new_element_appears(self):
        gb = groebner_basis([P("a0^2"), P("a0*a1 + a1^2")], R3)
        assert {to_text(g) for g in gb.polynomials} == \
            {"a0^2", "a0*a1 + a1^2", "a1^3"}

    def test_unit_ideal_detection(self):
        gb = groebner_basis([P("a0"), P("a0 + 1")], R3)
        assert gb.is_unit_ideal()
        assert [to_text(g) for g in gb.polynomials] == ["1"]

    def test_empty_input(self):
        gb = groebner_basis([R3.zero()], R3)
        assert gb.polynomials == []
        assert not gb.is_unit_ideal()

    def test_uniqueness_under_permutation_and_rerun(self):
        rng = random.Random(29)
        for trial in range(12):
            gens = [_random_homog(R3, rng) for _ in range(3)]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            base = [to_text(g) for g in groebner_basis(gens, R3).polynomials]
            for _ in range(3):
                perm = gens[:]
                rng.shuffle(perm)
                again = [to_text(g)
                         for g in groebner_basis(perm, R3).polynomials]
                assert again == base

    def test_normal_form_is_linear(self):
        rng = random.Random(37)
        gb = groebner_basis([P("a0^2 - a1*a2"), P("a1^2 - a0*a2")], R3)
        for _ in range(40):
            f = _random_poly(R3, rng)
            g = _random_poly(R3, rng)
            assert gb.normal_form(f + g) == \
                gb.normal_form(f) + gb.normal_form(g)

    def test_normal_form_exact_rational(self):
        gb = groebner_basis([P("2*a0 - a1")], R3)
        nf = gb.normal_form(P("a0"))
        assert nf == P("1/2*a1")

    def test_generators_reduce_to_zero(self):
        gens = [P("a0^2 - a1*a2"), P("a0*a1 - a2^2")]
        gb = groebner_basis(gens, R3)
        for g in gens:
            assert gb.reduces_to_zero(g)

    def test_ring_mismatch(self):
        from carlitz.errors import InvalidInputError

        other = aring(3)
        with pytest.raises(InvalidInputError):
            groebner_basis([other.var("a0")], R3)

    def test_timeout_is_explicit(self):
        from carlitz.errors import GroebnerTimeout

        gens = [P("a0^2"), P("a0*a1 + a1^2")]
        with pytest.raises(GroebnerTimeout):
            groebner_basis(gens, R3, timeout=0.0)
        # and a generous limit changes nothing
        gb = groebner_basis(gens, R3, timeout=60.0)
        assert {to_text(g) for g in gb.polynomials} == \
            {"a0^2", "a0*a1 + a1^2", "a1^3"}


class TestAgainstSympy:
    def test_random_ideals_match(self):
        sympy = pytest.importorskip("sympy")
        rng = random.Random(41)
        xs = sympy.symbols("a0 a1 a2")

        def to_sympy(f):
            expr = sympy.Integer(0)
            for e, c in f.terms.items():
                term = sympy.Rational(c.numerator, c.denominator)
                for v, ee in zip(xs, e):
                    term *= v ** ee
                expr += term
            return expr

        for trial in range(10):
            gens = [_random_poly(R3, rng) for _ in range(rng.randrange(2, 4))]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            mine = groebner_basis(gens, R3)
            theirs = sympy.groebner([to_sympy(g) for g in gens], *xs,
                                    order="grevlex")
            mine_monic = sorted(_monic_text(g) for g in mine.polynomials)
            theirs_monic = sorted(
                _monic_text(_from_sympy(p, xs)) for p in theirs.exprs)
            assert mine_monic == theirs_monic, f"trial {trial}"

    def test_lex_order_matches(self):
        sympy = pytest.importorskip("sympy")
        xs = sympy.symbols("a0 a1 a2")
        gens = [P("a0^2 + a1*a2 - 1"), P("a0*a1 - a2")]
        mine = groebner_basis(gens, R3, order="lex")
        theirs = sympy.groebner([P_to_sympy(g, xs) for g in gens], *xs,
                                order="lex")
        assert sorted(_monic_text(g) for g in mine.polynomials) == \
            sorted(_monic_text(_from_sympy(p, xs)) for p in theirs.exprs)


class TestHilbert:
    def test_hyperplane(self):
        R5 = aring(4)
        gb = groebner_basis([parse_poly("a0", R5)], R5)
        assert hilbert_series_data(gb.leading_exponents(), 5) == (4, 1)

    def test_monomial_pair(self):
        gb = groebner_basis([P("a0^2"), P("a1")], R3)
        assert hilbert_series_data(gb.leading_exponents(), 3) == (1, 2)

    def test_three_lines(self):
        gb = groebner_basis([P("a0*a1"), P("a0*a2"), P("a1*a2")], R3)
        assert hilbert_series_data(gb.leading_exponents(), 3) == (1, 3)

    def test_unit_ideal(self):
        assert hilbert_series_data([(0, 0, 0)], 3) == (-1, 0)

    def test_complete_intersection_degrees_multiply(self):
        import itertools

        for d1, d2 in itertools.product((1, 2, 3), repeat=2):
            lts = [(d1, 0, 0, 0), (0, d2, 0, 0)]
            krull, deg = hilbert_series_data(lts, 4)
            assert (krull, deg) == (2, d1 * d2)


def P_to_sympy(f, xs):
    import sympy

    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, ee in zip(xs, e):
            term *= v ** ee
        expr += term
    return expr


def _from_sympy(expr, xs):
    import sympy

    poly = sympy.Poly(expr, *xs)
    out = R3.zero()
    for mono, coeff in poly.terms():
        c = Fraction(int(coeff.p), int(coeff.q))
        out = out + MultiPoly(R3, {tuple(int(x) for x in mono): QQ.coerce(c)})
    return out


def _monic_text(f):
    from carlitz.multipoly import grevlex_key

    lead = max(f.terms, key=grevlex_key)
    inv = 1 / f.terms[lead]
    return to_text(f.scale(inv))


def _random_poly(ring, rng, max_terms=4, max_exp=2):
    f = ring.zero()
    for _ in range(rng.randrange(1, max_terms + 1)):
        e = tuple(rng.randrange(max_exp + 1) for _ in range(ring.nvars))
        c = Fraction(rng.randrange(-4, 5))
        if c:
            f = f + MultiPoly(ring, {e: QQ.coerce(c)})
    return f


def _random_homog(ring, rng, degree=2):
    f = ring.zero()
    for _ in range(rng.randrange(1, 4)):
        e = [0] * ring.nvars
        for _ in range(degree):
            e[rng.randrange(ring.nvars)] += 1
        c = Fraction(rng.randrange(-3, 4))
        if c:
            f = f + MultiPoly(ring, {tuple(e): QQ.coerce(c)})
    return f
