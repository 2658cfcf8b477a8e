import random
from fractions import Fraction

import pytest

from carlitz.errors import (
    IncompatibleRingError,
    InvalidInputError,
    WindowSelectionError,
)
from carlitz.geometry import (
    IdealHandle,
    groebner,
    hilbert_data,
    ideal_nesting_check,
    is_complete_intersection,
    radical_membership,
    smallest_power_in_ideal,
    variety_ideal,
)
from carlitz.multipoly import MultiPoly, QQ, aring, parse_poly, specialize, to_text

R3 = aring(2)


def P(text, ring=R3):
    return parse_poly(text, ring)


class TestVarietyIdeal:
    def test_m2_i1_is_trace_hyperplane(self):
        handle = variety_ideal(2, 1)
        assert [to_text(g) for g in handle.generators] == ["a1 + a2"]
        assert handle.provenance["window_betas"] == [1]

    def test_m4_i1_degree3(self):
        handle = variety_ideal(4, 1)
        assert len(handle.generators) == 1
        assert handle.generators[0].total_degree() == 3

    def test_window_unavailable(self):
        with pytest.raises(WindowSelectionError) as exc:
            variety_ideal(4, 4)
        assert "available" in str(exc.value)

    def test_bad_i(self):
        with pytest.raises(InvalidInputError):
            variety_ideal(4, 0)

    def test_generators_homogeneous_with_positive_lead(self):
        from carlitz.multipoly import grevlex_key, is_homogeneous

        for (m, i) in [(3, 2), (5, 2), (6, 3)]:
            handle = variety_ideal(m, i)
            degrees = [is_homogeneous(g, ignore=()) for g in handle.generators]
            assert degrees == list(range(m - 1, m - i - 1, -1))
            for g in handle.generators:
                lead = max(g.terms, key=grevlex_key)
                assert g.terms[lead] > 0

    def test_groebner_cached(self):
        handle = variety_ideal(4, 2)
        assert handle.groebner() is handle.groebner()
        assert groebner(handle) is handle.groebner()


class TestHilbertData:
    def test_hyperplane_in_p4(self):
        R5 = aring(4)
        handle = IdealHandle(R5, [parse_poly("a0", R5)])
        assert hilbert_data(handle) == (3, 1)

    def test_variety_4_2_degree_6(self):
        assert hilbert_data(variety_ideal(4, 2)) == (2, 6)

    def test_monomial_ideal_degree_2(self):
        handle = IdealHandle(R3, [P("a0^2"), P("a1")])
        assert hilbert_data(handle)[1] == 2

    def test_inhomogeneous_rejected(self):
        handle = IdealHandle(R3, [P("a0^2 + a1")])
        with pytest.raises(InvalidInputError):
            hilbert_data(handle)


class TestAgainstIndependentOracles:
    def test_variety_5_3_leading_terms_match_sympy(self):
        sympy = pytest.importorskip("sympy")
        handle = variety_ideal(5, 3)
        xs = sympy.symbols(" ".join(f"a{j}" for j in range(6)))
        sgens = []
        for g in handle.generators:
            expr = sympy.Integer(0)
            for e, c in g.terms.items():
                term = sympy.Rational(c.numerator, c.denominator)
                for v, ee in zip(xs, e):
                    term *= v ** ee
                expr += term
            sgens.append(expr)
        theirs = sympy.groebner(sgens, *xs, order="grevlex")
        their_lts = sorted(
            tuple(int(x) for x in sympy.Poly(p, *xs).LM(order="grevlex")
                  .exponents)
            for p in theirs.polys)
        mine = sorted(handle.groebner().leading_exponents())
        assert mine == their_lts

    def test_hilbert_series_against_standard_monomial_count(self):
        import itertools
        from carlitz.groebner import _hilbert_numerator
        from math import comb

        cases = [
            [(2, 0, 0), (0, 1, 1)],
            [(1, 1, 0), (0, 2, 1), (3, 0, 0)],
            sorted(variety_ideal(5, 2).groebner().leading_exponents()),
        ]
        for lts in cases:
            n = len(lts[0])
            num = _hilbert_numerator(list(lts), n)
            for d in range(0, 8):
                # coefficient of z^d in num(z) / (1-z)^n
                via_series = sum(num[i] * comb(n - 1 + d - i, n - 1)
                                 for i in range(min(len(num), d + 1)))
                standard = 0
                for mono in itertools.combinations_with_replacement(range(n), d):
                    e = [0] * n
                    for v in mono:
                        e[v] += 1
                    if not any(all(x <= y for x, y in zip(lt, e))
                               for lt in lts):
                        standard += 1
                assert via_series == standard, (lts, d)


class TestCompleteIntersection:
    def test_two_coordinates(self):
        handle = IdealHandle(R3, [P("a0"), P("a1")])
        assert is_complete_intersection(handle)

    def test_three_lines_are_not(self):
        handle = IdealHandle(R3, [P("a0*a1"), P("a0*a2"), P("a1*a2")])
        assert not is_complete_intersection(handle)

    @pytest.mark.parametrize("m,i", [(3, 1), (3, 2), (4, 2), (5, 2), (5, 3)])
    def test_variety_ideals_small(self, m, i):
        assert is_complete_intersection(variety_ideal(m, i))


class TestRadicalMembership:
    def test_nilpotent_generator(self):
        handle = IdealHandle(R3, [P("a0^2")])
        assert radical_membership(P("a0"), handle)

    def test_independent_variable(self):
        handle = IdealHandle(R3, [P("a0")])
        assert not radical_membership(P("a1"), handle)

    def test_binomial_cube(self):
        handle = IdealHandle(R3, [P("a0^2"), P("a1^2")])
        assert radical_membership(P("a0 + a1"), handle)

    def test_zero_always_member(self):
        handle = IdealHandle(R3, [P("a0")])
        assert radical_membership(R3.zero(), handle)

    def test_ring_mismatch(self):
        handle = IdealHandle(R3, [P("a0")])
        with pytest.raises(IncompatibleRingError):
            radical_membership(aring(3).var("a0"), handle)

    def test_exact_membership_implies_radical(self):
        rng = random.Random(43)
        handle = IdealHandle(R3, [P("a0^2 - a1*a2"), P("a1^3")])
        gb = handle.groebner()
        hits = 0
        for _ in range(30):
            f = _random_combination(handle, rng)
            if gb.reduces_to_zero(f):
                hits += 1
                assert radical_membership(f, handle)
        assert hits > 0


class TestKappaSearch:
    def test_kappa_one(self):
        handle = IdealHandle(R3, [P("a0")])
        assert smallest_power_in_ideal(P("a0"), handle) == 1

    def test_kappa_three(self):
        handle = IdealHandle(R3, [P("a0^3")])
        assert smallest_power_in_ideal(P("a0"), handle) == 3

    def test_kappa_two(self):
        handle = IdealHandle(R3, [P("a0^2"), P("a1^2")])
        assert smallest_power_in_ideal(P("a0*a1"), handle) == 2

    def test_absent_when_not_radical(self):
        handle = IdealHandle(R3, [P("a0")])
        assert smallest_power_in_ideal(P("a1"), handle) is None

    def test_absent_when_bound_too_small(self):
        handle = IdealHandle(R3, [P("a0^5")])
        assert smallest_power_in_ideal(P("a0"), handle, kappa_max=3) is None
        assert smallest_power_in_ideal(P("a0"), handle, kappa_max=6) == 5


class TestNesting:
    def test_i0_trivially_true(self):
        assert ideal_nesting_check(4, 0) is True

    def test_specialization_identity(self):
        # the (m+1) L-polynomial restricted to a_{m+1} = 0 is the m one,
        # so the restricted window consists of the *upper* coefficients
        from carlitz.lfun import extract_coefficients, schur_provider

        t4 = extract_coefficients(schur_provider(4).l_polynomial())
        t3 = extract_coefficients(schur_provider(3).l_polynomial())
        for beta in range(4):
            restricted = specialize(t4[(beta, 0)], {"a4": 0})
            lifted = MultiPoly(t4[(beta, 0)].ring,
                               {e + (0,): c for e, c in t3.get((beta, 0),
                                t3[(0, 0)].ring.zero()).terms.items()}) \
                if (beta, 0) in t3 else None
            if lifted is not None:
                assert restricted == lifted

    def test_degree_window_shifts_with_m(self):
        # the restricted (m+1, 1) generator is the degree-m coefficient of
        # the m-provider, not the degree-(m-1) one the (m, 1) ideal uses;
        # witness point (a0, a1, a2, a3) = (0, 0, 1, 1) separates the two
        # zero sets, so the mutual radical membership test reports False
        big = variety_ideal(4, 1)
        witness_big = {"a0": 0, "a1": 0, "a2": 1, "a3": 1, "a4": 0}
        assert specialize(big.generators[0], witness_big).is_zero()
        small = variety_ideal(3, 1)
        witness_small = {"a0": 0, "a1": 0, "a2": 1, "a3": 1}
        at_witness = specialize(small.generators[0], witness_small)
        assert at_witness.const_value() != 0
        assert ideal_nesting_check(3, 1) is False

    @pytest.mark.parametrize("m,i", [(2, 1), (4, 2)])
    def test_rank_at_infinity_family_does_not_nest(self, m, i):
        assert ideal_nesting_check(m, i) is False


def _random_combination(handle, rng):
    f = handle.ring.zero()
    for g in handle.generators:
        mult = handle.ring.zero()
        for _ in range(rng.randrange(3)):
            e = tuple(rng.randrange(2) for _ in range(handle.ring.nvars))
            c = QQ.coerce(Fraction(rng.randrange(-3, 4)))
            if c:
                mult = mult + MultiPoly(handle.ring, {e: c})
        f = f + mult * g
    return f
