"""Twist representatives: bounded-degree polynomials over F_q and their
predicates (power-freeness, shift stability, twist equivalence)."""

from __future__ import annotations

from . import unipoly as up
from .errors import InvalidInputError, ParseError
from .fields import Field


class TwistPoly:
    """Coefficient vector (a_0, ..., a_m) over F_q, trailing zeros allowed.

    The stored length is the declared ambient degree bound plus one; two
    twists with different bounds may still describe the same polynomial.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs:
            raise InvalidInputError("a twist needs at least the a0 slot")
        if any(not 0 <= c < field.q for c in coeffs):
            raise InvalidInputError(f"coefficients must be encoded into [0, {field.q})")
        self.field = field
        self.coeffs = coeffs

    @property
    def bound(self):
        return len(self.coeffs) - 1

    def poly(self):
        return up.trim(list(self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def degree(self):
        return up.deg(self.poly())

    def text(self):
        return f"F{self.field.q}:" + ",".join(str(c) for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, TwistPoly) and self.field is other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return f"TwistPoly({self.text()})"


def parse_twist(text: str) -> TwistPoly:
    """Parse the `F3:1,0,2,1` wire form."""
    head, sep, body = text.strip().partition(":")
    if not sep or not head.startswith("F"):
        raise ParseError(f"bad twist spec {text!r}; expected F<q>:c0,c1,...")
    try:
        q = int(head[1:])
    except ValueError:
        raise ParseError(f"bad field tag {head!r}") from None
    field = Field.of(q)
    try:
        coeffs = [int(c) for c in body.split(",")]
    except ValueError:
        raise ParseError(f"bad coefficient list in {text!r}") from None
    return TwistPoly(field, coeffs)


def is_powerfree(P: TwistPoly, r: int) -> bool:
    """True iff no irreducible factor of P has multiplicity >= r."""
    if P.is_zero():
        raise InvalidInputError("power-freeness is undefined for 0")
    if r < 1:
        raise InvalidInputError("r must be positive")
    f = P.poly()
    if up.deg(f) == 0:
        return True
    return all(m < r for _, m in up.squarefree_decomposition(f, P.field))


def shift(P: TwistPoly, c: int) -> TwistPoly:
    """The twist with polynomial P(theta + c), same ambient bound."""
    K = P.field
    moved = up.compose(P.poly(), [c, 1], K)
    moved = moved + [0] * (len(P.coeffs) - len(moved))
    return TwistPoly(K, moved)


def shift_orbit(P: TwistPoly):
    """Orbit of P under theta -> theta + a, sorted by coefficient vector."""
    return sorted({shift(P, a) for a in P.field.elements()},
                  key=lambda t: t.coeffs)


def is_shift_stable(P: TwistPoly) -> bool:
    """True iff P(theta + a) = P(theta) for every a in F_q.

    Decided twice: by direct substitution over all a, and by rewriting in
    the basis of powers of theta^q - theta (stable iff every digit of that
    expansion is constant).  The two answers are compared exactly.
    """
    K = P.field
    f = P.poly()
    by_substitution = all(shift(P, a).poly() == f for a in K.elements())

    s = [0] * (K.q + 1)
    s[1] = K.neg(1)
    s[K.q] = 1
    g = list(f)
    by_basis = True
    while up.deg(g) > 0:
        g, r = up.divmod_poly(g, s, K)
        if up.deg(r) > 0:
            by_basis = False
            break

    if by_substitution != by_basis:
        raise AssertionError(
            f"shift-stability methods disagree on {P.text()}: "
            f"substitution={by_substitution} basis={by_basis}")
    return by_substitution


def twist_equivalent(P1: TwistPoly, P2: TwistPoly) -> bool:
    """True iff P1 and P2 represent the same coset modulo (q-1)-th powers.

    Decided on P1 * P2^(q-2): every irreducible multiplicity must vanish
    mod q-1 and the leading coefficient must be a (q-1)-th power.
    """
    if P1.field is not P2.field:
        raise InvalidInputError("twists over different fields")
    if P1.is_zero() or P2.is_zero():
        raise InvalidInputError("twist equivalence needs nonzero inputs")
    K = P1.field
    q = K.q
    if q == 2:
        return True
    prod = P1.poly()
    f2 = P2.poly()
    for _ in range(q - 2):
        prod = up.mul(prod, f2, K)
    if any(m % (q - 1) for _, m in up.factor(prod, K)):
        return False
    return K.is_rth_power(prod[-1], q - 1)
