"""Sparse exact multivariate polynomials over Z, Q, or F_q.

A polynomial lives in a PolyRing, which names its variables; the default
rings are Z[a0..am, t] for symbolic L-polynomial work and Q[a0..am] for
ideal geometry.  Terms are stored as a map from exponent tuples to nonzero
coefficients, always in canonical form (no zero coefficients, exponents of
the ring's full width).

The term order used for printing and Groebner work is graded reverse
lexicographic on the declared variable sequence a0, a1, ..., am, t: within
one total degree, t is the most significant tiebreaker (monomials with
less t sort higher, so leading terms are t-free whenever possible).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    IncompatibleRingError,
    InvalidFieldError,
    InvalidInputError,
    OverflowLimitError,
    ParseError,
)
from .fields import Field, FqElement, is_prime

MAX_EXPONENT = 1 << 16


# ---------------------------------------------------------------------------
# coefficient domains
# ---------------------------------------------------------------------------


class IntegerDomain:
    label = "ZZ"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return int(x)
            raise IncompatibleRingError(f"{x} is not an integer")
        raise IncompatibleRingError(f"cannot coerce {x!r} into ZZ")

    def to_text(self, c):
        return str(c)

    def __repr__(self):
        return "ZZ"


class RationalDomain:
    label = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise IncompatibleRingError(f"cannot coerce {x!r} into QQ")

    def to_text(self, c):
        return str(c)

    def __repr__(self):
        return "QQ"


class FiniteFieldDomain:
    def __init__(self, field: Field):
        self.field = field
        self.label = f"F{field.q}"
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def coerce(self, x):
        if isinstance(x, int):
            return self.field.from_int(x)
        if isinstance(x, FqElement):
            if x.field is not self.field:
                raise IncompatibleRingError("element of a different field")
            return x.value
        if isinstance(x, Fraction):
            den = self.field.from_int(x.denominator)
            if den == 0:
                raise IncompatibleRingError(f"{x} has no image in {self.label}")
            return self.field.mul(self.field.from_int(x.numerator),
                                  self.field.inv(den))
        raise IncompatibleRingError(f"cannot coerce {x!r} into {self.label}")

    def to_text(self, c):
        return str(c)

    def __repr__(self):
        return self.label


ZZ = IntegerDomain()
QQ = RationalDomain()

_ff_domains: dict = {}


def GF(field_or_q) -> FiniteFieldDomain:
    field = field_or_q if isinstance(field_or_q, Field) else Field.of(field_or_q)
    if field not in _ff_domains:
        _ff_domains[field] = FiniteFieldDomain(field)
    return _ff_domains[field]


# ---------------------------------------------------------------------------
# polynomial rings
# ---------------------------------------------------------------------------


class PolyRing:
    """A coefficient domain plus an ordered tuple of variable names."""

    __slots__ = ("domain", "names", "_index")

    def __init__(self, domain, names):
        self.domain = domain
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown variable {name!r} in ring {self!r}") from None

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.domain is other.domain
                and self.names == other.names)

    def __hash__(self):
        return hash((id(self.domain), self.names))

    def __repr__(self):
        return f"{self.domain!r}[{', '.join(self.names)}]"

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(self.domain.one)

    def const(self, c):
        c = self.domain.coerce(c)
        if c == self.domain.zero:
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: c})

    def var(self, name):
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.domain.one})

    def gens(self):
        return [self.var(n) for n in self.names]


def lring(m: int, domain=ZZ) -> PolyRing:
    """Ring for symbolic L work: domain[a0..am, t]."""
    return PolyRing(domain, tuple(f"a{i}" for i in range(m + 1)) + ("t",))


def aring(m: int, domain=QQ) -> PolyRing:
    """Ring for ideal geometry: domain[a0..am]."""
    return PolyRing(domain, tuple(f"a{i}" for i in range(m + 1)))


def grevlex_key(exps):
    """Sort key; larger key = larger monomial in the ring's term order."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


# ---------------------------------------------------------------------------


class MultiPoly:
    """Immutable sparse polynomial; do not mutate `terms` after creation."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basic predicates ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        if not self.terms:
            return True
        zero = (0,) * self.ring.nvars
        return len(self.terms) == 1 and zero in self.terms

    def const_value(self):
        zero = (0,) * self.ring.nvars
        return self.terms.get(zero, self.ring.domain.zero)

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if not self.terms:
            return 0
        i = self.ring.index(name)
        return max(e[i] for e in self.terms)

    def __len__(self):
        return len(self.terms)

    # -- ring operations ----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            raise IncompatibleRingError(f"expected a polynomial, got {other!r}")
        if self.ring != other.ring:
            raise IncompatibleRingError(
                f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        self._check(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = dom.add(out.get(e, dom.zero), c)
            if s == dom.zero:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.ring, out)

    def __sub__(self, other):
        self._check(other)
        dom = self.ring.domain
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = dom.sub(out.get(e, dom.zero), c)
            if s == dom.zero:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.ring, out)

    def __neg__(self):
        dom = self.ring.domain
        return MultiPoly(self.ring, {e: dom.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        dom = self.ring.domain
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = dom.mul(c1, c2)
                s = dom.add(out.get(e, dom.zero), c)
                if s == dom.zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        for e in out:
            for x in e:
                if x >= MAX_EXPONENT:
                    raise OverflowLimitError(
                        f"exponent {x} exceeds the fixed-width bound 2^16")
            break  # widths only grow through mul; checking one key suffices
        return MultiPoly(self.ring, out)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise InvalidInputError("polynomial powers take n >= 0")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def scale(self, c):
        dom = self.ring.domain
        c = dom.coerce(c)
        if c == dom.zero:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: dom.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]),
                      reverse=True)

    def __repr__(self):
        return f"<{self.ring!r}: {to_text(self)}>"


# ---------------------------------------------------------------------------
# ring operations exposed at module level
# ---------------------------------------------------------------------------


def poly_arith(lhs: MultiPoly, rhs: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise InvalidInputError(f"unknown operation {op!r}")


def specialize(f: MultiPoly, assignment: dict) -> MultiPoly:
    """Substitute values for a subset of variables; others stay symbolic.

    Keys are variable names (or indices); values anything the coefficient
    domain can absorb.  The result lives in the same ring with the assigned
    slots pinned to exponent zero.
    """
    ring = f.ring
    dom = ring.domain
    pinned = {}
    for key, val in assignment.items():
        i = key if isinstance(key, int) else ring.index(key)
        pinned[i] = dom.coerce(val)
    if not pinned:
        return f
    out = {}
    for e, c in f.terms.items():
        for i, val in pinned.items():
            if e[i]:
                factor = val
                acc = dom.one
                k = e[i]
                while k:
                    if k & 1:
                        acc = dom.mul(acc, factor)
                    factor = dom.mul(factor, factor)
                    k >>= 1
                c = dom.mul(c, acc)
        if c == dom.zero:
            continue
        e2 = tuple(0 if i in pinned else x for i, x in enumerate(e))
        s = dom.add(out.get(e2, dom.zero), c)
        if s == dom.zero:
            out.pop(e2, None)
        else:
            out[e2] = s
    return MultiPoly(ring, out)


def reduce_mod_p(f: MultiPoly, p) -> MultiPoly:
    """Coefficientwise reduction of an integer polynomial into F_p (or F_q)."""
    if f.ring.domain is not ZZ:
        raise IncompatibleRingError("reduce_mod_p expects integer coefficients")
    if isinstance(p, Field):
        field = p
    else:
        if not is_prime(p):
            raise InvalidFieldError(f"{p} is not prime")
        field = Field(p)
    target = PolyRing(GF(field), f.ring.names)
    out = {}
    for e, c in f.terms.items():
        r = field.from_int(c)
        if r:
            out[e] = r
    return MultiPoly(target, out)


def change_domain(f: MultiPoly, domain) -> MultiPoly:
    """Recoerce coefficients into another domain (e.g. ZZ -> QQ)."""
    target = PolyRing(domain, f.ring.names)
    out = {}
    for e, c in f.terms.items():
        v = domain.coerce(c)
        if v != domain.zero:
            out[e] = v
    return MultiPoly(target, out)


def is_homogeneous(f: MultiPoly, ignore=("t",)):
    """Common total degree over the non-ignored variables, or None.

    The zero polynomial reports degree 0 by convention.
    """
    skip = {f.ring._index[n] for n in ignore if n in f.ring._index}
    if not f.terms:
        return 0
    degs = {sum(x for i, x in enumerate(e) if i not in skip) for e in f.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


# ---------------------------------------------------------------------------
# canonical text format:  sum of terms  c*a0^e0*...*t^et
# ---------------------------------------------------------------------------


def _term_text(ring, e, c):
    factors = []
    for i, x in enumerate(e):
        if x == 1:
            factors.append(ring.names[i])
        elif x > 1:
            factors.append(f"{ring.names[i]}^{x}")
    ctext = ring.domain.to_text(c)
    if not factors:
        return ctext
    if ctext == "1":
        return "*".join(factors)
    if ctext == "-1":
        return "-" + "*".join(factors)
    return ctext + "*" + "*".join(factors)


def to_text(f: MultiPoly) -> str:
    """Canonical printer; inverse of parse_poly on the same ring."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        txt = _term_text(f.ring, e, c)
        if not parts:
            parts.append(txt)
        elif txt.startswith("-"):
            parts.append(" - " + txt[1:])
        else:
            parts.append(" + " + txt)
    return "".join(parts)


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse the textual polynomial format into `ring`.

    Accepts optional whitespace, `^1`, explicit unit coefficients, and
    rational coefficients `p/q` (rejected if the domain cannot hold them).
    """
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial text")
    if s == "0":
        return ring.zero()
    dom = ring.domain
    # split into signed terms at top level; signs after * ^ / bind to factors
    terms = []
    sign, buf = 1, []
    for ch in s:
        if ch in "+-":
            chunk = "".join(buf).strip()
            if chunk and chunk[-1] not in "*^/":
                terms.append((sign, chunk))
                sign = 1 if ch == "+" else -1
                buf = []
            elif not chunk:
                if ch == "-":
                    sign = -sign
            else:
                buf.append(ch)
        else:
            buf.append(ch)
    chunk = "".join(buf).strip()
    if not chunk:
        raise ParseError(f"trailing sign in {text!r}")
    terms.append((sign, chunk))

    result = ring.zero()
    for sign, chunk in terms:
        coeff = dom.one
        exps = [0] * ring.nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            if factor[0].isdigit() or factor[0] in "+-" or "/" in factor:
                try:
                    if "/" in factor:
                        num, den = factor.split("/")
                        val = Fraction(int(num), int(den))
                    else:
                        val = int(factor)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"bad coefficient {factor!r}") from None
                try:
                    coeff = dom.mul(coeff, dom.coerce(val))
                except IncompatibleRingError as exc:
                    raise ParseError(f"coefficient {factor!r}: {exc}") from None
            else:
                if "^" in factor:
                    name, _, etext = factor.partition("^")
                    try:
                        e = int(etext)
                    except ValueError:
                        raise ParseError(f"bad exponent in {factor!r}") from None
                    if e < 0:
                        raise ParseError(f"negative exponent in {factor!r}")
                else:
                    name, e = factor, 1
                i = ring.index(name.strip())
                exps[i] += e
                if exps[i] >= MAX_EXPONENT:
                    raise ParseError(
                        f"exponent {exps[i]} exceeds the fixed-width bound")
        if sign < 0:
            coeff = dom.neg(coeff)
        if coeff != dom.zero:
            mono = MultiPoly(ring, {tuple(exps): coeff})
            result = result + mono
    return result
