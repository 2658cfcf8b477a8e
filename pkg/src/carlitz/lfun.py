"""Matrix providers and the determinant formula for L-polynomials.

A provider is a k x k matrix of integer polynomials in a0..am, t together
with metadata (q, m, n, k).  Its symbolic L-polynomial is det(I - M*T),
computed by the Berkowitz method (division-free, valid over any
commutative ring).  Specializing the a-variables at a twist P and reducing
into F_q yields the twist's L-polynomial, a polynomial in T over F_q[t];
the analytic rank is its order of vanishing at T = 1, the rank at infinity
the deficiency of its T-degree against k.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .errors import (
    IncompatibleRingError,
    InvalidInputError,
    ParseError,
    ProviderInconsistencyError,
)
from .fields import Field
from .multipoly import (
    GF,
    MultiPoly,
    PolyRing,
    ZZ,
    lring,
    parse_poly,
    reduce_mod_p,
    specialize,
    to_text,
)
from .twists import TwistPoly


def build_k(q: int, m: int, n: int) -> int:
    """Matrix size for given (q, m, n); n = 0 means the built-in family."""
    if q < 2:
        raise InvalidInputError(f"q must be at least 2, got {q}")
    if m < 0 or n < 0:
        raise InvalidInputError("m and n must be nonnegative")
    if n == 0:
        return m
    return math.ceil((m + n) / (q - 1))


class LPoly:
    """Polynomial in T whose coefficients are MultiPoly values."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.ring = ring
        self.coeffs = coeffs

    def is_zero(self):
        return not self.coeffs

    def deg_T(self):
        return len(self.coeffs) - 1

    def coeff(self, beta):
        if 0 <= beta < len(self.coeffs):
            return self.coeffs[beta]
        return self.ring.zero()

    def evaluate_T(self, value: MultiPoly) -> MultiPoly:
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other):
        return (isinstance(other, LPoly) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __mul__(self, other):
        if self.ring != other.ring:
            raise IncompatibleRingError("LPoly rings differ")
        out = [self.ring.zero() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)] \
            if self.coeffs and other.coeffs else []
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return LPoly(self.ring, out)

    def text(self):
        if not self.coeffs:
            return "0"
        parts = [to_text(self.coeffs[0])]
        for beta in range(1, len(self.coeffs)):
            c = self.coeffs[beta]
            if c.is_zero():
                continue
            parts.append(f"({to_text(c)})*T^{beta}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<LPoly {self.text()}>"


def _split_top_level(s: str):
    """Split on ' + ' outside parentheses."""
    parts = []
    depth = 0
    last = 0
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and s.startswith(" + ", i):
            parts.append(s[last:i])
            i += 3
            last = i
            continue
        i += 1
    parts.append(s[last:])
    return parts


def parse_lpoly(text: str, ring: PolyRing) -> LPoly:
    """Inverse of LPoly.text for the same coefficient ring."""
    s = text.strip()
    if s == "0":
        return LPoly(ring, [])
    coeffs: dict = {}
    for chunk in _split_top_level(s):
        chunk = chunk.strip()
        if chunk.startswith("("):
            body, sep, tail = chunk.rpartition(")*T^")
            if not sep:
                raise ParseError(f"bad L-polynomial term {chunk!r}")
            try:
                beta = int(tail)
            except ValueError:
                raise ParseError(f"bad T power {tail!r}") from None
            coeffs[beta] = parse_poly(body[1:], ring)
        else:
            coeffs[0] = parse_poly(chunk, ring)
    top = max(coeffs)
    return LPoly(ring, [coeffs.get(i, ring.zero()) for i in range(top + 1)])


# ---------------------------------------------------------------------------
# providers
# ---------------------------------------------------------------------------


class MatrixProvider:
    """k x k matrix of integer polynomials plus its metadata.

    Immutable after construction; the symbolic L-polynomial is computed
    once on demand and cached.
    """

    def __init__(self, q, m, n, k, entries, source, citation=""):
        self.q = q  # None for the built-in family (valid for every q)
        self.m = m
        self.n = n
        self.k = k
        self.entries = entries
        self.source = source
        self.citation = citation
        self._lpoly = None
        self._id = None
        if len(entries) != k or any(len(row) != k for row in entries):
            raise ProviderInconsistencyError(
                f"expected a {k}x{k} matrix, got {len(entries)} rows")

    @property
    def ring(self):
        return lring(self.m)

    def l_polynomial(self) -> LPoly:
        if self._lpoly is None:
            self._lpoly = l_polynomial(self)
        return self._lpoly

    def provider_id(self) -> str:
        if self._id is None:
            digest = hashlib.sha256(format_provider(self).encode()).hexdigest()
            self._id = f"{self.source}-{digest[:12]}"
        return self._id

    def transpose(self):
        k = self.k
        entries = [[self.entries[j][i] for j in range(k)] for i in range(k)]
        return MatrixProvider(self.q, self.m, self.n, k, entries,
                              self.source, self.citation)

    def __repr__(self):
        return (f"MatrixProvider(q={self.q}, m={self.m}, n={self.n}, "
                f"k={self.k}, source={self.source!r})")


def schur_provider(m: int) -> MatrixProvider:
    """The built-in m x m matrix with entry (i, j) = a_(m+1-2i+j), 1-based,
    indices outside [0, m] giving 0; every entry is linear in the a's."""
    if m < 1:
        raise InvalidInputError("the built-in provider needs m >= 1")
    ring = lring(m)
    entries = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            idx = m + 1 - 2 * i + j
            row.append(ring.var(f"a{idx}") if 0 <= idx <= m else ring.zero())
        entries.append(row)
    return MatrixProvider(None, m, 0, m, entries, "builtin-schur-n0")


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def charpoly_berkowitz(entries, ring: PolyRing):
    """Coefficients [c_0=1, c_1, ..., c_k] of det(x*I - M), descending in x.

    Division-free: only ring additions and multiplications are used, so the
    result is exact over Z[a..,t] and over F_q[t] alike.
    """
    k = len(entries)
    if k == 0:
        return [ring.one()]
    vec = [ring.one(), -entries[k - 1][k - 1]]
    for j in range(k - 2, -1, -1):
        r = k - j
        a = entries[j][j]
        row = entries[j][j + 1:]
        col = [entries[i][j] for i in range(j + 1, k)]
        sub = [rowi[j + 1:] for rowi in entries[j + 1:]]
        # first column of the (r+1) x r Toeplitz: 1, -a, -R C, -R A C, ...
        colvec = [ring.one(), -a]
        w = col
        for _ in range(r - 1):
            colvec.append(-_dot(row, w, ring))
            if len(colvec) <= r:
                w = _matvec(sub, w, ring)
        new = []
        for i in range(r + 1):
            acc = ring.zero()
            for jj in range(max(0, i - r), min(i, r - 1) + 1):
                acc = acc + colvec[i - jj] * vec[jj]
            new.append(acc)
        vec = new
    return vec


def _dot(u, v, ring):
    acc = ring.zero()
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def _matvec(mat, v, ring):
    return [_dot(row, v, ring) for row in mat]


def det_cofactor(entries, ring: PolyRing) -> MultiPoly:
    """Laplace expansion with column-set memoization; the determinant
    oracle used to cross-check the division-free path."""
    n = len(entries)
    memo: dict = {}

    def minor(cols):
        if not cols:
            return ring.one()
        if cols in memo:
            return memo[cols]
        row = n - len(cols)
        acc = ring.zero()
        for pos, c in enumerate(cols):
            entry = entries[row][c]
            if entry.is_zero():
                continue
            rest = cols[:pos] + cols[pos + 1:]
            term = entry * minor(rest)
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


def l_polynomial(provider: MatrixProvider) -> LPoly:
    """det(I - M*T) as an LPoly over the provider's integer ring.

    The T^beta coefficient equals (-1)^beta times the sum of beta x beta
    principal minors of M, with the T^0 coefficient identically 1.
    """
    ring = provider.ring
    coeffs = charpoly_berkowitz(provider.entries, ring)
    return LPoly(ring, coeffs)


# ---------------------------------------------------------------------------
# coefficient extraction
# ---------------------------------------------------------------------------


def coefficient_ring(m: int, domain=ZZ) -> PolyRing:
    return PolyRing(domain, tuple(f"a{i}" for i in range(m + 1)))


def extract_coefficients(L: LPoly) -> dict:
    """Map (beta, alpha) -> the a-polynomial multiplying t^alpha T^beta.

    The values live in the t-free ring Z[a0..am]; summing them back against
    t^alpha T^beta reconstructs L exactly.
    """
    names = L.ring.names
    if not names or names[-1] != "t":
        raise InvalidInputError("expected a symbolic ring ending in t")
    target = PolyRing(L.ring.domain, names[:-1])
    out: dict = {}
    for beta, poly in enumerate(L.coeffs):
        buckets: dict = {}
        for e, c in poly.terms.items():
            alpha = e[-1]
            buckets.setdefault(alpha, {})[e[:-1]] = c
        for alpha, terms in buckets.items():
            out[(beta, alpha)] = MultiPoly(target, terms)
    return out


def assemble_coefficients(table: dict, m: int) -> LPoly:
    """Inverse of extract_coefficients (test oracle)."""
    ring = lring(m)
    if not table:
        return LPoly(ring, [])
    top = max(beta for beta, _ in table)
    coeffs = [ring.zero() for _ in range(top + 1)]
    for (beta, alpha), poly in table.items():
        lifted = MultiPoly(ring, {e + (alpha,): c for e, c in poly.terms.items()})
        coeffs[beta] = coeffs[beta] + lifted
    return LPoly(ring, coeffs)


# ---------------------------------------------------------------------------
# specialization at a twist
# ---------------------------------------------------------------------------


def t_ring(field: Field) -> PolyRing:
    return PolyRing(GF(field), ("t",))


def _check_compatible(provider: MatrixProvider, P: TwistPoly):
    if provider.q is not None and provider.q != P.field.q:
        raise IncompatibleRingError(
            f"provider is for q={provider.q}, twist lives over F_{P.field.q}")
    if P.bound > provider.m:
        raise IncompatibleRingError(
            f"twist bound {P.bound} exceeds provider's m={provider.m}")


def _specialize_entry(f: MultiPoly, field: Field, values) -> MultiPoly:
    from .fields import FqElement

    fbar = reduce_mod_p(f, field)
    # values are encoded field elements, not integers: wrap them so the
    # coercion does not reduce encodings mod p
    assignment = {f"a{i}": FqElement(field, v) for i, v in enumerate(values)}
    g = specialize(fbar, assignment)
    ring = t_ring(field)
    return MultiPoly(ring, {(e[-1],): c for e, c in g.terms.items()})


def twist_l_polynomial(provider: MatrixProvider, P: TwistPoly,
                       method: str = "symbolic") -> LPoly:
    """The twist's L-polynomial over F_q[t].

    method 'symbolic' specializes the cached symbolic L-polynomial;
    method 'determinant' specializes the matrix entries first and runs the
    division-free determinant over F_q[t].  The two must agree exactly.
    """
    _check_compatible(provider, P)
    field = P.field
    values = list(P.coeffs) + [0] * (provider.m + 1 - len(P.coeffs))
    if method == "determinant":
        entries = [[_specialize_entry(f, field, values) for f in row]
                   for row in provider.entries]
        ring = t_ring(field)
        return LPoly(ring, charpoly_berkowitz(entries, ring))
    if method != "symbolic":
        raise InvalidInputError(f"unknown method {method!r}")
    L = provider.l_polynomial()
    return LPoly(t_ring(field),
                 [_specialize_entry(c, field, values) for c in L.coeffs])


def analytic_rank(L: LPoly, at=1) -> int:
    """Order of vanishing of L at T = at (an element of F_q^*), computed by
    repeated exact division by the monic T - at."""
    if L.is_zero():
        raise InvalidInputError("the zero L-polynomial has no rank")
    ring = L.ring
    a = ring.const(at)
    coeffs = list(L.coeffs)
    rank = 0
    while True:
        # Horner at T = at: b_j = c_j + at * b_(j+1); remainder is b_0
        b = coeffs[-1]
        quotient = [b]
        for c in reversed(coeffs[:-1]):
            b = c + a * b
            quotient.append(b)
        remainder = quotient.pop()
        if not remainder.is_zero() or not quotient:
            return rank
        quotient.reverse()
        coeffs = quotient
        rank += 1


def rank_at_infinity(L: LPoly, k: int) -> int:
    """Deficiency of deg_T L against the provider's declared size k."""
    if L.is_zero():
        raise InvalidInputError("the zero L-polynomial has no rank")
    d = L.deg_T()
    if d > k:
        raise ProviderInconsistencyError(
            f"deg_T L = {d} exceeds the declared matrix size k = {k}")
    return k - d


@dataclass
class RankRecord:
    P: TwistPoly
    L: LPoly
    r: int
    r_inf: int
    provider_id: str

    def text(self):
        return (f"twist={self.P.text()} | L={self.L.text()} | r={self.r} | "
                f"r_inf={self.r_inf} | provider={self.provider_id}")


def parse_rank_record(text: str) -> RankRecord:
    from .twists import parse_twist

    fields = {}
    for part in text.strip().split(" | "):
        key, sep, val = part.partition("=")
        if not sep:
            raise ParseError(f"bad rank record field {part!r}")
        fields[key] = val
    try:
        P = parse_twist(fields["twist"])
        L = parse_lpoly(fields["L"], t_ring(P.field))
        return RankRecord(P, L, int(fields["r"]), int(fields["r_inf"]),
                          fields["provider"])
    except KeyError as exc:
        raise ParseError(f"rank record missing field {exc}") from None


def rank_record(provider: MatrixProvider, P: TwistPoly) -> RankRecord:
    L = twist_l_polynomial(provider, P)
    return RankRecord(P, L, analytic_rank(L),
                      rank_at_infinity(L, provider.k), provider.provider_id())


# ---------------------------------------------------------------------------
# provider files
# ---------------------------------------------------------------------------


def format_provider(provider: MatrixProvider) -> str:
    lines = [
        f"q = {'*' if provider.q is None else provider.q}",
        f"m = {provider.m}",
        f"n = {provider.n}",
        f"k = {provider.k}",
        f"source = {provider.citation or provider.source}",
    ]
    for row in provider.entries:
        for entry in row:
            lines.append(to_text(entry))
    return "\n".join(lines) + "\n"


def parse_provider(text: str) -> MatrixProvider:
    """Parse the provider file format: header lines `key = value` for
    q, m, n, k, source, then k*k polynomial lines in row-major order."""
    header = {}
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        if sep and key.strip() in ("q", "m", "n", "k", "source") and not body:
            header[key.strip()] = val.strip()
            continue
        body.append((lineno, line))
    for req in ("q", "m", "n", "k"):
        if req not in header:
            raise ParseError(f"provider file missing header field {req!r}")
    try:
        q = None if header["q"] == "*" else int(header["q"])
        m, n, k = int(header["m"]), int(header["n"]), int(header["k"])
    except ValueError:
        raise ParseError("provider header fields must be integers") from None
    if q is not None:
        expected = build_k(q, m, n)
        if k != expected:
            raise ProviderInconsistencyError(
                f"declared k = {k} but ceil((m+n)/(q-1)) requires k = {expected} "
                f"for q={q}, m={m}, n={n}")
    if len(body) != k * k:
        raise ParseError(f"expected {k * k} matrix entries, found {len(body)}")
    ring = lring(m)
    entries = []
    flat = []
    for lineno, line in body:
        try:
            flat.append(parse_poly(line, ring))
        except ParseError as exc:
            raise ParseError(f"entry at line {lineno}: {exc}") from None
    for i in range(k):
        entries.append(flat[i * k:(i + 1) * k])
    return MatrixProvider(q, m, n, k, entries, "external-file",
                          header.get("source", ""))


def load_provider(path) -> MatrixProvider:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_provider(fh.read())
