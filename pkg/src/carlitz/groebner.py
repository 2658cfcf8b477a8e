"""Buchberger engine over Q[a0..am] with packed-integer monomials.

Monomials are packed into single Python integers so that integer
comparison realizes the term order directly; multiplication and exact
division become integer addition and subtraction, and divisibility is one
masked subtraction.  Basis elements are normalized to content-free integer
coefficient vectors with positive leading coefficient; reductions
accumulate into a geobucket so that one step costs O(size of the reducer),
not O(size of the partial remainder).

Pair management follows Gebauer-Moller; selection uses the sugar strategy
(smallest sugar degree first, ties broken by lcm and insertion index).
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

from .errors import GroebnerTimeout, InvalidInputError
from .multipoly import MultiPoly, PolyRing, QQ, ZZ

FIELD_BITS = 17
MAX_EXP = 1 << 15


class TermOrder:
    """Packing of exponent tuples into order-respecting integers."""

    name = "base"

    def __init__(self, nvars):
        self.nvars = nvars
        B = FIELD_BITS
        self.guard = 0
        for i in range(nvars):
            self.guard |= 1 << (B * i + B - 1)
        self.varmask = (1 << (B * nvars)) - 1

    def pack(self, exps):
        raise NotImplementedError

    def unpack(self, key):
        raise NotImplementedError

    def degree(self, key):
        return key >> (FIELD_BITS * self.nvars)

    def mul(self, k1, k2):
        raise NotImplementedError

    def div(self, k1, k2):
        raise NotImplementedError

    def offset(self, shift):
        """Additive constant realizing multiplication by the monomial
        `shift` on packed keys."""
        raise NotImplementedError

    def divides(self, d, m):
        raise NotImplementedError

    def lcm(self, k1, k2):
        e1, e2 = self.unpack(k1), self.unpack(k2)
        return self.pack(tuple(max(a, b) for a, b in zip(e1, e2)))

    def coprime(self, k1, k2):
        e1, e2 = self.unpack(k1), self.unpack(k2)
        return all(a == 0 or b == 0 for a, b in zip(e1, e2))


class GrevLex(TermOrder):
    """Graded reverse lexicographic; a0 is the most significant variable
    and the last variable (t, when present) the strongest tiebreaker
    downward, so t-free terms lead whenever possible."""

    name = "grevlex"

    def __init__(self, nvars):
        super().__init__(nvars)
        B = FIELD_BITS
        self.K0 = 0
        for i in range(nvars):
            self.K0 |= MAX_EXP << (B * i)

    def pack(self, exps):
        B = FIELD_BITS
        key = sum(exps) << (B * self.nvars)
        for i, e in enumerate(exps):
            key |= (MAX_EXP - e) << (B * i)
        return key

    def unpack(self, key):
        B = FIELD_BITS
        mask = (1 << B) - 1
        return tuple(MAX_EXP - ((key >> (B * i)) & mask)
                     for i in range(self.nvars))

    def mul(self, k1, k2):
        return k1 + k2 - self.K0

    def div(self, k1, k2):
        return k1 - k2 + self.K0

    def offset(self, shift):
        return shift - self.K0

    def divides(self, d, m):
        # complemented fields: d | m iff every field of d >= field of m
        dv = d & self.varmask
        mv = m & self.varmask
        return ((dv | self.guard) - mv) & self.guard == self.guard


class Lex(TermOrder):
    """Pure lexicographic with a0 most significant; the total degree rides
    in an extra low field (compared only between equal monomials)."""

    name = "lex"

    def __init__(self, nvars):
        B = FIELD_BITS
        super().__init__(nvars)
        self.guard = 0
        for i in range(1, nvars + 1):
            self.guard |= 1 << (B * i + B - 1)
        self.varmask = ((1 << (B * (nvars + 1))) - 1) ^ ((1 << B) - 1)

    def pack(self, exps):
        B = FIELD_BITS
        key = sum(exps)
        for i, e in enumerate(exps):
            key |= e << (B * (self.nvars - i))
        return key

    def unpack(self, key):
        B = FIELD_BITS
        mask = (1 << B) - 1
        return tuple((key >> (B * (self.nvars - i))) & mask
                     for i in range(self.nvars))

    def degree(self, key):
        return key & ((1 << FIELD_BITS) - 1)

    def mul(self, k1, k2):
        return k1 + k2

    def div(self, k1, k2):
        return k1 - k2

    def offset(self, shift):
        return shift

    def divides(self, d, m):
        dv = d & self.varmask
        mv = m & self.varmask
        return ((mv | self.guard) - dv) & self.guard == self.guard


class GrLex(Lex):
    """Total degree first, then lexicographic."""

    name = "grlex"

    def pack(self, exps):
        B = FIELD_BITS
        key = sum(exps) << (B * (self.nvars + 1))
        for i, e in enumerate(exps):
            key |= e << (B * (self.nvars - i))
        return key | sum(exps)

    def degree(self, key):
        return key >> (FIELD_BITS * (self.nvars + 1))


_ORDERS = {"grevlex": GrevLex, "lex": Lex, "grlex": GrLex}


def term_order(name: str, nvars: int) -> TermOrder:
    try:
        return _ORDERS[name](nvars)
    except KeyError:
        raise InvalidInputError(f"unknown term order {name!r}") from None


# ---------------------------------------------------------------------------
# engine polynomials: parallel (keys, coeffs) lists, ascending, head last
# ---------------------------------------------------------------------------


def to_engine(f: MultiPoly, order: TermOrder):
    """Convert to integer term lists; returns (keys, coeffs, scale) with
    f = scale * sum(coeffs[i] * mono(keys[i])) and scale a Fraction."""
    if f.is_zero():
        return [], [], Fraction(1)
    if f.total_degree() >= MAX_EXP:
        raise InvalidInputError("degree exceeds the packed-monomial bound")
    denom = 1
    for c in f.terms.values():
        if isinstance(c, Fraction):
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    pairs = []
    for e, c in f.terms.items():
        ci = int(c * denom) if isinstance(c, Fraction) else c * denom
        pairs.append((order.pack(e), ci))
    pairs.sort()
    keys = [k for k, _ in pairs]
    coeffs = [c for _, c in pairs]
    content = 0
    for c in coeffs:
        content = math.gcd(content, c)
    if content > 1:
        coeffs = [c // content for c in coeffs]
    return keys, coeffs, Fraction(content, denom)


def from_engine(keys, coeffs, ring: PolyRing, order: TermOrder,
                scale=Fraction(1)) -> MultiPoly:
    dom = ring.domain
    terms = {}
    for k, c in zip(keys, coeffs):
        v = dom.coerce(c * scale if dom is QQ else c)
        if v != dom.zero:
            terms[order.unpack(k)] = v
    return MultiPoly(ring, terms)


def _normalize(coeffs):
    """Clear denominators and strip content; keeps the sign.  Returns the
    integer list (the inverse scale is not needed by basis bookkeeping)."""
    denom = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
        if g == 1:
            return ints
    if g > 1:
        ints = [c // g for c in ints]
    return ints


class _Geobucket:
    """Bucketed sparse accumulator; bucket i holds at most 4^(i+1) terms in
    ascending key order, so adding a d-term polynomial costs O(d) amortized
    and extracting the leading term costs O(number of buckets)."""

    __slots__ = ("bkeys", "bcoeffs")

    def __init__(self):
        self.bkeys = []
        self.bcoeffs = []

    def add(self, keys, coeffs):
        if not keys:
            return
        i = 0
        cap = 4
        while cap < len(keys):
            i += 1
            cap *= 4
        while len(self.bkeys) <= i:
            self.bkeys.append([])
            self.bcoeffs.append([])
        keys, coeffs = _merge(self.bkeys[i], self.bcoeffs[i], keys, coeffs)
        while len(keys) > cap:
            self.bkeys[i] = []
            self.bcoeffs[i] = []
            i += 1
            cap *= 4
            if len(self.bkeys) <= i:
                self.bkeys.append([])
                self.bcoeffs.append([])
            keys, coeffs = _merge(self.bkeys[i], self.bcoeffs[i], keys, coeffs)
        self.bkeys[i] = keys
        self.bcoeffs[i] = coeffs

    def extract_head(self):
        """Pop and return the combined leading term, or None if empty."""
        while True:
            best = -1
            best_key = -1
            for i, bk in enumerate(self.bkeys):
                if bk and bk[-1] > best_key:
                    best_key = bk[-1]
                    best = i
            if best < 0:
                return None
            coeff = self.bcoeffs[best].pop()
            self.bkeys[best].pop()
            for i, bk in enumerate(self.bkeys):
                if bk and bk[-1] == best_key:
                    coeff = coeff + self.bcoeffs[i].pop()
                    bk.pop()
            if coeff:
                return best_key, coeff


def _merge(k1, c1, k2, c2):
    """Merge two ascending term lists, combining equal keys."""
    if not k1:
        return list(k2), list(c2)
    if not k2:
        return list(k1), list(c1)
    out_k, out_c = [], []
    i = j = 0
    n1, n2 = len(k1), len(k2)
    while i < n1 and j < n2:
        a, b = k1[i], k2[j]
        if a < b:
            out_k.append(a)
            out_c.append(c1[i])
            i += 1
        elif a > b:
            out_k.append(b)
            out_c.append(c2[j])
            j += 1
        else:
            c = c1[i] + c2[j]
            if c:
                out_k.append(a)
                out_c.append(c)
            i += 1
            j += 1
    if i < n1:
        out_k.extend(k1[i:])
        out_c.extend(c1[i:])
    else:
        out_k.extend(k2[j:])
        out_c.extend(c2[j:])
    return out_k, out_c


class _Basis:
    """Mutable basis state for one Buchberger run.  Element coefficient
    lists are content-free integers with positive leading coefficient."""

    def __init__(self, order):
        self.order = order
        self.keys = []      # ascending key lists
        self.coeffs = []
        self.lts = []       # leading keys
        self.sugars = []
        self.alive = []     # False once the LT is dominated by a newer one

    def add(self, keys, coeffs, sugar):
        self.keys.append(keys)
        self.coeffs.append(coeffs)
        self.lts.append(keys[-1])
        self.sugars.append(sugar)
        self.alive.append(True)
        return len(self.lts) - 1

    def find_reducer(self, key, skip=-1):
        divides = self.order.divides
        lts = self.lts
        for idx in range(len(lts)):
            if idx != skip and self.alive[idx] and divides(lts[idx], key):
                return idx
        return -1


def _reduce(keys_h, cs_h, sugar, basis: _Basis, skip=-1, full=True):
    """Reduction by the basis; head-only unless `full`.

    Returns (keys, coeffs, sugar, scale): keys/coeffs are the content-free
    integer remainder with positive head coefficient, and the exact
    rational remainder is scale * that polynomial.  Costs are dominated by
    O(|reducer|) rational updates per reduction step via the geobucket.
    Head-only reduction stops at the first irreducible leading term and
    returns it with the tail as-is; the main loop runs in that mode and
    leaves tail cleanup to the final inter-reduction.
    """
    order = basis.order
    bucket = _Geobucket()
    bucket.add(keys_h, cs_h)
    out_k, out_c = [], []  # collected descending, reversed at the end
    while True:
        head = bucket.extract_head()
        if head is None:
            break
        key, coeff = head
        idx = basis.find_reducer(key, skip)
        if idx < 0:
            out_k.append(key)
            out_c.append(coeff)
            if not full:
                while True:
                    head = bucket.extract_head()
                    if head is None:
                        break
                    out_k.append(head[0])
                    out_c.append(head[1])
                break
            continue
        gk, gc = basis.keys[idx], basis.coeffs[idx]
        shift = order.div(key, gk[-1])
        off = order.offset(shift)
        scalar = Fraction(coeff, -gc[-1]) if isinstance(coeff, int) \
            else coeff / -gc[-1]
        bucket.add([k + off for k in gk[:-1]], [scalar * c for c in gc[:-1]])
        sugar = max(sugar, basis.sugars[idx] + order.degree(shift))
    if not out_k:
        return [], [], sugar, Fraction(1)
    out_k.reverse()
    out_c.reverse()
    ints = _normalize(out_c)
    scale = Fraction(out_c[-1], ints[-1]) if ints[-1] else Fraction(1)
    if ints[-1] < 0:
        ints = [-c for c in ints]
        scale = -scale
    return out_k, ints, sugar, scale


def _spoly(basis: _Basis, i, j):
    order = basis.order
    ki, ci = basis.keys[i], basis.coeffs[i]
    kj, cj = basis.keys[j], basis.coeffs[j]
    lcm = order.lcm(ki[-1], kj[-1])
    si = order.div(lcm, ki[-1])
    sj = order.div(lcm, kj[-1])
    offi, offj = order.offset(si), order.offset(sj)
    g = math.gcd(ci[-1], cj[-1])
    mi, mj = cj[-1] // g, -(ci[-1] // g)
    keys, coeffs = _merge([k + offi for k in ki], [mi * c for c in ci],
                          [k + offj for k in kj], [mj * c for c in cj])
    sugar = max(basis.sugars[i] + order.degree(si),
                basis.sugars[j] + order.degree(sj))
    return keys, coeffs, sugar


def _update_pairs(basis: _Basis, pairs: dict, t: int):
    """Gebauer-Moller pair update after inserting basis element t."""
    order = basis.order
    lt_t = basis.lts[t]
    lcms = {i: order.lcm(basis.lts[i], lt_t) for i in range(t)}
    # drop old pairs whose lcm the new element properly covers
    for (i, j) in list(pairs):
        lcm_ij = pairs[(i, j)][0]
        if (order.divides(lt_t, lcm_ij)
                and lcms[i] != lcm_ij and lcms[j] != lcm_ij):
            del pairs[(i, j)]
    # candidate new pairs (i, t): prune lcms properly covered by another,
    # then keep one representative per lcm, preferring a coprime one so the
    # whole group falls to Buchberger's first criterion
    cand = sorted((i for i in lcms if basis.alive[i]),
                  key=lambda i: (lcms[i], i))
    kept = []
    for i in cand:
        li = lcms[i]
        covered = False
        for j in kept:
            if lcms[j] != li and order.divides(lcms[j], li):
                covered = True
                break
        if not covered:
            kept.append(i)
    groups: dict = {}
    for i in kept:
        li = lcms[i]
        if li not in groups:
            groups[li] = i
        elif order.coprime(basis.lts[i], lt_t):
            groups[li] = i
    for li, i in groups.items():
        if order.coprime(basis.lts[i], lt_t):
            continue
        sugar = max(basis.sugars[i] + order.degree(order.div(li, basis.lts[i])),
                    basis.sugars[t] + order.degree(order.div(li, basis.lts[t])))
        pairs[(i, t)] = (li, sugar)
    # retire dominated leading terms from future pair formation
    for i in range(t):
        if basis.alive[i] and order.divides(lt_t, basis.lts[i]):
            basis.alive[i] = False


def _buchberger(gens, order: TermOrder, deadline=None):
    """Core loop; gens are ascending (keys, coeffs) integer polys."""
    basis = _Basis(order)
    pairs: dict = {}
    for keys, coeffs in gens:
        if not keys:
            continue
        keys, coeffs, sugar, _ = _reduce(keys, coeffs,
                                         order.degree(keys[-1]), basis,
                                         full=False)
        if not keys:
            continue
        t = basis.add(keys, coeffs, order.degree(keys[-1]))
        _update_pairs(basis, pairs, t)
        if order.degree(keys[-1]) == 0:
            return basis  # the whole ring
    while pairs:
        if deadline is not None and time.monotonic() > deadline:
            raise GroebnerTimeout(
                f"basis computation exceeded its time limit with "
                f"{len(pairs)} pairs outstanding")
        (i, j) = min(pairs, key=lambda ij: (pairs[ij][1], pairs[ij][0], ij))
        del pairs[(i, j)]
        keys, coeffs, sugar = _spoly(basis, i, j)
        keys, coeffs, sugar, _ = _reduce(keys, coeffs, sugar, basis,
                                         full=False)
        if not keys:
            continue
        t = basis.add(keys, coeffs, sugar)
        _update_pairs(basis, pairs, t)
        if order.degree(keys[-1]) == 0:
            return basis
    return basis


def _interreduce(basis: _Basis):
    """Minimalize and fully reduce; canonical content-free, lc > 0."""
    order = basis.order
    idxs = [i for i in range(len(basis.lts)) if basis.alive[i]]
    minimal = [i for i in idxs
               if not any(j != i and order.divides(basis.lts[j], basis.lts[i])
                          for j in idxs)]
    final = _Basis(order)
    for i in sorted(minimal, key=lambda i: basis.lts[i], reverse=True):
        final.add(basis.keys[i], basis.coeffs[i], basis.sugars[i])
    changed = True
    while changed:
        changed = False
        for i in range(len(final.lts)):
            keys, coeffs = final.keys[i], final.coeffs[i]
            k2, c2, _, _ = _reduce(keys, coeffs, 0, final, skip=i)
            if not k2:
                raise AssertionError("minimal basis element reduced to zero")
            if k2 != keys or c2 != coeffs:
                final.keys[i] = k2
                final.coeffs[i] = c2
                final.lts[i] = k2[-1]
                changed = True
    ordering = sorted(range(len(final.lts)), key=lambda i: final.lts[i])
    final.keys = [final.keys[i] for i in ordering]
    final.coeffs = [final.coeffs[i] for i in ordering]
    final.lts = [final.lts[i] for i in ordering]
    final.sugars = [final.sugars[i] for i in ordering]
    final.alive = [True] * len(ordering)
    return final


class GroebnerBasis:
    """Reduced basis plus the machinery to take normal forms against it."""

    def __init__(self, ring: PolyRing, order: TermOrder, engine: _Basis):
        self.ring = ring
        self.order = order
        self._engine = engine

    @property
    def polynomials(self):
        out = []
        for keys, coeffs in zip(self._engine.keys, self._engine.coeffs):
            out.append(from_engine(keys, coeffs, self.ring, self.order))
        return out

    def is_unit_ideal(self):
        return (len(self._engine.lts) == 1
                and self.order.degree(self._engine.lts[0]) == 0)

    def leading_exponents(self):
        return [self.order.unpack(k) for k in self._engine.lts]

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        """Exact rational normal form; linear in f by construction."""
        keys, coeffs, scale = to_engine(f, self.order)
        if not keys:
            return self.ring.zero()
        rk, rc, _, rscale = _reduce(keys, coeffs, 0, self._engine)
        return from_engine(rk, rc, self.ring, self.order, scale * rscale)

    def reduces_to_zero(self, f: MultiPoly) -> bool:
        return self.normal_form(f).is_zero()


def groebner_basis(generators, ring: PolyRing, order: str = "grevlex",
                   timeout=None) -> GroebnerBasis:
    """Reduced Groebner basis of the given generators, deterministic for a
    fixed order; coefficients normalized to content-free integers with a
    positive leading coefficient.  A timeout (seconds) surfaces as an
    explicit GroebnerTimeout, never as a wrong answer."""
    if ring.domain not in (QQ, ZZ):
        raise InvalidInputError("Groebner bases are computed over QQ (or ZZ)")
    ord_obj = term_order(order, ring.nvars)
    gens = []
    for f in generators:
        if f.ring != ring:
            raise InvalidInputError("generator outside the handle's ring")
        keys, coeffs, _ = to_engine(f, ord_obj)
        if keys:
            gens.append((keys, coeffs))
    if not gens:
        return GroebnerBasis(ring, ord_obj, _Basis(ord_obj))
    deadline = None if timeout is None else time.monotonic() + timeout
    engine = _buchberger(gens, ord_obj, deadline)
    if engine.lts and min(ord_obj.degree(lt) for lt in engine.lts) == 0:
        unit = _Basis(ord_obj)
        unit.add([ord_obj.pack((0,) * ring.nvars)], [1], 0)
        return GroebnerBasis(ring, ord_obj, unit)
    return GroebnerBasis(ring, ord_obj, _interreduce(engine))


# ---------------------------------------------------------------------------
# Hilbert series of monomial ideals
# ---------------------------------------------------------------------------


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(h, g)) for h in out):
            out.append(g)
    return out


def _hilbert_numerator(gens, nvars):
    """Numerator of the Hilbert series of R/<gens> over (1-z)^nvars, as a
    coefficient list; recursion N(J + <m>) = N(J) - z^deg(m) * N(J : m)."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # base: all generators are powers of distinct single variables
    support = [tuple(i for i, e in enumerate(g) if e) for g in gens]
    if all(len(s) == 1 for s in support) and len({s[0] for s in support}) == len(gens):
        num = [1]
        for g in gens:
            d = sum(g)
            new = [0] * (len(num) + d)
            for i, c in enumerate(num):
                new[i] += c
                new[i + d] -= c
            num = new
        return num
    # pivot on the generator with the widest support, taken last
    gens = sorted(gens, key=lambda g: (len([e for e in g if e]), sum(g)))
    m = gens[-1]
    rest = gens[:-1]
    colon = [tuple(max(e - f, 0) for e, f in zip(g, m)) for g in rest]
    n_rest = _hilbert_numerator(rest, nvars)
    n_colon = _hilbert_numerator(colon, nvars)
    d = sum(m)
    out = [0] * max(len(n_rest), len(n_colon) + d)
    for i, c in enumerate(n_rest):
        out[i] += c
    for i, c in enumerate(n_colon):
        out[i + d] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


def hilbert_series_data(lead_exponents, nvars):
    """(Krull dimension of R/I, scheme degree) from the leading-term ideal.

    The numerator is divided by (1-z) until it stops vanishing at z = 1;
    the remaining value at 1 is the degree, the number of cancellations
    fixes the dimension.
    """
    num = _hilbert_numerator(list(lead_exponents), nvars)
    if num == [0] or not num:
        return -1, 0
    cancels = 0
    while sum(num) == 0:
        acc = 0
        q = []
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q if q else [0]
        cancels += 1
    return nvars - cancels, sum(num)
