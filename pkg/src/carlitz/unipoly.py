"""Dense univariate polynomial arithmetic over a finite field.

Polynomials are lists of encoded field elements, constant term first, with
no trailing zeros ([] is the zero polynomial).  All functions take the
Field explicitly and never mutate their inputs.
"""

from __future__ import annotations

import hashlib
import random

from .errors import InvalidInputError, UndefinedGCDError
from .fields import Field


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f):
    return len(f) - 1


def add(f, g, K: Field):
    n = max(len(f), len(g))
    out = [K.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0)
           for i in range(n)]
    return trim(out)


def neg(f, K: Field):
    return [K.neg(c) for c in f]


def sub(f, g, K: Field):
    return add(f, neg(g, K), K)


def scale(f, c, K: Field):
    if c == 0:
        return []
    return [K.mul(a, c) for a in f]


def mul(f, g, K: Field):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
    return trim(out)


def divmod_poly(f, g, K: Field):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = deg(g)
    inv_lead = K.inv(g[-1])
    q = [0] * max(len(f) - dg, 0)
    while f and deg(f) >= dg:
        c = K.mul(f[-1], inv_lead)
        k = deg(f) - dg
        q[k] = c
        for i, b in enumerate(g):
            if b:
                f[i + k] = K.sub(f[i + k], K.mul(c, b))
        trim(f)
    return trim(q), f


def rem(f, g, K: Field):
    return divmod_poly(f, g, K)[1]


def quo(f, g, K: Field):
    return divmod_poly(f, g, K)[0]


def monic(f, K: Field):
    if not f:
        return []
    return scale(f, K.inv(f[-1]), K)


def uni_gcd(f, g, K: Field):
    """Monic greatest common divisor; gcd(0, 0) is undefined."""
    if not f and not g:
        raise UndefinedGCDError("gcd(0, 0) is undefined")
    f, g = list(f), list(g)
    while g:
        f, g = g, rem(f, g, K)
    return monic(f, K)


def pow_mod(f, n, g, K: Field):
    result = [1]
    f = rem(f, g, K)
    while n:
        if n & 1:
            result = rem(mul(result, f, K), g, K)
        f = rem(mul(f, f, K), g, K)
        n >>= 1
    return result


def derivative(f, K: Field):
    out = []
    for i in range(1, len(f)):
        out.append(K.mul(K.from_int(i), f[i]))
    return trim(out)


def evaluate(f, a, K: Field):
    acc = 0
    for c in reversed(f):
        acc = K.add(K.mul(acc, a), c)
    return acc


def compose(f, g, K: Field):
    """f(g(x)) by Horner."""
    acc = []
    for c in reversed(f):
        acc = add(mul(acc, g, K), [c] if c else [], K)
    return acc


def pth_root(f, K: Field):
    """Inverse of x -> x^p on polynomials of the form g(x^p)."""
    p = K.p
    out = []
    for i in range(0, len(f), p):
        c = f[i]
        if any(f[i + j] for j in range(1, min(p, len(f) - i))):
            raise InvalidInputError("not a p-th power")
        # c ^ (p^(e-1)) is the p-th root of c in F_{p^e}
        for _ in range(K.e - 1):
            c = K.pow(c, p)
        out.append(c)
    return trim(out)


def squarefree_decomposition(f, K: Field):
    """[(monic squarefree g, multiplicity)] with product g^mult = monic(f).

    Handles the characteristic-p degeneracy: a vanishing derivative means
    the polynomial is a p-th power.
    """
    if not f:
        raise InvalidInputError("zero polynomial")
    f = monic(f, K)
    factors = []
    n = 1
    while deg(f) > 0:
        d = derivative(f, K)
        if not d:
            f = pth_root(f, K)
            n *= K.p
            continue
        g = uni_gcd(f, d, K)
        h = quo(f, g, K)
        i = 1
        while h != [1]:
            gh = uni_gcd(g, h, K)
            part = quo(h, gh, K)
            if deg(part) > 0:
                factors.append((part, i * n))
            g = quo(g, gh, K)
            h = gh
            i += 1
        f = g
    return factors


def distinct_degree(f, K: Field):
    """[(product of irreducible factors of degree d, d)] for monic squarefree f."""
    out = []
    x = [0, 1]
    h = list(x)
    d = 0
    f = list(f)
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = pow_mod(h, K.q, f, K)
        g = uni_gcd(sub(h, x, K), f, K)
        if deg(g) > 0:
            out.append((g, d))
            f = quo(f, g, K)
            h = rem(h, f, K)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _rng_for(f, K: Field):
    tag = repr((K.p, K.e, K.modulus, tuple(f))).encode()
    seed = int.from_bytes(hashlib.sha256(tag).digest()[:8], "big")
    return random.Random(seed)


def _equal_degree_split(f, d, K: Field, rng):
    q = K.q
    n = deg(f)
    while True:
        r = trim([rng.randrange(q) for _ in range(n)])
        if deg(r) < 1:
            continue
        if q % 2 == 1:
            s = pow_mod(r, (q ** d - 1) // 2, f, K)
            g = uni_gcd(sub(s, [1], K), f, K)
        else:
            # char 2: additive trace r + r^2 + ... + r^(2^(e*d - 1)) mod f
            s = list(r)
            acc = list(r)
            for _ in range(K.e * d - 1):
                s = pow_mod(s, 2, f, K)
                acc = add(acc, s, K)
            if not acc:
                continue
            g = uni_gcd(acc, f, K)
        if 0 < deg(g) < n:
            return g


def equal_degree(f, d, K: Field, rng=None):
    """Split monic squarefree f (all factors of degree d) into irreducibles."""
    if deg(f) == d:
        return [f]
    if rng is None:
        rng = _rng_for(f, K)
    g = _equal_degree_split(f, d, K, rng)
    return equal_degree(g, d, K, rng) + equal_degree(quo(f, g, K), d, K, rng)


def factor(f, K: Field):
    """Full factorization into monic irreducibles.

    Returns a list of (coefficient list, multiplicity), deterministically
    ordered by degree then by coefficient tuple; the product of the factors
    with multiplicities times lc(f) reconstructs f exactly.
    """
    if not f:
        raise InvalidInputError("cannot factor the zero polynomial")
    out = []
    for g, mult in squarefree_decomposition(f, K):
        for h, d in distinct_degree(g, K):
            for irr in equal_degree(h, d, K):
                out.append((irr, mult))
    out.sort(key=lambda fm: (deg(fm[0]), tuple(fm[0])))
    return out


def is_irreducible(f, K: Field):
    if deg(f) < 1:
        return False
    if deg(f) == 1:
        return True
    parts = squarefree_decomposition(f, K)
    if len(parts) != 1 or parts[0][1] != 1:
        return False
    dd = distinct_degree(parts[0][0], K)
    return len(dd) == 1 and dd[0][1] == deg(f)
