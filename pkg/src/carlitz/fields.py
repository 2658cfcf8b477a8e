"""Finite fields F_{p^e} with exact, table-accelerated arithmetic.

Elements of F_{p^e} are encoded as integers in [0, q), q = p^e: the base-p
digits of the encoding are the coefficients of the canonical residue
representative, constant term first.  For prime fields the encoding is the
residue itself.  Extension fields multiply through discrete log/antilog
tables built once at construction; addition is digitwise mod p.
"""

from __future__ import annotations

import functools

from .errors import InvalidFieldError

MAX_Q = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# dense polynomials over F_p, coefficient lists ascending, used only for
# modulus bookkeeping (search, irreducibility, reduction)
# ---------------------------------------------------------------------------

def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _prem(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and f:
        c = (f[-1] * inv) % p
        k = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[i + k] = (f[i + k] - c * b) % p
        _ptrim(f)
    return f


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        f, g = g, _prem(f, g, p)
    return f


def _psub(f, g, p):
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
           for i in range(n)]
    return _ptrim(out)


def _ppowmod(f, n, g, p):
    result = [1]
    f = _prem(f, g, p)
    while n:
        if n & 1:
            result = _prem(_pmul(result, f, p), g, p)
        f = _prem(_pmul(f, f, p), g, p)
        n >>= 1
    return result


def _irreducible(f, p):
    """Rabin test: f monic of degree e over F_p is irreducible."""
    e = len(f) - 1
    if e < 1:
        return False
    x = [0, 1]
    # x^(p^e) == x mod f
    h = x
    for _ in range(e):
        h = _ppowmod(h, p, f, p)
    if _psub(h, x, p):
        return False
    # gcd(x^(p^(e/r)) - x, f) == 1 for every prime r | e
    for r in _prime_divisors(e):
        h = x
        for _ in range(e // r):
            h = _ppowmod(h, p, f, p)
        g = _pgcd(f, _psub(h, x, p), p)
        if len(g) != 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _default_modulus(p, e):
    """Smallest monic irreducible of degree e over F_p, by base-p encoding."""
    for enc in range(p ** e):
        digits = []
        v = enc
        for _ in range(e):
            digits.append(v % p)
            v //= p
        f = digits + [1]
        if _irreducible(f, p):
            return tuple(f)
    raise InvalidFieldError(f"no irreducible modulus of degree {e} over F_{p}")


# ---------------------------------------------------------------------------


class Field:
    """Description of F_{p^e} together with its arithmetic tables.

    Instances are immutable and interned per (p, e, modulus); tables are
    built once and only read afterwards, so a Field may be shared freely
    between workers.
    """

    _cache: dict = {}

    def __new__(cls, p, e=1, modulus=None):
        if not is_prime(p):
            raise InvalidFieldError(f"{p} is not prime")
        if e < 1:
            raise InvalidFieldError(f"extension degree must be >= 1, got {e}")
        q = p ** e
        if q > MAX_Q:
            raise InvalidFieldError(f"q = {q} exceeds the supported bound 2^16")
        if e == 1:
            if modulus is not None:
                raise InvalidFieldError("prime fields take no modulus")
            key = (p, 1, None)
        else:
            if modulus is None:
                modulus = _default_modulus(p, e)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise InvalidFieldError("modulus must be monic of degree e")
            if not _irreducible(list(modulus), p):
                raise InvalidFieldError(f"modulus {modulus} is reducible over F_{p}")
            key = (p, e, modulus)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus if e > 1 else None
        if e > 1:
            self._build_tables()
        cls._cache[key] = self
        return self

    @classmethod
    def of(cls, q):
        """Field of order q with the default (smallest) modulus."""
        p, e = _split_prime_power(q)
        return cls(p, e)

    # -- encoding helpers ---------------------------------------------------

    def digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, coeffs):
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.p + c % self.p
        return a

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        mod = list(self.modulus)
        # raw polynomial product of two encodings, reduced by the modulus
        def rawmul(a, b):
            fa, fb = self.digits(a), self.digits(b)
            prod = _pmul(fa, fb, p)
            prod = _prem(prod, mod, p)
            return self.encode(prod + [0] * e)

        order_factors = _prime_divisors(q - 1)
        gen = None
        for cand in range(2, q):
            ok = True
            for r in order_factors:
                acc = 1
                for _ in range((q - 1) // r):
                    acc = rawmul(acc, cand)
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            exp[i + q - 1] = x
            log[x] = i
            x = rawmul(x, gen)
        self._exp = exp
        self._log = log

    # -- element arithmetic on integer encodings ----------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1) - self._log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def from_int(self, n):
        """Image of the rational integer n under Z -> F_p < F_q."""
        return n % self.p

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** times)

    def elements(self):
        return range(self.q)

    def element(self, a):
        if not 0 <= a < self.q:
            raise InvalidFieldError(f"{a} is not an encoded element of F_{self.q}")
        return FqElement(self, a)

    def is_rth_power(self, a, r):
        """True iff nonzero a lies in (F_q^*)^r, decided by exponentiation."""
        if a == 0:
            raise ZeroDivisionError("0 is excluded from the unit group")
        import math

        n = (self.q - 1) // math.gcd(r, self.q - 1)
        return self.pow(a, n) == 1

    def __repr__(self):
        if self.e == 1:
            return f"Field(p={self.p})"
        return f"Field(p={self.p}, e={self.e}, modulus={self.modulus})"

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))


def _split_prime_power(q):
    if q < 2:
        raise InvalidFieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1:
                raise InvalidFieldError("not a prime power")
            return p, e
    raise InvalidFieldError("not a prime power")


@functools.total_ordering
class FqElement:
    """A field element bound to its Field; supports operator arithmetic."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.field is not self.field:
                raise InvalidFieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.div(self.value, v))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.value))

    def __pow__(self, n):
        return FqElement(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __repr__(self):
        return f"F{self.field.q}({self.value})"
