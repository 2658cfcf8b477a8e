import random

import pytest

from carlitz.errors import InvalidFieldError
from carlitz.fields import Field, is_prime


def test_prime_field_construction():
    F3 = Field(3)
    assert F3.q == 3 and F3.e == 1 and F3.modulus is None


def test_non_prime_p_rejected():
    with pytest.raises(InvalidFieldError):
        Field(4)
    with pytest.raises(InvalidFieldError):
        Field(1)


def test_q_bound_enforced():
    with pytest.raises(InvalidFieldError):
        Field(2, 17)  # 2^17 > 2^16


def test_reducible_modulus_rejected():
    # x^2 - 1 = (x-1)(x+1) over F_3
    with pytest.raises(InvalidFieldError):
        Field(3, 2, modulus=(2, 0, 1))


def test_default_modulus_is_irreducible():
    F9 = Field.of(9)
    assert F9.modulus == (1, 0, 1)  # x^2 + 1, the smallest by encoding
    F8 = Field.of(8)
    assert F8.modulus is not None and len(F8.modulus) == 4


def test_fields_are_interned():
    assert Field.of(9) is Field.of(9)
    assert Field(3) is Field(3)


def test_extension_field_tables_match_schoolbook():
    # log/exp multiplication against polynomial multiplication mod modulus
    from carlitz.fields import _pmul, _prem

    for q in (4, 8, 9, 27, 25):
        K = Field.of(q)
        rng = random.Random(q)
        for _ in range(200):
            a, b = rng.randrange(q), rng.randrange(q)
            direct = K.encode(
                _prem(_pmul(K.digits(a), K.digits(b), K.p), list(K.modulus),
                      K.p) + [0] * K.e)
            assert K.mul(a, b) == direct


@pytest.mark.parametrize("q", [2, 3, 5, 9, 16, 27])
def test_inverses_and_unit_group(q):
    K = Field.of(q)
    for a in range(1, q):
        assert K.mul(a, K.inv(a)) == 1
        assert K.pow(a, q - 1) == 1


def test_ring_axioms_bulk():
    # associativity, distributivity, commutativity on 10^4 random triples
    # for each coefficient ring the package computes in
    from fractions import Fraction

    rng = random.Random(0)
    K = Field.of(9)
    for _ in range(10_000):
        a, b, c = (rng.randrange(9) for _ in range(3))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.mul(a, b) == K.mul(b, a)
        assert K.add(a, b) == K.add(b, a)
        assert K.add(K.add(a, b), c) == K.add(a, K.add(b, c))
    for _ in range(10_000):
        a, b, c = (rng.randrange(-99, 99) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for _ in range(10_000):
        a, b, c = (Fraction(rng.randrange(-20, 20), rng.randrange(1, 20))
                   for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_frobenius_is_additive():
    K = Field.of(27)
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.randrange(27), rng.randrange(27)
        assert K.frobenius(K.add(a, b)) == K.add(K.frobenius(a), K.frobenius(b))


def test_rth_power_detection():
    K = Field.of(7)
    # squares mod 7: 1, 2, 4
    squares = {K.mul(a, a) for a in range(1, 7)}
    for a in range(1, 7):
        assert K.is_rth_power(a, 2) == (a in squares)
    # every unit is a (q-1)-th power only if it is 1
    for a in range(1, 7):
        assert K.is_rth_power(a, 6) == (a == 1)


def test_element_wrapper_arithmetic():
    K = Field.of(9)
    x = K.element(3)
    y = K.element(4)
    assert (x + y).value == K.add(3, 4)
    assert (x * y).value == K.mul(3, 4)
    assert (-x + x).value == 0
    assert (x / x).value == 1
    assert x ** 8 == K.element(1)
    assert x + 1 == K.element(K.add(3, 1))
    with pytest.raises(InvalidFieldError):
        _ = x + Field.of(3).element(1)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
