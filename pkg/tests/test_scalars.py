"""Field-level checks: cyclotomic arithmetic, prime fields, rational functions."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentangle.scalars import (
    Cyclo,
    DEFAULT_PRIMES,
    EPS3,
    EPS5,
    EPS15,
    Fp,
    PHI15_COEFFS,
    RatFunc,
    UniPoly,
    cyclo_root_of_unity,
    embed_cyclo_in_prime_field,
    find_root_of_unity,
    fraction_mod_p,
)

SEED = 20260824


def _random_cyclo(rng: random.Random) -> Cyclo:
    return Cyclo([Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(8)])


# -- the cyclotomic field ---------------------------------------------


def test_minimal_polynomial_kills_generator():
    acc = Cyclo(0)
    for d, c in enumerate(PHI15_COEFFS):
        acc = acc + Cyclo(c) * EPS15 ** d
    assert acc.is_zero()


def test_generator_has_order_15():
    assert EPS15 ** 15 == 1
    assert EPS15 ** 5 != 1
    assert EPS15 ** 3 != 1
    assert EPS15.multiplicative_order() == 15


def test_eps3_satisfies_quadratic():
    # x^2 + x + 1 vanishes on the canonical cube root of unity
    assert EPS3 * EPS3 + EPS3 + 1 == 0
    assert EPS3 == EPS15 ** 5


def test_eps5_satisfies_quartic():
    acc = Cyclo(1)
    for k in range(1, 5):
        acc = acc + EPS5 ** k
    assert acc.is_zero()
    assert EPS5 == EPS15 ** 3


def test_root_of_unity_trivial_cases():
    assert cyclo_root_of_unity(3, 0) == 1
    w = cyclo_root_of_unity(3, 1)
    assert w ** 3 == 1 and w != 1
    assert cyclo_root_of_unity(15, 5) == cyclo_root_of_unity(3, 1)


def test_root_of_unity_rejects_bad_order():
    for bad in (0, 2, 4, 7, 30):
        with pytest.raises(ValueError):
            cyclo_root_of_unity(bad, 1)


def test_root_of_unity_orders():
    for n in (1, 3, 5, 15):
        for k in range(n):
            x = cyclo_root_of_unity(n, k)
            expected = n // gcd(n, k) if k else 1
            assert x.multiplicative_order() == expected


def test_cyclo_field_axioms_random():
    rng = random.Random(SEED)
    one = Cyclo(1)
    for _ in range(1000):
        x, y, z = (_random_cyclo(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        if not x.is_zero():
            assert x * x.inverse() == one


@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=6),
                min_size=0, max_size=8))
@settings(max_examples=60, deadline=None)
def test_cyclo_inverse_roundtrip(coeffs):
    x = Cyclo(coeffs)
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1
        assert (1 / x) * x == 1


def test_cyclo_construction_reduces_long_vectors():
    # t^8 = t^7 - t^5 + t^4 - t^3 + t - 1
    long8 = Cyclo([0] * 8 + [1])
    assert long8 == Cyclo([-1, 1, 0, -1, 1, -1, 0, 1])
    assert Cyclo([0] * 14 + [1]) == EPS15 ** 14


def test_cyclo_str_uses_unity_labels():
    assert str(EPS3) == "eps3"
    assert str(EPS5 ** 2) == "eps5^2"
    assert str(Cyclo(1)) == "1"
    assert str(-EPS15) == "-eps15"


# -- prime fields ------------------------------------------------------


def test_fp_basic_arithmetic():
    x = Fp(29, 31)
    assert x + 5 == Fp(3, 31)
    assert x - 30 == Fp(30, 31)
    assert 2 * x == Fp(27, 31)
    assert x / x == 1
    assert (1 / x) * x == 1
    assert x ** -1 == x.inverse()
    assert Fp(0, 31) == 0 and not Fp(0, 31)


def test_fp_rejects_mixed_moduli():
    with pytest.raises(ValueError):
        Fp(1, 31) + Fp(1, 61)


def test_fp_field_axioms_random():
    rng = random.Random(SEED + 1)
    p = 151
    for _ in range(1000):
        x, y, z = (Fp(rng.randrange(p), p) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        if x:
            assert x * x.inverse() == 1


def test_find_root_of_unity_all_default_primes():
    for p in DEFAULT_PRIMES:
        assert p % 15 == 1
        w = find_root_of_unity(p, 15)
        assert w ** 15 == 1
        assert w ** 5 != 1 and w ** 3 != 1


def test_find_root_of_unity_rejects_impossible_order():
    with pytest.raises(ValueError):
        find_root_of_unity(31, 7)


def test_embed_identity_and_orders():
    p = 31
    w = find_root_of_unity(p, 15)
    assert embed_cyclo_in_prime_field(Cyclo(1), p, w) == 1
    e3 = embed_cyclo_in_prime_field(EPS3, p, w)
    # roots of x^2 + x + 1 in F_31 are exactly {5, 25}
    assert e3.v in (5, 25)
    e15 = embed_cyclo_in_prime_field(EPS15, p, w)
    assert e15 ** 15 == 1 and e15 ** 5 != 1


def test_embed_rejects_bad_inputs():
    w31 = find_root_of_unity(31, 15)
    with pytest.raises(ValueError):
        embed_cyclo_in_prime_field(Cyclo(1), 37, Fp(2, 37))
    with pytest.raises(ValueError):
        embed_cyclo_in_prime_field(Cyclo(1), 31, Fp(1, 31))
    with pytest.raises(ValueError):
        embed_cyclo_in_prime_field(Cyclo(1), 61, w31)


def test_embed_is_ring_homomorphism_random():
    rng = random.Random(SEED + 2)
    p = 61
    w = find_root_of_unity(p, 15)
    for _ in range(1000):
        x, y = _random_cyclo(rng), _random_cyclo(rng)
        ex = embed_cyclo_in_prime_field(x, p, w)
        ey = embed_cyclo_in_prime_field(y, p, w)
        assert embed_cyclo_in_prime_field(x * y, p, w) == ex * ey
        assert embed_cyclo_in_prime_field(x + y, p, w) == ex + ey


def test_fraction_mod_p():
    assert fraction_mod_p(Fraction(1, 9), 31) == pow(9, 29, 31)
    with pytest.raises(ZeroDivisionError):
        fraction_mod_p(Fraction(1, 31), 31)


# -- rational functions ------------------------------------------------


def _random_unipoly(rng: random.Random, max_deg: int = 3) -> UniPoly:
    return UniPoly([Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(0, max_deg + 1))])


def _random_ratfunc(rng: random.Random) -> RatFunc:
    num = _random_unipoly(rng)
    den = _random_unipoly(rng)
    while den.is_zero():
        den = _random_unipoly(rng)
    return RatFunc(num, den)


def test_unipoly_divmod_invariant():
    rng = random.Random(SEED + 3)
    for _ in range(300):
        f = _random_unipoly(rng, 5)
        g = _random_unipoly(rng, 3)
        if g.is_zero():
            continue
        q, r = f.divmod(g)
        assert q * g + r == f
        assert r.is_zero() or r.degree() < g.degree()


def test_ratfunc_normalization():
    a = UniPoly.gen()
    one = UniPoly.const(Fraction(1))
    # (a^2 - 1)/(a - 1) reduces to a + 1
    f = RatFunc(a * a - one, a - one)
    assert f == RatFunc(a + one)
    # denominator comes out monic
    g = RatFunc(one, UniPoly([Fraction(0), Fraction(2)]))
    assert g.den.lc() == 1
    assert g.num.c == (Fraction(1, 2),)


def test_ratfunc_field_axioms_random():
    rng = random.Random(SEED + 4)
    for _ in range(1000):
        x, y, z = (_random_ratfunc(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        if not x.is_zero():
            assert x * x.inverse() == 1


def test_ratfunc_eval_matches_formal_arithmetic():
    rng = random.Random(SEED + 5)
    for _ in range(200):
        x, y = _random_ratfunc(rng), _random_ratfunc(rng)
        t = Fraction(rng.randint(-10, 10), rng.randint(1, 5))
        if x.den.eval(t) == 0 or y.den.eval(t) == 0:
            continue
        s = x * y
        if s.den.eval(t) == 0:
            continue
        assert s.eval(t) == x.eval(t) * y.eval(t)


def test_ratfunc_zero_division():
    with pytest.raises(ZeroDivisionError):
        RatFunc(UniPoly.gen(), UniPoly(()))
    with pytest.raises(ZeroDivisionError):
        RatFunc.const(0).inverse()


def test_ratfunc_over_prime_field_base():
    p = 31
    one = Fp(1, p)
    a = RatFunc.gen(one)
    f = (a ** 2 - RatFunc.const(1, one)) / (a - RatFunc.const(1, one))
    assert f == a + RatFunc.const(1, one)
