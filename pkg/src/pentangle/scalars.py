"""Exact coefficient fields for the verification toolkit.

Three scalar domains, all exact:

  * Cyclo   -- the degree-8 cyclotomic field Q(eps15) = Q[t]/Phi15(t),
               which already contains eps5 = t^3 and eps3 = t^5.
  * Fp      -- prime fields F_p; identities transfer along t -> w where
               w is a primitive 15th root of unity in F_p.
  * RatFunc -- univariate rational functions in a formal parameter over
               an exact base field (default Fraction).

No floating point anywhere.  Every value type here is immutable after
construction and therefore safe to share between workers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Rat = Union[int, Fraction]

#: coefficients of Phi15(t) = t^8 - t^7 + t^5 - t^4 + t^3 - t + 1, by degree
PHI15_COEFFS = (1, -1, 0, 1, -1, 1, 0, -1, 1)

#: primes p = 1 (mod 15): F_p contains a primitive 15th root of unity
DEFAULT_PRIMES = (31, 61, 151, 181, 211, 241)

_DEG = 8
_F0 = Fraction(0)
_F1 = Fraction(1)


def _reduction_table() -> tuple[tuple[Fraction, ...], ...]:
    # t^8 = t^7 - t^5 + t^4 - t^3 + t - 1; rows for t^8 .. t^14
    top = tuple(Fraction(-c) for c in PHI15_COEFFS[:_DEG])
    rows = [top]
    for _ in range(_DEG - 2):
        prev = rows[-1]
        shifted = (_F0,) + prev[:-1]
        overflow = prev[-1]
        rows.append(tuple(s + overflow * t for s, t in zip(shifted, top)))
    return tuple(rows)


_REDUCE = _reduction_table()
_TAIL0 = (_F0,) * (_DEG - 1)


class Cyclo:
    """An element of Q(eps15), stored reduced modulo Phi15.

    Coefficient vectors longer than 8 (up to degree 14, the largest a
    product can reach) are folded down on construction.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Union["Cyclo", Rat, Iterable[Rat]] = 0):
        if isinstance(coeffs, Cyclo):
            self._c = coeffs._c
            return
        if isinstance(coeffs, (int, Fraction)):
            self._c = (Fraction(coeffs),) + _TAIL0
            return
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > 2 * _DEG - 1:
            raise ValueError("coefficient vector longer than degree 14")
        while len(cs) < _DEG:
            cs.append(_F0)
        while len(cs) > _DEG:
            c = cs.pop()
            if c:
                row = _REDUCE[len(cs) - _DEG]
                for idx in range(_DEG):
                    cs[idx] += c * row[idx]
        self._c = tuple(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._c)

    def is_rational(self) -> bool:
        return self._c[1:] == _TAIL0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element: %r" % (self,))
        return self._c[0]

    # -- ring structure ------------------------------------------------

    def __add__(self, other: object) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _raw(tuple(a + b for a, b in zip(self._c, other._c)))

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return _raw(tuple(-a for a in self._c))

    def __sub__(self, other: object) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _raw(tuple(a - b for a, b in zip(self._c, other._c)))

    def __rsub__(self, other: object) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._c, other._c
        if self.is_rational():
            q = a[0]
            return _raw(tuple(q * c for c in b))
        if other.is_rational():
            q = b[0]
            return _raw(tuple(q * c for c in a))
        prod = [_F0] * (2 * _DEG - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        for k in range(2 * _DEG - 2, _DEG - 1, -1):
            c = prod[k]
            if c:
                row = _REDUCE[k - _DEG]
                for idx in range(_DEG):
                    prod[idx] += c * row[idx]
        return _raw(tuple(prod[:_DEG]))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Multiplicative inverse by extended Euclid against Phi15."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(eps15)")
        if self.is_rational():
            return _raw((1 / self._c[0],) + _TAIL0)
        r0 = [Fraction(c) for c in PHI15_COEFFS]
        r1 = _pstrip(list(self._c))
        t0: list[Fraction] = []
        t1: list[Fraction] = [_F1]
        while _pdeg(r1) > 0:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _psub(t0, _pmul(q, t1))
        # r1 is a nonzero constant (Phi15 is irreducible over Q)
        lead = r1[0]
        inv = [c / lead for c in t1]
        inv += [_F0] * (_DEG - len(inv))
        return _raw(tuple(inv[:_DEG]))

    def __truediv__(self, other: object) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "Cyclo":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def multiplicative_order(self, bound: int = 15) -> int | None:
        """Smallest n <= bound with self^n = 1, or None."""
        acc = ONE
        for n in range(1, bound + 1):
            acc = acc * self
            if acc == ONE:
                return n
        return None

    def __repr__(self) -> str:
        return "Cyclo(%s)" % (list(self._c),)

    def __str__(self) -> str:
        for k in range(15):
            if self._c == EPS15_POWERS[k]._c:
                return _unity_label(k, "")
            if self._c == (-EPS15_POWERS[k])._c:
                return _unity_label(k, "-")
        terms = []
        for d, c in enumerate(self._c):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mon = "eps15" if d == 1 else "eps15^%d" % d
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append("%s*%s" % (c, mon))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _raw(c: tuple[Fraction, ...]) -> Cyclo:
    obj = Cyclo.__new__(Cyclo)
    object.__setattr__(obj, "_c", c)
    return obj


def _coerce(x: object) -> "Cyclo":
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return _raw((Fraction(x),) + _TAIL0)
    return NotImplemented


def _unity_label(k: int, sign: str) -> str:
    k %= 15
    if k == 0:
        return sign + "1" if sign else "1"
    order = 15 // gcd(15, k)
    power = k * order // 15
    name = {3: "eps3", 5: "eps5", 15: "eps15"}[order]
    return "%s%s" % (sign, name if power == 1 else "%s^%d" % (name, power))


# -- dense rational polynomial helpers (internal, for the inverse) -----


def _pstrip(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pdeg(c: Sequence[Fraction]) -> int:
    return len(c) - 1


def _pmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pstrip(out)

def _psub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [_F0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _pstrip(out)


def _pdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [_F0] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and _pstrip(a):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        q[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] -= coef * bi
        _pstrip(a)
    return _pstrip(q), a


ZERO = Cyclo(0)
ONE = Cyclo(1)
EPS15 = Cyclo([0, 1])
EPS15_POWERS = tuple(EPS15 ** k for k in range(15))
EPS5 = EPS15_POWERS[3]
EPS3 = EPS15_POWERS[5]


def cyclo_root_of_unity(order: int, power: int = 1) -> Cyclo:
    """The canonical primitive order-th root of unity, raised to power.

    Only orders dividing 15 live in Q(eps15); anything else is rejected.
    """
    if order < 1 or 15 % order != 0:
        raise ValueError("order %r does not divide 15" % (order,))
    return EPS15_POWERS[(15 // order) * (power % order) % 15]


# -- prime fields ------------------------------------------------------


class Fp:
    """Residue in [0, p) for a prime p; exact field arithmetic mod p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        self.v = v % p
        self.p = p

    def _same(self, other: object) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed moduli %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other: object) -> "Fp":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.v + other.v, self.p)

    __radd__ = __add__

    def __neg__(self) -> "Fp":
        return Fp(-self.v, self.p)

    def __sub__(self, other: object) -> "Fp":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.v - other.v, self.p)

    def __rsub__(self, other: object) -> "Fp":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> "Fp":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.v * other.v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return Fp(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, other: object) -> "Fp":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> "Fp":
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "Fp":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __bool__(self) -> bool:
        return self.v != 0

    def __repr__(self) -> str:
        return "Fp(%d, %d)" % (self.v, self.p)

    def __str__(self) -> str:
        return str(self.v)


def _prime_factors(n: int) -> list[int]:
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


def _has_exact_order(w: int, n: int, p: int) -> bool:
    if pow(w, n, p) != 1:
        return False
    return all(pow(w, n // q, p) != 1 for q in _prime_factors(n))


def find_root_of_unity(p: int, n: int) -> Fp:
    """Deterministic smallest witness of multiplicative order exactly n in F_p."""
    if n < 1 or (p - 1) % n != 0:
        raise ValueError("no element of order %d in F_%d" % (n, p))
    e = (p - 1) // n
    for c in range(1, p):
        w = pow(c, e, p)
        if _has_exact_order(w, n, p):
            return Fp(w, p)
    raise ValueError("no order-%d element found in F_%d" % (n, p))


def fraction_mod_p(x: Rat, p: int) -> int:
    """Image of a rational number in F_p; the denominator must be prime to p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ZeroDivisionError("denominator of %s vanishes mod %d" % (x, p))
    return x.numerator * pow(x.denominator % p, p - 2, p) % p


def embed_cyclo_in_prime_field(x: Cyclo, p: int, witness_root: Fp) -> Fp:
    """Ring homomorphism Q(eps15) -> F_p sending eps15 to witness_root.

    Requires p = 1 (mod 15) and a witness of multiplicative order
    exactly 15; both are checked, not assumed.
    """
    if p % 15 != 1:
        raise ValueError("p = %d is not 1 mod 15" % p)
    if witness_root.p != p:
        raise ValueError("witness lives in F_%d, not F_%d" % (witness_root.p, p))
    if not _has_exact_order(witness_root.v, 15, p):
        raise ValueError("witness %d does not have order 15 in F_%d" % (witness_root.v, p))
    acc = 0
    wk = 1
    for c in x.coeffs:
        if c:
            acc = (acc + fraction_mod_p(c, p) * wk) % p
        wk = wk * witness_root.v % p
    return Fp(acc, p)


# -- univariate polynomials and rational functions in a parameter ------


class UniPoly:
    """Dense univariate polynomial over an exact field, low degree first.

    The coefficient field is duck typed: Fraction, Fp and Cyclo all work.
    `one` pins the field's multiplicative identity so the zero polynomial
    still knows its domain.
    """

    __slots__ = ("c", "one")

    def __init__(self, coeffs: Iterable = (), one=_F1):
        self.one = one
        zero = one * 0
        cs = [one * c if isinstance(c, int) else c for c in coeffs]
        while cs and cs[-1] == zero:
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def const(cls, value, one=_F1) -> "UniPoly":
        return cls([value], one)

    @classmethod
    def gen(cls, one=_F1) -> "UniPoly":
        return cls([one * 0, one], one)

    @property
    def zero_coeff(self):
        return self.one * 0

    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self):
        if not self.c:
            raise ValueError("leading coefficient of the zero polynomial")
        return self.c[-1]

    def __add__(self, other: "UniPoly") -> "UniPoly":
        zero = self.zero_coeff
        n = max(len(self.c), len(other.c))
        out = [zero] * n
        for i, a in enumerate(self.c):
            out[i] = out[i] + a
        for i, b in enumerate(other.c):
            out[i] = out[i] + b
        return UniPoly(out, self.one)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-a for a in self.c], self.one)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly((), self.one)
        zero = self.zero_coeff
        out = [zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a != zero:
                for j, b in enumerate(other.c):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.one)

    def scale(self, k) -> "UniPoly":
        return UniPoly([a * k for a in self.c], self.one)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        zero = self.zero_coeff
        rem = list(self.c)
        q = [zero] * max(len(rem) - len(other.c) + 1, 0)
        inv_lead = self.one / other.lc()
        while len(rem) >= len(other.c):
            coef = rem[-1] * inv_lead
            shift = len(rem) - len(other.c)
            q[shift] = coef
            for i, bi in enumerate(other.c):
                rem[shift + i] = rem[shift + i] - coef * bi
            while rem and rem[-1] == zero:
                rem.pop()
            if not rem:
                break
        return UniPoly(q, self.one), UniPoly(rem, self.one)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.one / self.lc()
        return self.scale(inv)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def eval(self, x):
        acc = self.zero_coeff
        for c in reversed(self.c):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return "UniPoly(%r)" % (list(self.c),)

    def render(self, symbol: str = "a") -> str:
        if not self.c:
            return "0"
        terms = []
        for d, c in enumerate(self.c):
            if c == self.zero_coeff:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mon = symbol if d == 1 else "%s^%d" % (symbol, d)
                if c == self.one:
                    terms.append(mon)
                elif c == -self.one:
                    terms.append("-" + mon)
                else:
                    terms.append("%s*%s" % (c, mon))
        return " + ".join(terms).replace("+ -", "- ")


class RatFunc:
    """num/den over a base field, den monic, reduced to lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        if den is None:
            den = UniPoly.const(num.one, num.one)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = UniPoly.const(num.one, num.one)
        else:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.lc()
            if lead != den.one:
                inv = den.one / lead
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, value, one=_F1) -> "RatFunc":
        if isinstance(value, int):
            value = one * value
        return cls(UniPoly.const(value, one))

    @classmethod
    def gen(cls, one=_F1) -> "RatFunc":
        """The parameter itself (the transcendental a)."""
        return cls(UniPoly.gen(one))

    @property
    def one_coeff(self):
        return self.num.one

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant: %r" % (self,))
        return self.num.c[0] if self.num.c else self.num.zero_coeff

    def _wrap(self, other: object) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(self.one_coeff):
            return RatFunc.const(other, self.one_coeff)
        return NotImplemented

    def __add__(self, other: object) -> "RatFunc":
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: object) -> "RatFunc":
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "RatFunc":
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> "RatFunc":
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: object) -> "RatFunc":
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> "RatFunc":
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.const(self.one_coeff, self.one_coeff)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def eval(self, x):
        return self.num.eval(x) / self.den.eval(x)

    def __eq__(self, other: object) -> bool:
        other = self._wrap(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num.c, self.den.c))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return "RatFunc(%r, %r)" % (list(self.num.c), list(self.den.c))

    def __str__(self) -> str:
        if self.den.degree() == 0:
            return self.num.render()
        return "(%s)/(%s)" % (self.num.render(), self.den.render())
