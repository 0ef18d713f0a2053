"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis ``1, z, ..., z^(phi(n)-1)`` reduced
modulo the cyclotomic polynomial, as a tuple of integer numerators over one
positive common denominator. Because the reduced form is unique, equality
within one conductor is a coefficient comparison. Operands with different
conductors are promoted to the least common multiple first.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import ParseError, ResourceLimitError

MAX_CONDUCTOR = 10_000

Scalar = Union[int, Fraction, "Cyclotomic"]


def _check_conductor(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"conductor must be a positive integer, got {n!r}")
    if n > MAX_CONDUCTOR:
        raise ResourceLimitError(f"conductor {n} exceeds the ceiling {MAX_CONDUCTOR}")


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n``."""
    ds = [1]
    for p, e in _factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def totient(n: int) -> int:
    result = n
    for p, _ in _factorize(n):
        result -= result // p
    return result


def _mobius(n: int) -> int:
    fs = _factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def _divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; raises if the division leaves a remainder
    num = list(num)
    dl = len(den) - 1
    quot = [0] * (len(num) - dl)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dl]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dl]):
        raise ArithmeticError("polynomial division is not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed by dividing ``x^n - 1`` by ``Phi_d`` for every proper divisor
    ``d`` of ``n``.

    >>> cyclotomic_polynomial(8)
    (1, 0, 0, 0, 1)
    """
    _check_conductor(n)
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reducer(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    tail = tuple((j, c) for j, c in enumerate(phi[:-1]) if c)
    return deg, tail


def _reduce(n: int, dense: list[int]) -> tuple[int, ...]:
    """Reduce an integer coefficient list modulo Phi_n (mutates ``dense``)."""
    deg, tail = _reducer(n)
    for k in range(len(dense) - 1, deg - 1, -1):
        c = dense[k]
        if c:
            dense[k] = 0
            base = k - deg
            for j, p in tail:
                dense[base + j] -= c * p
    if len(dense) < deg:
        dense.extend([0] * (deg - len(dense)))
    return tuple(dense[:deg])


def _fold(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Accumulate (exponent, coefficient) pairs into a dense list mod z^n = 1."""
    dense = [0] * n
    for k, c in pairs:
        if c:
            dense[k % n] += c
    return dense


class Cyclotomic:
    """An element of the cyclotomic field Q(zeta_n).

    ``Cyclotomic(n, coeffs)`` builds ``sum(coeffs[k] * zeta_n**k)``; ``coeffs``
    may have any length and hold ints or Fractions. Instances are immutable.
    """

    __slots__ = ("_n", "_num", "_den", "_hash")

    def __init__(self, n: int, coeffs: Sequence[int | Fraction] = ()):
        _check_conductor(n)
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        pairs = ((k, f.numerator * (den // f.denominator)) for k, f in enumerate(fracs))
        self._set(n, _reduce(n, _fold(n, pairs)), den)

    def _set(self, n: int, num: tuple[int, ...], den: int) -> None:
        g = den
        for c in num:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            den = 1
        elif g != 1:
            num = tuple(c // g for c in num)
            den //= g
        self._n = n
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, n: int, num: tuple[int, ...], den: int) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._set(n, num, den)
        return obj

    @classmethod
    def rational(cls, value: int | Fraction, n: int = 1) -> "Cyclotomic":
        value = Fraction(value)
        deg, _ = _reducer(n)
        num = (value.numerator,) + (0,) * (deg - 1)
        return cls._raw(n, num, value.denominator)

    # -- accessors -----------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def is_real(self) -> bool:
        return self == self.conjugate()

    def is_integral(self) -> bool:
        """True when every power-basis coefficient is an integer."""
        return self._den == 1

    def is_natural(self) -> bool:
        """Membership in the semiring of natural combinations of n-th roots.

        For a conductor above 1 the semiring is the whole ring of cyclotomic
        integers (``-1`` is itself a sum of roots), so this reduces to
        integrality; for conductor 1 it means a nonnegative integer.
        """
        if self._den != 1:
            return False
        if self._n > 1:
            return True
        return self._num[0] >= 0

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # -- conversions ---------------------------------------------------

    def promote(self, m: int) -> "Cyclotomic":
        """The same number written over conductor ``m`` (a multiple of n)."""
        if m == self._n:
            return self
        if m % self._n:
            raise ValueError(f"cannot promote conductor {self._n} to {m}")
        _check_conductor(m)
        if self.is_rational():
            deg, _ = _reducer(m)
            return Cyclotomic._raw(m, (self._num[0],) + (0,) * (deg - 1), self._den)
        step = m // self._n
        dense = [0] * max(_reducer(m)[0], step * (len(self._num) - 1) + 1)
        for k, c in enumerate(self._num):
            dense[k * step] = c
        return Cyclotomic._raw(m, _reduce(m, dense), self._den)

    def to_complex(self) -> complex:
        n = self._n
        total = 0j
        for k, c in enumerate(self._num):
            if c:
                total += c * cmath.exp(2j * math.pi * k / n)
        return total / self._den

    def __complex__(self) -> complex:
        return self.to_complex()

    def __float__(self) -> float:
        z = self.to_complex()
        if abs(z.imag) > 1e-9 * max(1.0, abs(z.real)):
            raise ValueError(f"{self} is not real")
        return z.real

    # -- field operations ----------------------------------------------

    @staticmethod
    def _coerce(x: object) -> "Cyclotomic | None":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
            return Cyclotomic.rational(Fraction(x))
        return None

    def _aligned(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self._n == other._n:
            return self, other
        m = math.lcm(self._n, other._n)
        return self.promote(m), other.promote(m)

    def __add__(self, other: object) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._aligned(o)
        da, db = a._den, b._den
        num = tuple(x * db + y * da for x, y in zip(a._num, b._num))
        return Cyclotomic._raw(a._n, num, da * db)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._raw(self._n, tuple(-c for c in self._num), self._den)

    def __pos__(self) -> "Cyclotomic":
        return self

    def __sub__(self, other: object) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._aligned(o)
        n = a._n
        if b.is_rational():
            a, b = b, a
        if a.is_rational():
            c = a._num[0]
            return Cyclotomic._raw(n, tuple(c * x for x in b._num), a._den * b._den)
        an = [(i, c) for i, c in enumerate(a._num) if c]
        bn = [(j, c) for j, c in enumerate(b._num) if c]
        prod = [0] * (2 * len(a._num) - 1)
        for i, x in an:
            for j, y in bn:
                prod[i + j] += x * y
        return Cyclotomic._raw(n, _reduce(n, prod), a._den * b._den)

    __rmul__ = __mul__

    def invert(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self._n
        if self.is_rational():
            return Cyclotomic.rational(Fraction(self._den, self._num[0]), n)
        s = _poly_inverse_mod(list(self._num), list(cyclotomic_polynomial(n)))
        return Cyclotomic(n, [c * self._den for c in s])

    def __truediv__(self, other: object) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other: object) -> "Cyclotomic":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, k: int) -> "Cyclotomic":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.invert()
        k = abs(k)
        result = Cyclotomic.rational(1, self._n)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def galois(self, j: int) -> "Cyclotomic":
        """Apply the automorphism zeta_n -> zeta_n**j (gcd(j, n) must be 1)."""
        n = self._n
        if math.gcd(j, n) != 1:
            raise ValueError(f"{j} is not a unit modulo {n}")
        dense = _fold(n, ((k * j, c) for k, c in enumerate(self._num)))
        return Cyclotomic._raw(n, _reduce(n, dense), self._den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def abs_squared(self) -> "Cyclotomic":
        return self * self.conjugate()

    # -- comparison, hashing, display ------------------------------------

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._aligned(o)
        return a._den == b._den and a._num == b._num

    def __hash__(self) -> int:
        # hash of the normalized trace: invariant under promotion, so equal
        # values over different conductors hash alike
        if self._hash is None:
            n = self._n
            tr = Fraction(0)
            for k, c in enumerate(self._num):
                if c:
                    d = n // math.gcd(k, n)
                    mu = _mobius(d)
                    if mu:
                        tr += Fraction(c * mu, totient(d))
            self._hash = hash(tr / self._den)
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        return format_cyclotomic(self)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(q), _trim(a[: len(b) - 1])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _poly_inverse_mod(a: list[int], modulus: list[int]) -> list[Fraction]:
    r0 = _trim([Fraction(c) for c in modulus])
    r1 = _trim([Fraction(c) for c in a])
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo Phi_n")
    c = r1[0]
    return [x / c for x in s1]


# -- constructors ----------------------------------------------------------


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n ** (k mod n) in reduced form."""
    _check_conductor(n)
    return Cyclotomic._raw(n, _reduce(n, _fold(n, [(k, 1)])), 1)


def zeta(n: int) -> Cyclotomic:
    return root_of_unity(n, 1)


def as_cyclotomic(x: Scalar) -> Cyclotomic:
    c = Cyclotomic._coerce(x)
    if c is None:
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")
    return c


def ring_ops(a: Cyclotomic, b: Cyclotomic) -> dict[str, Cyclotomic]:
    """Sum, difference, product and negation of ``a`` in one call."""
    return {"add": a + b, "sub": a - b, "mul": a * b, "neg": -a}


def invert(a: Cyclotomic) -> Cyclotomic:
    return a.invert()


def conjugate(a: Scalar) -> Cyclotomic:
    return as_cyclotomic(a).conjugate()


def abs_squared(a: Scalar) -> Cyclotomic:
    return as_cyclotomic(a).abs_squared()


# -- text form -------------------------------------------------------------


def format_cyclotomic(a: Cyclotomic) -> str:
    """Render as ``"c0 + c1*z + c2*z^2 @n"``; zero terms are omitted."""
    terms = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append("z" if k == 1 else f"z^{k}")
        elif c == -1:
            terms.append("-z" if k == 1 else f"-z^{k}")
        else:
            terms.append(f"{c}*z" if k == 1 else f"{c}*z^{k}")
    body = " + ".join(terms) if terms else "0"
    return f"{body} @{a.conductor}"


_TERM = re.compile(r"^(?P<sign>[+-]?)(?P<coef>\d+(?:/\d+)?)?(?P<star>\*?)(?P<z>z(?:\^(?P<exp>\d+))?)?$")


def parse_cyclotomic(text: str, default_conductor: int | None = None) -> Cyclotomic:
    """Inverse of :func:`format_cyclotomic`; also accepts ``-`` between terms."""
    body, sep, cond = text.strip().rpartition("@")
    if not sep:
        body, cond = text.strip(), ""
    if cond.strip():
        try:
            n = int(cond)
        except ValueError:
            raise ParseError(f"bad conductor in {text!r}") from None
    else:
        n = default_conductor or 1
    body = re.sub(r"\s+", "", body)
    body = re.sub(r"(?<=[\dz])-", "+-", body)
    acc: dict[int, Fraction] = {}
    for tok in body.split("+"):
        m = _TERM.match(tok)
        ok = m is not None and (m.group("coef") or m.group("z"))
        if ok and m.group("star"):
            ok = bool(m.group("coef") and m.group("z"))
        if not ok:
            raise ParseError(f"malformed term {tok!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("z"):
            k = int(m.group("exp")) if m.group("exp") else 1
        else:
            k = 0
        acc[k] = acc.get(k, Fraction(0)) + coef
    try:
        _check_conductor(n)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    size = max(acc) + 1
    return Cyclotomic(n, [acc.get(k, 0) for k in range(size)])
