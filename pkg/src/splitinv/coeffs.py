"""Exact coefficient groups and local quadratic symbols.

Three kinds of scalars are used throughout the package:

* symbolic units: the abelian group {+-1} x (free abelian group on named
  indeterminates together with the distinguished generator ``2``), so that
  negation and exact division by 2 are available without a field;
* exact field elements: ``Fraction``, quadratic extensions Q(sqrt(d)) with
  their conjugation, and prime fields F_p for odd p;
* the sign characters of local class field theory for quadratic extensions,
  computed through the Hilbert symbol over Q_p and R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

from .errors import CoefficientError, PlaceError

Rat = Union[int, Fraction]


# ---------------------------------------------------------------------------
# symbolic units
# ---------------------------------------------------------------------------

TWO = "2"  # distinguished generator; "half" is TWO with exponent -1


@dataclass(frozen=True)
class SymUnit:
    """An element +-1 * prod(sym**exp) of the symbolic unit group.

    ``exps`` is a sorted tuple of (symbol, nonzero exponent) pairs, so
    structural equality is group equality.
    """

    sign: int = 1
    exps: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise CoefficientError("sign must be +-1")
        if any(e == 0 for _, e in self.exps):
            raise CoefficientError("zero exponents must be dropped")

    @staticmethod
    def one() -> "SymUnit":
        return SymUnit(1, ())

    @staticmethod
    def gen(name: str, exp: int = 1, sign: int = 1) -> "SymUnit":
        if exp == 0:
            return SymUnit(sign, ())
        return SymUnit(sign, ((name, exp),))

    @staticmethod
    def half() -> "SymUnit":
        return SymUnit.gen(TWO, -1)

    def __mul__(self, other: "SymUnit") -> "SymUnit":
        if not isinstance(other, SymUnit):
            return NotImplemented
        acc: Dict[str, int] = dict(self.exps)
        for name, e in other.exps:
            acc[name] = acc.get(name, 0) + e
        exps = tuple(sorted((n, e) for n, e in acc.items() if e != 0))
        return SymUnit(self.sign * other.sign, exps)

    def __pow__(self, k: int) -> "SymUnit":
        sign = self.sign if k % 2 else 1
        return SymUnit(sign, tuple((n, e * k) for n, e in self.exps if e * k != 0))

    def __neg__(self) -> "SymUnit":
        return SymUnit(-self.sign, self.exps)

    def inv(self) -> "SymUnit":
        return self ** -1

    @property
    def is_one(self) -> bool:
        return self.sign == 1 and not self.exps

    def __repr__(self) -> str:
        if not self.exps:
            return "1" if self.sign == 1 else "-1"
        body = "*".join(n if e == 1 else f"{n}^{e}" for n, e in self.exps)
        return body if self.sign == 1 else "-" + body


class SignedSymbolMap:
    """Automorphism of the symbolic unit group: symbol -> sign * symbol.

    Used as the Galois action on symbolic coefficients.
    """

    def __init__(self, mapping: Mapping[str, Tuple[int, str]]):
        self.mapping = {k: (int(s), n) for k, (s, n) in mapping.items()}
        for s, _ in self.mapping.values():
            if s not in (1, -1):
                raise CoefficientError("symbol image sign must be +-1")

    def __call__(self, u: SymUnit) -> SymUnit:
        out = SymUnit(u.sign, ())
        for name, e in u.exps:
            s, img = self.mapping.get(name, (1, name))
            out = out * SymUnit.gen(img, e, 1) * SymUnit(s ** (e % 2) if s == -1 else 1, ())
        return out

    @property
    def order(self) -> int:
        # brute force; symbol alphabets here are tiny
        for k in range(1, 49):
            if all(self._power_fixes(name, k) for name in self.mapping):
                return k
        raise CoefficientError("signed symbol map has order > 48")

    def _power_fixes(self, name: str, k: int) -> bool:
        s, n = 1, name
        for _ in range(k):
            s2, n = self.mapping.get(n, (1, n))
            s *= s2
        return s == 1 and n == name


class IdentityAction:
    """Trivial coefficient automorphism."""

    order = 1

    def __call__(self, x):
        return x


# ---------------------------------------------------------------------------
# exact fields
# ---------------------------------------------------------------------------

class RationalField:
    """Q with trivial conjugation."""

    char = 0
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, k: int):
        return Fraction(k)

    def embed(self, x: Rat):
        return Fraction(x)

    def half(self):
        return Fraction(1, 2)

    def conj(self, x):
        return x

    conj_order = 1


@dataclass(frozen=True)
class QuadNum:
    """u + v*sqrt(d) with exact rational u, v."""

    u: Fraction
    v: Fraction
    d: int

    @staticmethod
    def make(u: Rat, v: Rat, d: int) -> "QuadNum":
        return QuadNum(Fraction(u), Fraction(v), d)

    def _coerce(self, other):
        if isinstance(other, QuadNum):
            if other.d != self.d:
                raise CoefficientError("mixed quadratic extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.u - o.u, self.v - o.v, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.u * o.u + self.d * self.v * o.v,
                       self.u * o.v + self.v * o.u, self.d)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadNum(-self.u, -self.v, self.d)

    def inv(self) -> "QuadNum":
        nrm = self.u * self.u - self.d * self.v * self.v
        if nrm == 0:
            raise CoefficientError("inverse of zero in Q(sqrt(d))")
        return QuadNum(self.u / nrm, -self.v / nrm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inv()
        out = QuadNum(Fraction(1), Fraction(0), self.d)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QuadNum) else other
        if o is None:
            return NotImplemented
        if isinstance(o, QuadNum) and o.d != self.d:
            return False
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v, self.d))

    def conj(self) -> "QuadNum":
        return QuadNum(self.u, -self.v, self.d)

    @property
    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def __repr__(self):
        if self.v == 0:
            return str(self.u)
        return f"({self.u}+{self.v}*sqrt({self.d}))"


class QuadField:
    """Q(sqrt(d)) for a non-square integer d, with its conjugation."""

    char = 0
    conj_order = 2

    def __init__(self, d: int):
        if d == 0 or _is_square_int(d):
            raise CoefficientError(f"d={d} is a square; extension is not quadratic")
        self.d = d
        self.name = f"Q(sqrt({d}))"

    def zero(self):
        return QuadNum.make(0, 0, self.d)

    def one(self):
        return QuadNum.make(1, 0, self.d)

    def from_int(self, k: int):
        return QuadNum.make(k, 0, self.d)

    def embed(self, x):
        if isinstance(x, QuadNum):
            if x.d != self.d:
                raise CoefficientError("mixed quadratic extensions")
            return x
        return QuadNum.make(Fraction(x), 0, self.d)

    def gen(self):
        return QuadNum.make(0, 1, self.d)

    def half(self):
        return QuadNum.make(Fraction(1, 2), 0, self.d)

    def conj(self, x: QuadNum) -> QuadNum:
        return self.embed(x).conj()


@dataclass(frozen=True)
class Fp:
    """Element of the prime field F_p, p odd."""

    v: int
    p: int

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise CoefficientError("mixed prime fields")
            return other
        if isinstance(other, int):
            return Fp(other % self.p, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator * pow(other.denominator, -1, self.p) % self.p, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp((self.v + o.v) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp((self.v - o.v) % self.p, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp((self.v * o.v) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp((-self.v) % self.p, self.p)

    def inv(self) -> "Fp":
        if self.v == 0:
            raise CoefficientError("inverse of zero in F_p")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return Fp(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Fp) else other
        if o is None:
            return NotImplemented
        if isinstance(o, Fp) and o.p != self.p:
            return False
        return self.v == o.v

    def __hash__(self):
        return hash((self.v, self.p))

    @property
    def is_zero(self) -> bool:
        return self.v == 0

    def __repr__(self):
        return f"{self.v}(mod {self.p})"


class PrimeField:
    """F_p for an odd prime p.  Characteristic 2 is rejected: the
    constructions downstream divide by 2."""

    conj_order = 1

    def __init__(self, p: int):
        if p == 2:
            raise CoefficientError("characteristic 2 not supported: 2 is not invertible")
        if p < 3 or not _is_prime(p):
            raise CoefficientError(f"p={p} is not an odd prime")
        self.p = p
        self.char = p
        self.name = f"F_{p}"

    def zero(self):
        return Fp(0, self.p)

    def one(self):
        return Fp(1, self.p)

    def from_int(self, k: int):
        return Fp(k % self.p, self.p)

    def embed(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise CoefficientError("mixed prime fields")
            return x
        if isinstance(x, Fraction):
            return Fp(x.numerator * pow(x.denominator, -1, self.p) % self.p, self.p)
        return Fp(int(x) % self.p, self.p)

    def half(self):
        return Fp(pow(2, -1, self.p), self.p)

    def conj(self, x):
        return x


def _is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


class QuadConj:
    """Order-2 coefficient automorphism sqrt(d) -> -sqrt(d)."""

    order = 2

    def __init__(self, field: QuadField):
        self.field = field

    def __call__(self, x):
        return self.field.conj(x)


# ---------------------------------------------------------------------------
# local places and quadratic symbols
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalPlace:
    """A place of Q (real or p-adic), optionally carrying the square class d
    of a quadratic extension attached to a symmetric orbit."""

    p: Optional[int] = None  # None means the real place
    d: Optional[int] = None  # non-square class defining the extension

    @staticmethod
    def real(d: Optional[int] = None) -> "LocalPlace":
        return LocalPlace(None, d)

    @staticmethod
    def padic(p: int, d: Optional[int] = None) -> "LocalPlace":
        if not _is_prime(p):
            raise PlaceError(f"{p} is not prime")
        return LocalPlace(p, d)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __repr__(self):
        base = "real" if self.is_real else f"p={self.p}"
        return f"LocalPlace({base}" + (f", d={self.d})" if self.d is not None else ")")


def _valuation(x: Fraction, p: int) -> Tuple[int, Fraction]:
    """Return (v_p(x), unit part)."""
    if x == 0:
        raise PlaceError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _unit_mod(u: Fraction, m: int) -> int:
    """Reduce a p-unit fraction modulo m (m a power of the same p)."""
    return u.numerator * pow(u.denominator, -1, m) % m


def legendre_symbol(a: int, p: int) -> int:
    """(a|p) for odd prime p, a prime to p."""
    ls = pow(a % p, (p - 1) // 2, p)
    if ls == 0:
        raise PlaceError("Legendre symbol of a multiple of p")
    return -1 if ls == p - 1 else 1


def hilbert_symbol(a: Rat, b: Rat, place: LocalPlace) -> int:
    """The Hilbert symbol (a,b) at a place of Q.

    Returns +1 iff a is a norm from the quadratic etale algebra obtained by
    adjoining sqrt(b); symmetric and bimultiplicative.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PlaceError("Hilbert symbol requires nonzero arguments")
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    alpha, u = _valuation(a, p)
    beta, w = _valuation(b, p)
    if p != 2:
        eps = (p - 1) // 2
        sign = -1 if (alpha * beta * eps) % 2 else 1
        if beta % 2:
            sign *= legendre_symbol(_unit_mod(u, p), p)
        if alpha % 2:
            sign *= legendre_symbol(_unit_mod(w, p), p)
        return sign
    # p = 2: standard closed form via (u-1)/2 and (u^2-1)/8
    u8 = _unit_mod(u, 8)
    w8 = _unit_mod(w, 8)
    eps_u, eps_w = (u8 - 1) // 2 % 2, (w8 - 1) // 2 % 2
    om_u, om_w = (u8 * u8 - 1) // 8 % 2, (w8 * w8 - 1) // 8 % 2
    e = eps_u * eps_w + alpha * om_w + beta * om_u
    return -1 if e % 2 else 1


def hilbert_symbol_bruteforce(a: Rat, b: Rat, place: LocalPlace) -> int:
    """Independent oracle for the Hilbert symbol: exhaustive search for a
    primitive solution of z^2 = a*x^2 + b*y^2 to sufficient p-adic precision
    (mod p^3 for odd p, mod 2^6 at p=2).
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise PlaceError("Hilbert symbol requires nonzero arguments")
    if place.is_real:
        return 1 if (a > 0 or b > 0) else -1
    p = place.p
    m = 6 if p == 2 else 3
    pm = p ** m
    aa = _squareclass_rep(a, p, pm)
    bb = _squareclass_rep(b, p, pm)
    # tabulate squares once
    squares = {}
    for z in range(pm):
        squares.setdefault(z * z % pm, []).append(z)
    lift_bound = 2 if p == 2 else 1
    for x in range(pm):
        axx = aa * x * x % pm
        for y in range(pm):
            t = (axx + bb * y * y) % pm
            if t not in squares:
                continue
            for z in squares[t]:
                if x % p == 0 and y % p == 0 and z % p == 0:
                    continue
                # Hensel: some partial derivative must be small enough to lift
                if min(_int_val(2 * z, p, m), _int_val(2 * aa * x, p, m),
                       _int_val(2 * bb * y, p, m)) <= lift_bound:
                    return 1
    return -1


def _squareclass_rep(x: Fraction, p: int, pm: int) -> int:
    v, u = _valuation(x, p)
    return p ** (v % 2) * _unit_mod(u, pm) % pm


def _int_val(n: int, p: int, cap: int) -> int:
    if n % p ** cap == 0:
        return cap + 1
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_square_at(x: Rat, place: LocalPlace) -> bool:
    """Whether x is a square in the completion at the place."""
    x = Fraction(x)
    if x == 0:
        raise PlaceError("square test of zero")
    if place.is_real:
        return x > 0
    p = place.p
    v, u = _valuation(x, p)
    if v % 2:
        return False
    if p != 2:
        return legendre_symbol(_unit_mod(u, p), p) == 1
    return _unit_mod(u, 8) == 1


def quad_norm_sign(x: Rat, place: LocalPlace) -> int:
    """Sign character of the quadratic extension attached to the place.

    Equals +1 exactly on local norms from the extension by sqrt(d); this is
    the character associated to the extension by local class field theory.
    """
    if place.d is None:
        raise PlaceError("place carries no quadratic extension datum d")
    if is_square_at(place.d, place):
        raise PlaceError(f"d={place.d} is a square at {place}; extension is not quadratic")
    x = Fraction(x)
    if x == 0:
        raise PlaceError("sign character of zero")
    return hilbert_symbol(x, place.d, place)
