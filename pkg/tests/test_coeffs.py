"""Coefficient layer: symbolic units, quadratic extensions, prime fields,
and the Hilbert symbol against its brute-force norm-search oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from splitinv.coeffs import (LocalPlace, PrimeField, QuadField,
                             SignedSymbolMap, SymUnit, hilbert_symbol,
                             hilbert_symbol_bruteforce, is_square_at,
                             legendre_symbol, quad_norm_sign)
from splitinv.errors import CoefficientError, PlaceError

nonzero_rational = st.fractions(min_value=-30, max_value=30).filter(lambda x: x != 0)


class TestSymbolicUnits:
    def test_one_and_signs(self):
        one = SymUnit.one()
        assert (-one) * (-one) == one
        assert -(-one) == one

    def test_half_times_two(self):
        two = SymUnit.gen("2")
        assert SymUnit.half() * two == SymUnit.one()

    @settings(deadline=None, max_examples=60)
    @given(st.lists(st.tuples(st.sampled_from("abc2"), st.integers(-4, 4),
                              st.sampled_from([1, -1])), max_size=8))
    def test_cancellation(self, word):
        u = SymUnit.one()
        for name, e, s in word:
            u = u * SymUnit.gen(name, e, s)
        assert (u * u.inv()).is_one
        assert (u ** 3) * (u ** -3) == SymUnit.one()

    def test_signed_map(self):
        m = SignedSymbolMap({"a": (-1, "a"), "b": (1, "c"), "c": (1, "b")})
        a, b = SymUnit.gen("a"), SymUnit.gen("b")
        assert m(a) == -a
        assert m(a ** 2) == a ** 2
        assert m(b) == SymUnit.gen("c")
        assert m.order == 2


class TestQuadField:
    def test_arithmetic(self):
        f = QuadField(5)
        x = f.embed(Fraction(1, 2)) + f.gen() * f.from_int(3)
        assert x * x.inv() == f.one()
        assert (x ** 3) * (x ** -3) == f.one()
        assert f.conj(f.gen()) == -f.gen()
        assert f.conj(x * x) == f.conj(x) * f.conj(x)

    def test_rejects_square_discriminant(self):
        with pytest.raises(CoefficientError):
            QuadField(9)

    def test_norm_formula(self):
        f = QuadField(-1)
        x = f.embed(3) + f.gen() * f.embed(Fraction(1, 4))
        n = x * f.conj(x)
        assert n.v == 0 and n.u == Fraction(9) + Fraction(1, 16)


class TestPrimeField:
    def test_basic(self):
        f = PrimeField(5)
        assert f.half() == f.from_int(3)
        assert (f.from_int(2) * f.half()) == f.one()
        x = f.from_int(4)
        assert x ** -1 == f.from_int(4)

    def test_characteristic_two_rejected(self):
        with pytest.raises(CoefficientError):
            PrimeField(2)

    def test_composite_rejected(self):
        with pytest.raises(CoefficientError):
            PrimeField(9)


PLACES = [LocalPlace.real(), LocalPlace.padic(2), LocalPlace.padic(3),
          LocalPlace.padic(5), LocalPlace.padic(7)]


class TestHilbertSymbol:
    def test_trivial_cases(self):
        # -1 is not a norm from C over R; 1 is a norm everywhere
        assert hilbert_symbol(-1, -1, LocalPlace.real()) == -1
        for place in PLACES:
            assert hilbert_symbol(1, 7, place) == 1
            assert hilbert_symbol(5, 1, place) == 1

    def test_two_five_at_five(self):
        # brute force: x^2 - 5 y^2 does not represent 2 up to squares at p=5
        assert hilbert_symbol_bruteforce(2, 5, LocalPlace.padic(5)) == -1
        assert hilbert_symbol(2, 5, LocalPlace.padic(5)) == -1

    def test_oracle_agreement_curated(self):
        values = [1, -1, 2, -2, 3, -3, 5, 6, 7, 10, -10,
                  Fraction(1, 2), Fraction(-3, 4), Fraction(5, 9)]
        for place in PLACES[:4]:
            for a in values:
                for b in values:
                    assert hilbert_symbol(a, b, place) == \
                        hilbert_symbol_bruteforce(a, b, place), (a, b, place)

    @settings(deadline=None, max_examples=120)
    @given(nonzero_rational, nonzero_rational, nonzero_rational,
           st.sampled_from(PLACES))
    def test_symmetry_and_bimultiplicativity(self, a, b, c, place):
        assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)
        assert hilbert_symbol(a * b, c, place) == \
            hilbert_symbol(a, c, place) * hilbert_symbol(b, c, place)

    @settings(deadline=None, max_examples=80)
    @given(nonzero_rational, st.sampled_from(PLACES))
    def test_a_minus_a(self, a, place):
        assert hilbert_symbol(a, -a, place) == 1

    @settings(deadline=None, max_examples=60)
    @given(nonzero_rational, nonzero_rational)
    def test_product_formula(self, a, b):
        primes = set()
        for x in (a, b):
            for n in (abs(x.numerator), x.denominator):
                d = 2
                while d * d <= n:
                    while n % d == 0:
                        primes.add(d)
                        n //= d
                    d += 1
                if n > 1:
                    primes.add(n)
        total = hilbert_symbol(a, b, LocalPlace.real())
        for p in primes | {2}:
            total *= hilbert_symbol(a, b, LocalPlace.padic(p))
        assert total == 1

    def test_zero_rejected(self):
        with pytest.raises(PlaceError):
            hilbert_symbol(0, 3, LocalPlace.real())


class TestQuadNormSign:
    def test_squares_are_norms(self):
        for place in (LocalPlace.padic(5, 2), LocalPlace.padic(3, -1),
                      LocalPlace.real(-1)):
            for y in (2, 3, Fraction(5, 4), 7):
                assert quad_norm_sign(y * y, place) == 1

    def test_unramified_valuation_parity(self):
        # d a non-square unit at odd p: norms are exactly the even-valuation
        # elements, so the uniformizer has sign -1
        place = LocalPlace.padic(5, 2)
        assert quad_norm_sign(5, place) == -1
        assert quad_norm_sign(25, place) == 1
        assert quad_norm_sign(2, place) == 1  # units are norms here

    def test_sign_of_two(self):
        # the element 2 is a unit of odd valuation at p=2, hence not a norm
        # from the unramified extension there
        assert quad_norm_sign(2, LocalPlace.padic(2, 5)) == -1
        # ramified case at p=5: sign given by the Legendre symbol of 2
        assert quad_norm_sign(2, LocalPlace.padic(5, 5)) == legendre_symbol(2, 5)
        # over the reals every positive number is a norm from C
        assert quad_norm_sign(2, LocalPlace.real(-1)) == 1

    def test_equals_hilbert_symbol(self):
        place = LocalPlace.padic(5, 2)
        for x in (2, 3, 5, Fraction(1, 2), -7):
            assert quad_norm_sign(x, place) == hilbert_symbol(x, 2, place)

    def test_homomorphism_and_norm_triviality(self):
        place = LocalPlace.padic(3, -1)
        f = QuadField(-1)
        for u, v in ((1, 2), (2, 3), (Fraction(1, 3), 1), (4, Fraction(5, 2))):
            nrm = Fraction(u) ** 2 + Fraction(v) ** 2  # norm from Q(i)
            assert quad_norm_sign(nrm, place) == 1

    def test_square_d_rejected(self):
        with pytest.raises(PlaceError):
            quad_norm_sign(3, LocalPlace.padic(5, 4))
        with pytest.raises(PlaceError):
            quad_norm_sign(3, LocalPlace.real(4))

    def test_missing_d_rejected(self):
        with pytest.raises(PlaceError):
            quad_norm_sign(3, LocalPlace.padic(5))


def test_is_square_at():
    assert is_square_at(4, LocalPlace.real())
    assert not is_square_at(-4, LocalPlace.real())
    assert is_square_at(Fraction(1, 4), LocalPlace.padic(2))
    assert not is_square_at(2, LocalPlace.padic(2))
    assert is_square_at(17, LocalPlace.padic(2))  # 17 = 1 mod 8
    assert not is_square_at(5, LocalPlace.padic(5))
