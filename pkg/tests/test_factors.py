"""Endoscopic sign data, the change-of-a-data sign, the first-factor ratio,
and the factor-expression calculus."""

import random
from fractions import Fraction

import pytest

from splitinv.coeffs import LocalPlace
from splitinv.errors import FactorError
from splitinv.factors import (EndoscopicSignDatum, FactorExpression, RootOfUnity,
                              adata_change_sign, build_factor_expression,
                              chi_invariance_check, comes_from_h,
                              delta_d_via_inverse_chi, delta_i_ratio,
                              half_on_divisible, restricted_galois_orbits)
from splitinv.rootdata import (PinnedAutomorphism, build_root_datum,
                               restrict_root_system)
from splitinv.splitting import DescentDatum

ONE, MINUS = RootOfUnity.one(), RootOfUnity.minus_one()


def a2_flip_setup():
    d = build_root_datum([("A", 2)])
    theta = PinnedAutomorphism(d, [1, 0])
    rrs = restrict_root_system(d, theta)
    desc = DescentDatum(d, 2, d.longest_element())
    return rrs, desc


def sign_datum(rrs, desc, val_short, val_long, place):
    values = {(1,): val_short, (-1,): val_short, (2,): val_long, (-2,): val_long}
    orbits = restricted_galois_orbits(rrs, desc)
    places = {o.members: place for o in orbits if o.symmetric}
    return EndoscopicSignDatum(rrs, desc, values, places)


class TestSignDatum:
    def test_orbits_symmetric_under_long_element(self):
        rrs, desc = a2_flip_setup()
        orbits = restricted_galois_orbits(rrs, desc)
        assert all(o.symmetric for o in orbits)
        assert {o.members for o in orbits} == {((-1,), (1,)), ((-2,), (2,))}

    def test_asymmetric_orbits(self):
        d = build_root_datum([("A", 4)])
        theta = PinnedAutomorphism(d, [3, 2, 1, 0])
        rrs = restrict_root_system(d, theta)
        beta0 = rrs.simple_restricted[0]
        desc = DescentDatum(d, 2, rrs.levi_longest[beta0])
        orbits = restricted_galois_orbits(rrs, desc)
        assert any(not o.symmetric for o in orbits)
        assert any(o.symmetric for o in orbits)

    def test_nonreal_value_on_symmetric_orbit_rejected(self):
        rrs, desc = a2_flip_setup()
        zeta3 = RootOfUnity.make(Fraction(1, 3))
        values = {(1,): zeta3, (-1,): zeta3.inv(), (2,): ONE, (-2,): ONE}
        orbits = restricted_galois_orbits(rrs, desc)
        places = {o.members: LocalPlace.padic(5, 2) for o in orbits}
        with pytest.raises(FactorError):
            EndoscopicSignDatum(rrs, desc, values, places)

    def test_missing_place_rejected(self):
        rrs, desc = a2_flip_setup()
        values = {(1,): ONE, (-1,): ONE, (2,): MINUS, (-2,): MINUS}
        with pytest.raises(FactorError):
            EndoscopicSignDatum(rrs, desc, values, {})


class TestComesFromH:
    def test_divisible_with_minus_one(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.padic(5, 2))
        assert comes_from_h(rrs, sd, (2,))

    def test_indivisible_with_plus_one(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.padic(5, 2))
        assert comes_from_h(rrs, sd, (1,))

    def test_r2_with_minus_one_is_out(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, MINUS, MINUS, LocalPlace.padic(5, 2))
        assert not comes_from_h(rrs, sd, (1,))

    def test_constant_on_orbits(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.padic(5, 2))
        for orbit in restricted_galois_orbits(rrs, desc):
            flags = {comes_from_h(rrs, sd, w) for w in orbit.members}
            assert len(flags) == 1


class TestChangeSign:
    def test_trivial_multiplier(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.padic(5, 2))
        b = {v: Fraction(1) for v in rrs.restricted}
        assert adata_change_sign(rrs, sd, b) == 1

    def test_square_multipliers(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.padic(5, 2))
        b = {v: Fraction(9, 4) for v in rrs.restricted}
        assert adata_change_sign(rrs, sd, b) == 1

    def test_contributing_orbits(self):
        rrs, desc = a2_flip_setup()
        # divisible root in the endoscopic set: contributes; the indivisible
        # orbit contributes only when it is out
        place = LocalPlace.padic(5, 2)  # unramified: sign = valuation parity
        sd = sign_datum(rrs, desc, ONE, MINUS, place)
        b = {(1,): Fraction(1), (-1,): Fraction(1),
             (2,): Fraction(5), (-2,): Fraction(5)}
        assert adata_change_sign(rrs, sd, b) == -1
        sd2 = sign_datum(rrs, desc, MINUS, MINUS, place)
        b2 = {(1,): Fraction(5), (-1,): Fraction(5),
              (2,): Fraction(1), (-2,): Fraction(1)}
        assert adata_change_sign(rrs, sd2, b2) == -1

    def test_multiplicative(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, MINUS, MINUS, LocalPlace.padic(2, 5))
        rng = random.Random(0)
        orbits = restricted_galois_orbits(rrs, desc)
        for _ in range(40):
            def rand_mult():
                out = {}
                for o in orbits:
                    v = Fraction(rng.randint(1, 9), rng.randint(1, 9))
                    for w in o.members:
                        out[w] = v
                return out
            b1, b2 = rand_mult(), rand_mult()
            b12 = {k: b1[k] * b2[k] for k in b1}
            assert adata_change_sign(rrs, sd, b12) == \
                adata_change_sign(rrs, sd, b1) * adata_change_sign(rrs, sd, b2)

    def test_zero_rejected(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.padic(5, 2))
        b = {v: Fraction(0) for v in rrs.restricted}
        with pytest.raises(FactorError):
            adata_change_sign(rrs, sd, b)


class TestDeltaIRatio:
    def test_no_divisible_roots_gives_one(self):
        d = build_root_datum([("A", 3)])
        theta = PinnedAutomorphism(d, [2, 1, 0])
        rrs = restrict_root_system(d, theta)
        desc = DescentDatum(d, 2, d.longest_element())
        orbits = restricted_galois_orbits(rrs, desc)
        values = {}
        places = {}
        for o in orbits:
            for w in o.members:
                values[w] = ONE
            if o.symmetric:
                places[o.members] = LocalPlace.padic(3, -1)
        sd = EndoscopicSignDatum(rrs, desc, values, places)
        assert delta_i_ratio(rrs, sd) == 1

    def test_real_place_positive_norm(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.real(-1))
        assert delta_i_ratio(rrs, sd) == 1  # 2 > 0 is a norm from C

    def test_two_at_two_unramified(self):
        rrs, desc = a2_flip_setup()
        sd = sign_datum(rrs, desc, ONE, MINUS, LocalPlace.padic(2, 5))
        assert delta_i_ratio(rrs, sd) == -1

    def test_matches_change_sign_at_half(self):
        rng = random.Random(1)
        pool = (LocalPlace.real(-1), LocalPlace.padic(2, 5), LocalPlace.padic(2, -1),
                LocalPlace.padic(3, -1), LocalPlace.padic(5, 2), LocalPlace.padic(5, 5))
        for fam, rank, perm in (("A", 2, (1, 0)), ("A", 4, (3, 2, 1, 0))):
            d = build_root_datum([(fam, rank)])
            theta = PinnedAutomorphism(d, perm)
            rrs = restrict_root_system(d, theta)
            desc = DescentDatum(d, 2, d.longest_element())
            orbits = restricted_galois_orbits(rrs, desc)
            for _ in range(30):
                values, places = {}, {}
                for o in orbits:
                    val = rng.choice([ONE, MINUS])
                    for w in o.members:
                        values[w] = val
                    if o.symmetric:
                        places[o.members] = rng.choice(pool)
                sd = EndoscopicSignDatum(rrs, desc, values, places)
                assert delta_i_ratio(rrs, sd) == \
                    adata_change_sign(rrs, sd, half_on_divisible(rrs))


class TestFactorExpressions:
    def test_exponent_maps(self):
        assert build_factor_expression("delta_ks").to_dict() == \
            {"I_old": 1, "II": 1, "III": 1, "IV": 1}
        assert build_factor_expression("delta_d").to_dict() == \
            {"I_new": 1, "II": -1, "III": 1, "IV": 1}
        assert build_factor_expression("delta_prime").to_dict() == \
            {"I_new": -1, "II": 1, "III": -1, "IV": 1}

    def test_whittaker_variants_use_plain_epsilon(self):
        for v in ("delta_d_lambda", "delta_prime_lambda"):
            assert build_factor_expression(v).exponent("eps_L") == 1

    def test_chi_invariance(self):
        assert chi_invariance_check(build_factor_expression("delta_d"))
        assert chi_invariance_check(build_factor_expression("delta_prime"))
        assert not chi_invariance_check(build_factor_expression("delta_ks"))
        assert chi_invariance_check(build_factor_expression("delta_d_lambda"))
        assert chi_invariance_check(build_factor_expression("delta_prime_lambda"))

    def test_two_definitions_agree(self):
        assert delta_d_via_inverse_chi() == build_factor_expression("delta_d")

    def test_chi_inversion_is_involutive_on_invariant_expressions(self):
        e = build_factor_expression("delta_d")
        assert e.invert_chi_data().invert_chi_data() == e
        # an invariant expression keeps its variation at zero
        assert e.invert_chi_data().chi_variation == 0

    def test_unknown_variant(self):
        with pytest.raises(FactorError):
            build_factor_expression("delta_x")

    def test_unknown_term(self):
        with pytest.raises(FactorError):
            FactorExpression.make(V=1)
