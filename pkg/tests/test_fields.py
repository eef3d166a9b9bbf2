import random
from fractions import Fraction

import pytest

from leavitt.fields import (
    QQ,
    ExtensionField,
    FieldError,
    LaurentElement,
    Poly,
    PrimeField,
    enumerate_monic,
    enumerate_monic_irreducibles,
    format_poly,
    irreducible_over_prime_field,
    is_irreducible,
    parse_field,
    parse_poly,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
GF4 = ExtensionField(F2, parse_poly("t^2+t+1", F2))
QSQRT2 = ExtensionField(QQ, parse_poly("t^2-2", QQ))

ALL_FIELDS = [QQ, F2, F3, GF4, QSQRT2]


class TestFieldOps:
    def test_rational_sum(self):
        assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)

    def test_gf4_tbar_square(self):
        tbar = GF4.tbar()
        assert GF4.mul(tbar, tbar) == GF4.add(tbar, GF4.one())

    def test_tbar_inverse(self):
        # in K[t]/(f) with f(0) != 0, tbar * inv(tbar) = 1
        for K in (GF4, QSQRT2, ExtensionField(QQ, parse_poly("t-3", QQ))):
            tbar = K.tbar()
            assert K.mul(tbar, K.inv(tbar)) == K.one()

    def test_inverse_of_zero(self):
        for K in ALL_FIELDS:
            with pytest.raises(ZeroDivisionError):
                K.inv(K.zero())

    @pytest.mark.parametrize("K", ALL_FIELDS, ids=lambda K: K.name)
    def test_field_axioms_random_triples(self, K):
        rng = random.Random(7)
        for _ in range(100):
            a, b, c = (K.random(rng) for _ in range(3))
            assert K.add(a, K.add(b, c)) == K.add(K.add(a, b), c)
            assert K.mul(a, K.mul(b, c)) == K.mul(K.mul(a, b), c)
            assert K.add(a, b) == K.add(b, a)
            assert K.mul(a, b) == K.mul(b, a)
            assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
            assert K.add(a, K.neg(a)) == K.zero()
            assert K.mul(a, K.one()) == a
            if not K.is_zero(a):
                assert K.mul(a, K.inv(a)) == K.one()

    def test_prime_field_requires_prime(self):
        with pytest.raises(FieldError):
            PrimeField(4)


class TestIrreducibility:
    def test_t2t1_over_f2(self):
        assert irreducible_over_prime_field(parse_poly("t^2+t+1", F2), 2)

    def test_t2_plus_1_over_f2_reducible(self):
        assert not irreducible_over_prime_field(parse_poly("t^2+1", F2), 2)

    def test_t_is_irreducible_but_excluded_downstream(self):
        t = Poly.t(F2)
        assert irreducible_over_prime_field(t, 2)
        assert t not in enumerate_monic_irreducibles(2, 3)
        with pytest.raises(FieldError, match="constant term"):
            ExtensionField(F2, t)

    def test_enumerate_f2(self):
        assert [str(f) for f in enumerate_monic_irreducibles(2, 1)] == ["t+1"]
        assert [str(f) for f in enumerate_monic_irreducibles(2, 2)] == ["t+1", "t^2+t+1"]
        deg3 = enumerate_monic_irreducibles(2, 3)
        assert [str(f) for f in deg3] == ["t+1", "t^2+t+1", "t^3+t+1", "t^3+t^2+1"]

    @pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (3, 2), (5, 1)])
    def test_count_against_brute_force_factoring(self, p, d):
        # Oracle: a monic polynomial of degree d is reducible iff it is a
        # product of two smaller-degree monics; enumerate all such products.
        field = PrimeField(p)
        reducible = set()
        for d1 in range(1, d):
            d2 = d - d1
            if d2 < 1:
                continue
            for g in enumerate_monic(field, d1):
                for h in enumerate_monic(field, d2):
                    reducible.add((g * h).coeffs)
        total = p ** d
        expected = total - len(reducible)
        got = sum(1 for f in enumerate_monic(field, d) if is_irreducible(f))
        assert got == expected

    def test_rationals_small_degree(self):
        assert is_irreducible(parse_poly("t^2-2", QQ))
        assert not is_irreducible(parse_poly("t^2-1", QQ))
        assert not is_irreducible(parse_poly("t^3+t^2-2", QQ))  # root t=1
        assert is_irreducible(parse_poly("t^3-2", QQ))

    def test_rationals_high_degree_needs_assertion(self):
        f = parse_poly("t^4+1", QQ)
        with pytest.raises(FieldError):
            is_irreducible(f)
        assert is_irreducible(f, assume_irreducible=True)
        K = ExtensionField(QQ, f, assume_irreducible=True)
        assert K.irreducibility_asserted


class TestPolyText:
    @pytest.mark.parametrize("text", ["t^3+t+1", "t+1", "t^2+t+1", "t^2-2", "2"])
    def test_roundtrip(self, text):
        K = QQ if "-" in text or text == "2" else F2
        assert format_poly(parse_poly(text, K)) == text

    def test_parse_field_specs(self):
        assert parse_field("Q") is QQ or parse_field("Q") == QQ
        assert parse_field("F2") == F2
        K = parse_field("F2[t]/(t^2+t+1)")
        assert isinstance(K, ExtensionField) and K.degree == 2

    def test_divmod(self):
        f = parse_poly("t^3+t+1", QQ)
        g = parse_poly("t+2", QQ)
        q, r = f.divmod(g)
        assert q * g + r == f
        assert r.degree < g.degree


class TestLaurent:
    def test_mul_inverse_powers(self):
        x = LaurentElement.make(QQ, 2, {2: Fraction(1)})
        y = LaurentElement.make(QQ, 2, {-2: Fraction(1)})
        assert x.mul(y) == LaurentElement.make(QQ, 2, {0: Fraction(1)})

    def test_homogeneous_component(self):
        z = LaurentElement.make(QQ, 2, {2: Fraction(1), 4: Fraction(3)})
        assert z.homogeneous_component(4) == LaurentElement.make(QQ, 2, {4: Fraction(3)})
        assert z.homogeneous_component(3).is_zero

    def test_shifted_component_lookup(self):
        # degree-d component of the m-shifted module is the (d+m) component
        z = LaurentElement.make(QQ, 2, {2: Fraction(1), 4: Fraction(3)})
        for m in (0, 1, 2, -2):
            for d in range(-4, 5):
                assert z.homogeneous_component(d, shift=m) == z.homogeneous_component(d + m)

    def test_step_enforced(self):
        with pytest.raises(FieldError):
            LaurentElement.make(QQ, 2, {3: Fraction(1)})
        with pytest.raises(FieldError):
            LaurentElement.make(QQ, 2, {2: Fraction(1)}).mul(
                LaurentElement.make(QQ, 3, {3: Fraction(1)})
            )

    def test_degrees_add(self):
        x = LaurentElement.make(F2, 1, {1: 1})
        y = LaurentElement.make(F2, 1, {2: 1})
        assert x.mul(y).terms == ((3, 1),)
