import random
from fractions import Fraction

import pytest

from foltools.gaussian import GaussianRational, I, ONE, ZERO, gr


def test_normalization_and_equality():
    a = GaussianRational(Fraction(2, 4), Fraction(-6, 4))
    assert a.re == Fraction(1, 2) and a.im == Fraction(-3, 2)
    assert a == gr("1/2", "-3/2")
    assert hash(a) == hash(gr("1/2", "-3/2"))


def test_field_arithmetic():
    assert I * I == gr(-1)
    z = gr(1, 2)
    w = gr(3, -1)
    assert z * w == gr(5, 5)
    assert (z / w) * w == z
    assert z + (-z) == ZERO
    assert z * z.inverse() == ONE
    assert (z**5) * (z**-5) == ONE


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_sqrt_exact_cases():
    assert gr(4).sqrt() == gr(2)
    assert gr(-9).sqrt() == gr(0, 3)
    assert gr(0, 2).sqrt() in (gr(1, 1), gr(-1, -1))
    assert gr(2).sqrt() is None  # irrational
    assert gr(1, 1).sqrt() is None  # |1+i| is irrational
    assert gr("9/4").sqrt() == gr("3/2")


def test_sqrt_roundtrip_random():
    rng = random.Random(7)
    for _ in range(300):
        w = gr(Fraction(rng.randint(-8, 8), rng.randint(1, 5)), Fraction(rng.randint(-8, 8), rng.randint(1, 5)))
        z = w * w
        s = z.sqrt()
        assert s is not None and s * s == z


def test_real_predicates():
    assert gr(3).is_real() and not gr(3, 1).is_real()
    assert float(gr("7/2")) == 3.5
    with pytest.raises(ValueError):
        gr(1, 1).as_fraction()
