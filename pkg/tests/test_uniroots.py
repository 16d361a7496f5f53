import random
from fractions import Fraction

import pytest

from foltools.gaussian import GaussianRational, gr
from foltools.uniroots import (
    count_real_roots,
    factor_int,
    gi_divisors,
    gi_factor,
    gi_gcd,
    gi_norm,
    qi_roots,
    udivmod,
    ugcd,
)


def test_factor_int():
    assert factor_int(2**6 * 3**2 * 97) == {2: 6, 3: 2, 97: 1}
    assert factor_int(1) == {}
    big = 1000003 * 1000033
    assert factor_int(big) == {1000003: 1, 1000033: 1}


def test_gaussian_integer_basics():
    assert gi_norm((3, 4)) == 25
    g = gi_gcd((5, 0), (2, 1))
    assert gi_norm(g) == 5  # 2+i divides 5
    fac = gi_factor((5, 0))
    assert sorted(gi_norm(p) for p, _ in fac) == [5, 5]
    divs = gi_divisors((4, 0))
    assert len(divs) == 5  # 1, 1+i, 2, 2+2i, 4 up to units


def test_roots_rational_and_gaussian():
    # (x - 1)(x - 2)(x - 3)
    rep = qi_roots([gr(-6), gr(11), gr(-6), gr(1)])
    assert sorted(str(r) for r in rep.roots) == ["1", "2", "3"]
    assert rep.residual_degree == 0
    # x^2 + 1
    rep = qi_roots([gr(1), gr(0), gr(1)])
    assert set(rep.roots) == {gr(0, 1), gr(0, -1)}
    # x^3 + 2 has no roots in Q(i)
    rep = qi_roots([gr(2), gr(0), gr(0), gr(1)])
    assert rep.roots == [] and rep.residual_degree == 3
    # mixed: (x - i)(x^2 - 2) -> one Gaussian root, quadratic residual
    p = [gr(0, 2), gr(-2), gr(0, -1), gr(1)]
    rep = qi_roots(p)
    assert rep.roots == [gr(0, 1)]
    assert rep.residual_degree == 2


def test_roots_with_multiplicity_and_zero():
    # x^2 (x - 1/2)^2 -> roots {0, 1/2} once each (squarefree reduction)
    c = [gr(0), gr(0), gr("1/4"), gr(-1), gr(1)]
    rep = qi_roots(c)
    assert set(rep.roots) == {gr(0), gr("1/2")}


def test_roots_random_products(rng=None):
    rnd = random.Random(42)
    for _ in range(120):
        roots = []
        for _k in range(rnd.randint(1, 4)):
            roots.append(
                GaussianRational(
                    Fraction(rnd.randint(-6, 6), rnd.randint(1, 3)),
                    Fraction(rnd.randint(-6, 6), rnd.randint(1, 3)) if rnd.random() < 0.4 else Fraction(0),
                )
            )
        coeffs = [gr(1)]
        for r in roots:
            # multiply by (x - r)
            new = [gr(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                new[i + 1] = new[i + 1] + c
                new[i] = new[i] - c * r
            coeffs = new
        rep = qi_roots(coeffs)
        assert set(rep.roots) == set(roots)
        assert rep.residual_degree == 0


def test_sturm_counts():
    # x^2 - 2: two real roots
    assert count_real_roots([Fraction(-2), Fraction(0), Fraction(1)]) == 2
    # x^2 + 1: none
    assert count_real_roots([Fraction(1), Fraction(0), Fraction(1)]) == 0
    # (x-1)(x-2)(x-3) on (0, 5/2]
    c = [Fraction(-6), Fraction(11), Fraction(-6), Fraction(1)]
    assert count_real_roots(c, Fraction(0), Fraction(5, 2)) == 2
    assert count_real_roots(c, Fraction(3), None) == 0
    # repeated roots counted once
    assert count_real_roots([Fraction(1), Fraction(-2), Fraction(1)]) == 1


def test_udivmod_and_gcd():
    # (x^2 - 1) = (x + 1)(x - 1)
    q, r = udivmod([gr(-1), gr(0), gr(1)], [gr(1), gr(1)])
    assert q == [gr(-1), gr(1)] and r == []
    g = ugcd([gr(-1), gr(0), gr(1)], [gr(1), gr(1)])
    assert g == [gr(1), gr(1)]
