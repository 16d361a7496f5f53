"""Shared fixtures and random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from foltools.gaussian import GaussianRational, gr
from foltools.polyring import MultiPoly


def random_coeff(rng: random.Random, complex_prob: float = 0.3) -> GaussianRational:
    num = rng.randint(-9, 9)
    den = rng.randint(1, 4)
    re = Fraction(num, den)
    im = Fraction(0)
    if rng.random() < complex_prob:
        im = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return GaussianRational(re, im)


def random_poly(
    rng: random.Random,
    arity: int = 2,
    max_degree: int = 3,
    max_terms: int = 4,
    complex_prob: float = 0.3,
    nonzero: bool = False,
) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
        exps = []
        remaining = max_degree
        for _v in range(arity - 1):
            e = rng.randint(0, remaining)
            exps.append(e)
            remaining -= e
        exps.append(rng.randint(0, remaining))
        c = random_coeff(rng, complex_prob)
        if not c.is_zero():
            terms[tuple(exps)] = c
    p = MultiPoly(arity, terms)
    if nonzero and p.is_zero():
        return MultiPoly.constant(arity, gr(rng.randint(1, 5)))
    return p


def random_real_poly(rng: random.Random, arity: int = 2, max_degree: int = 3, max_terms: int = 5) -> MultiPoly:
    return random_poly(rng, arity, max_degree, max_terms, complex_prob=0.0)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)


@pytest.fixture(scope="session")
def quartic_ovalset():
    """Counting the 4-oval quartic at resolution 512 is the slow oracle run;
    share it across tests."""
    from foltools.construct import gallery
    from foltools.realtopo import Box, count_ovals

    curve = gallery("quartic-4-ovals").curve
    return curve, count_ovals(curve, Box.square(2), 512)
