"""Exact univariate machinery: roots in Q(i), Sturm counts, Gaussian integers.

Root extraction is complete for linear factors (rational-root search over
Z[i] divisors) and for quadratic remainders (exact square roots in Q(i)).
Whatever is left provably has no roots in Q(i); its degree is reported as
the residual count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import RootSearchOverflow
from .gaussian import GaussianRational, ONE, ZERO, gr

Coeffs = list[GaussianRational]  # index = power, low to high

_FACTOR_DIGIT_CAP = 10**40  # norms beyond this abort rather than risk unsound output
_CANDIDATE_CAP = 200_000


# -- generic coefficient-list helpers ----------------------------------------


def utrim(c: Coeffs) -> Coeffs:
    while c and c[-1].is_zero():
        c.pop()
    return c


def udeg(c: Coeffs) -> int:
    return len(c) - 1


def ueval(c: Coeffs, x: GaussianRational) -> GaussianRational:
    acc = ZERO
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def uderiv(c: Coeffs) -> Coeffs:
    return utrim([c[k] * k for k in range(1, len(c))])


def uscale(c: Coeffs, s: GaussianRational) -> Coeffs:
    return [a * s for a in c]


def umonic(c: Coeffs) -> Coeffs:
    return uscale(c, c[-1].inverse())


def udivmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    b = utrim(list(b))
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = utrim(list(a))
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        if a[-1].is_zero():
            a.pop()
            continue
        k = len(a) - len(b)
        f = a[-1] * inv
        q[k] = f
        for i, bc in enumerate(b):
            a[k + i] = a[k + i] - f * bc
        a.pop()
    return utrim(q), utrim(a)


def ugcd(a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = utrim(list(a)), utrim(list(b))
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a) if a else a


def usquarefree(c: Coeffs) -> Coeffs:
    """Squarefree part (product of distinct roots), monic."""
    d = uderiv(c)
    if not d:
        return umonic(list(c)) if c else []
    g = ugcd(c, d)
    if udeg(g) == 0:
        return umonic(list(c))
    q, r = udivmod(c, g)
    assert not r
    return umonic(q)


def deflate(c: Coeffs, root: GaussianRational) -> Coeffs:
    """Divide by (x - root); the root must be exact."""
    q, r = udivmod(c, [-root, ONE])
    assert not r, "deflation by a non-root"
    return q


# -- Gaussian integer arithmetic ----------------------------------------------

GInt = tuple[int, int]  # a + b*i


def gi_mul(u: GInt, v: GInt) -> GInt:
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def gi_norm(u: GInt) -> int:
    return u[0] * u[0] + u[1] * u[1]


def gi_divmod(u: GInt, v: GInt) -> tuple[GInt, GInt]:
    """Euclidean division with nearest-integer rounding; |rem| < |v|."""
    n = gi_norm(v)
    xr = u[0] * v[0] + u[1] * v[1]
    xi = u[1] * v[0] - u[0] * v[1]
    qr = (2 * xr + n) // (2 * n)
    qi = (2 * xi + n) // (2 * n)
    q = (qr, qi)
    r = (u[0] - (q[0] * v[0] - q[1] * v[1]), u[1] - (q[0] * v[1] + q[1] * v[0]))
    return q, r


def gi_gcd(u: GInt, v: GInt) -> GInt:
    while v != (0, 0):
        u, v = v, gi_divmod(u, v)[1]
    return u


UNITS: tuple[GInt, ...] = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 40):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise RootSearchOverflow(f"failed to factor {n}")


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer."""
    if n <= 0:
        raise ValueError("factor_int expects a positive integer")
    if n > _FACTOR_DIGIT_CAP:
        raise RootSearchOverflow("integer too large for exact factorization")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return out


def _gaussian_prime_above(p: int) -> GInt:
    """A Gaussian prime dividing the split rational prime p (p % 4 == 1)."""
    a = 2
    while pow(a, (p - 1) // 2, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    return gi_gcd((p, 0), (x, 1))


def gi_factor(u: GInt) -> list[tuple[GInt, int]]:
    """Gaussian prime factorization up to units."""
    if u == (0, 0):
        raise ValueError("cannot factor zero")
    out: list[tuple[GInt, int]] = []
    for p, _e in sorted(factor_int(gi_norm(u)).items()):
        if p == 2:
            pi: GInt = (1, 1)
            cands = [pi]
        elif p % 4 == 3:
            cands = [(p, 0)]
        else:
            pi = _gaussian_prime_above(p)
            cands = [pi, (pi[0], -pi[1])]
        for pi in cands:
            k = 0
            while True:
                q, r = gi_divmod(u, pi)
                if r != (0, 0):
                    break
                u, k = q, k + 1
            if k:
                out.append((pi, k))
    assert gi_norm(u) == 1, "unit should remain after removing all primes"
    return out


def gi_divisors(u: GInt) -> list[GInt]:
    """All divisors of u up to units (one representative per associate class)."""
    divs: list[GInt] = [(1, 0)]
    for prime, mult in gi_factor(u):
        more: list[GInt] = []
        pk: GInt = (1, 0)
        for _ in range(mult):
            pk = gi_mul(pk, prime)
            more.extend(gi_mul(d, pk) for d in divs)
        divs.extend(more)
        if len(divs) > _CANDIDATE_CAP:
            raise RootSearchOverflow("divisor enumeration too large")
    return divs


# -- roots in Q(i) -------------------------------------------------------------


@dataclass
class RootReport:
    """Exact roots plus a provable account of what was not resolved.

    `unresolved` factors provably have no Q(i) roots (residual_degree sums
    their degrees).  `uncertain` factors exhausted the divisor-search budget:
    they may still have rational roots, so callers must treat them as
    entirely undecided.
    """

    roots: list[GaussianRational] = field(default_factory=list)
    residual_degree: int = 0
    unresolved: list[Coeffs] = field(default_factory=list)
    uncertain_degree: int = 0
    uncertain: list[Coeffs] = field(default_factory=list)


def _to_gauss_integers(c: Coeffs) -> list[GInt]:
    den = 1
    for a in c:
        den = den * a.re.denominator // math.gcd(den, a.re.denominator)
        den = den * a.im.denominator // math.gcd(den, a.im.denominator)
    ints = [(int(a.re * den), int(a.im * den)) for a in c]
    g: GInt = (0, 0)
    for u in ints:
        if u != (0, 0):
            g = gi_gcd(g, u)
    if gi_norm(g) > 1:
        ints = [gi_divmod(u, g)[0] for u in ints]
    return ints


def _quadratic_roots(c: Coeffs) -> list[GaussianRational] | None:
    """Both roots of a quadratic if they lie in Q(i); None otherwise."""
    a2, a1, a0 = c[2], c[1], c[0]
    disc = a1 * a1 - gr(4) * a2 * a0
    s = disc.sqrt()
    if s is None:
        return None
    inv = (gr(2) * a2).inverse()
    return [(-a1 + s) * inv, (-a1 - s) * inv]


def _rational_root_candidates(c: Coeffs) -> list[GaussianRational] | None:
    """All rational-root candidates, or None when the search would explode."""
    ints = _to_gauss_integers(c)
    c0, cn = ints[0], ints[-1]
    try:
        d0 = gi_divisors(c0)
        dn = gi_divisors(cn)
    except RootSearchOverflow:
        return None
    if len(d0) * len(dn) * 4 > _CANDIDATE_CAP:
        return None
    out = []
    for p in d0:
        for q in dn:
            qn = gi_norm(q)
            for u in UNITS:
                pu = gi_mul(p, u)
                # (pu / q) as a Gaussian rational: pu * conj(q) / |q|^2
                num = gi_mul(pu, (q[0], -q[1]))
                out.append(GaussianRational(Fraction(num[0], qn), Fraction(num[1], qn)))
    return out


def qi_roots(c: Coeffs) -> RootReport:
    """All roots of a univariate polynomial that lie in Q(i), plus residual.

    Multiplicities are dropped (the squarefree part is used).  The residual
    factor is guaranteed to have no Q(i) roots at all.
    """
    report = RootReport()
    c = utrim(list(c))
    if not c:
        raise ValueError("root extraction on the zero polynomial")
    if udeg(c) == 0:
        return report
    c = usquarefree(c)
    if c[0].is_zero():
        report.roots.append(ZERO)
        c = utrim(c[1:])
    while udeg(c) >= 1:
        if udeg(c) == 1:
            report.roots.append(-c[0] / c[1])
            return report
        if udeg(c) == 2:
            roots = _quadratic_roots(c)
            if roots is None:
                report.residual_degree += 2
                report.unresolved.append(c)
                return report
            report.roots.extend(roots)
            return report
        try:
            candidates = _rational_root_candidates(c)
        except RootSearchOverflow:
            candidates = None
        if candidates is None:
            report.uncertain_degree += udeg(c)
            report.uncertain.append(c)
            return report
        found = None
        seen: set[GaussianRational] = set()
        for cand in candidates:
            if cand in seen:
                continue
            seen.add(cand)
            if ueval(c, cand).is_zero():
                found = cand
                break
        if found is None:
            report.residual_degree += udeg(c)
            report.unresolved.append(c)
            return report
        report.roots.append(found)
        c = deflate(c, found)
    return report


# -- Sturm sequences over the real rationals -----------------------------------

RCoeffs = list[Fraction]


def real_coeffs(c: Coeffs) -> RCoeffs:
    out = []
    for a in c:
        if a.im:
            raise ValueError("polynomial has non-real coefficients")
        out.append(a.re)
    while out and not out[-1]:
        out.pop()
    return out


def _rdivmod(a: RCoeffs, b: RCoeffs) -> tuple[RCoeffs, RCoeffs]:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, bc in enumerate(b):
            a[k + i] -= f * bc
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def sturm_chain(c: RCoeffs) -> list[RCoeffs]:
    p0 = list(c)
    p1 = [c[k] * k for k in range(1, len(c))]
    chain = [p0]
    if p1:
        chain.append(p1)
    while len(chain[-1]) > 1:
        _, r = _rdivmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _sign_variations(vals: list[int]) -> int:
    signs = [v for v in vals if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _eval_r(c: RCoeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def count_real_roots(c: RCoeffs, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in (lo, hi]; None means +-infinity."""
    c = list(c)
    while c and not c[-1]:
        c.pop()
    if len(c) <= 1:
        return 0
    g = c
    # work with the squarefree part so the chain is a genuine Sturm chain
    d = [c[k] * k for k in range(1, len(c))]
    while d and not d[-1]:
        d.pop()
    a, b = list(c), d
    while b:
        a, b = b, _rdivmod(a, b)[1]
    if len(a) > 1:
        g, _ = _rdivmod(c, [x / a[-1] for x in a])
    chain = sturm_chain(g)

    def var_at(x: Fraction | None, sign_inf: int) -> int:
        vals = []
        for p in chain:
            if x is None:
                lead = p[-1]
                deg = len(p) - 1
                s = 1 if lead > 0 else -1
                if sign_inf < 0 and deg % 2 == 1:
                    s = -s
                vals.append(s)
            else:
                v = _eval_r(p, x)
                vals.append(0 if not v else (1 if v > 0 else -1))
        return _sign_variations(vals)

    vlo = var_at(lo, -1) if lo is None else var_at(lo, 0)
    vhi = var_at(hi, +1) if hi is None else var_at(hi, 0)
    return vlo - vhi
