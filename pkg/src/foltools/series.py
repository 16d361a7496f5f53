"""Truncated power series in one parameter t over the Gaussian rationals.

A series is known modulo t^(truncation+1): coefficient list indices
0..truncation are meaningful, everything above is unknown (not zero).
All operations track the truncation honestly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gaussian import GaussianRational, ONE, ZERO


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[GaussianRational, ...]  # index k = coefficient of t^k

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_list(cs, truncation: int) -> "PowerSeries":
        cs = list(cs)[: truncation + 1]
        cs += [ZERO] * (truncation + 1 - len(cs))
        return PowerSeries(tuple(cs))

    @staticmethod
    def constant(value: GaussianRational, truncation: int) -> "PowerSeries":
        return PowerSeries.from_list([value], truncation)

    @staticmethod
    def identity(truncation: int) -> "PowerSeries":
        """The series t."""
        return PowerSeries.from_list([ZERO, ONE], truncation)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.truncation, other.truncation)
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.truncation, other.truncation)
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a.is_zero():
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(tuple(out))

    def scale(self, c: GaussianRational) -> "PowerSeries":
        return PowerSeries(tuple(a * c for a in self.coeffs))

    def truncate(self, n: int) -> "PowerSeries":
        if n >= self.truncation:
            return self
        return PowerSeries(self.coeffs[: n + 1])

    def shift_constant(self, c: GaussianRational) -> "PowerSeries":
        return PowerSeries((self.coeffs[0] + c,) + self.coeffs[1:])

    def derivative(self) -> "PowerSeries":
        """d/dt; knowledge drops by one order."""
        if self.truncation == 0:
            return PowerSeries((ZERO,))
        return PowerSeries(tuple(self.coeffs[k] * k for k in range(1, len(self.coeffs))))

    def order(self) -> int | None:
        """Index of the lowest nonzero coefficient; None if zero to truncation."""
        for k, a in enumerate(self.coeffs):
            if not a.is_zero():
                return k
        return None

    def is_zero_to_truncation(self) -> bool:
        return self.order() is None

    def coefficient(self, k: int) -> GaussianRational:
        if k > self.truncation:
            raise IndexError("coefficient beyond truncation")
        return self.coeffs[k]

    def divide(self, other: "PowerSeries") -> "PowerSeries | None":
        """self / other when the division stays a power series.

        Requires ord(other) <= ord(self) (with the convention that division
        by an identically-unknown-zero series fails).  The result is known
        to one order less per stripped power of t.
        """
        v = other.order()
        if v is None:
            return None
        for k in range(min(v, self.truncation + 1)):
            if not self.coeffs[k].is_zero():
                return None
        a = self.coeffs[v:] if v <= self.truncation else ()
        b = other.coeffs[v:]
        n = min(len(a), len(b)) - 1
        if n < 0:
            return None
        inv0 = b[0].inverse()
        out = [ZERO] * (n + 1)
        for k in range(n + 1):
            s = a[k]
            for j in range(k):
                s = s - out[j] * b[k - j]
            out[k] = s * inv0
        return PowerSeries(tuple(out))

    def __str__(self) -> str:
        parts = []
        for k, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            if k == 0:
                parts.append(str(a))
            else:
                parts.append(f"({a})*t^{k}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.truncation + 1})"


def compose_poly(poly, phi1: PowerSeries, phi2: PowerSeries) -> PowerSeries:
    """Evaluate an arity-2 MultiPoly on a pair of series (exact, truncated)."""
    n = min(phi1.truncation, phi2.truncation)
    one = PowerSeries.constant(ONE, n)
    total = PowerSeries.constant(ZERO, n)
    p1: list[PowerSeries] = [one]
    p2: list[PowerSeries] = [one]
    for (a, b), c in poly.terms.items():
        while len(p1) <= a:
            p1.append(p1[-1] * phi1)
        while len(p2) <= b:
            p2.append(p2[-1] * phi2)
        total = total + (p1[a] * p2[b]).scale(c)
    return total
