"""Terminating hypergeometric polynomials.

Values come from three-term contiguous relations in the degree; the
alternating power series loses relative accuracy to cancellation once the
argument is a few units large.  The series coefficients are still available
(multiplicative term recurrence, no factorials) together with a direct
summation and an exact rational path used to build test oracles.  Arguments
may be scalars or numpy arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateDenominator


def pochhammer(a, k: int):
    """Rising factorial a(a+1)...(a+k-1); 1 when k == 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1 if isinstance(a, (int, Fraction)) else 1.0
    for i in range(k):
        out *= a + i
    return out


def _check_denominator(name, value, n):
    for k in range(n):
        if value + k == 0:
            raise DegenerateDenominator(
                f"{name} = {value!r} makes the term k = {k + 1} divide by zero")


@dataclass(frozen=True)
class PolySeries:
    """Coefficients c_0..c_n of a terminating series, lowest order first."""

    coefficients: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        # Horner, highest order first
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc if acc.ndim else float(acc)


def kummer_coefficients(n: int, b: float) -> PolySeries:
    _check_denominator("b", b, n)
    coeffs = [1.0]
    for k in range(n):
        coeffs.append(coeffs[-1] * (-n + k) / ((b + k) * (k + 1)))
    return PolySeries(tuple(coeffs))


def gauss2f1_coefficients(n: int, b: float, c: float) -> PolySeries:
    _check_denominator("c", c, n)
    coeffs = [1.0]
    for k in range(n):
        coeffs.append(coeffs[-1] * (-n + k) * (b + k) / ((c + k) * (k + 1)))
    return PolySeries(tuple(coeffs))


def kummer_poly(n: int, b: float, x):
    """1F1(-n; b; x) for integer n >= 0.

    Evaluated by the contiguous relation in the degree,
    ``(b+k) M_{k+1} = (2k + b - x) M_k - k M_{k-1}``, which keeps full
    relative accuracy where the alternating series cancels (large x).
    """
    _check_denominator("b", b, n)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 - x / b
    for k in range(1, n):
        # increment form keeps M_k == 1 exactly at x == 0
        prev, cur = cur, cur + (k * (cur - prev) - x * cur) / (b + k)
    return cur if cur.ndim else float(cur)


def gauss2f1_poly(n: int, b: float, c: float, z):
    """2F1(-n, b; c; z) for integer n >= 0.

    Contiguous relation in the degree:
    ``(c+k) F_{k+1} = (2k + c - (b+k) z) F_k + k (z-1) F_{k-1}``.
    """
    _check_denominator("c", c, n)
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 - b * z / c
    for k in range(1, n):
        prev, cur = cur, cur + (k * (cur - prev) - z * ((b + k) * cur - k * prev)) / (c + k)
    return cur if cur.ndim else float(cur)


def kummer_series(n: int, b: float, x):
    """1F1(-n; b; x) by direct summation with the multiplicative term recurrence."""
    _check_denominator("b", b, n)
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(n):
        term = term * ((-n + k) / ((b + k) * (k + 1))) * x
        total = total + term
    return total if total.ndim else float(total)


def gauss2f1_series(n: int, b: float, c: float, z):
    """2F1(-n, b; c; z) by direct summation with the multiplicative term recurrence."""
    _check_denominator("c", c, n)
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(n):
        term = term * ((-n + k) * (b + k) / ((c + k) * (k + 1))) * z
        total = total + term
    return total if total.ndim else float(total)


def hypergeometric_exact(upper, lower, x, terms: int) -> Fraction:
    """Exact rational partial sum of pFq with the given parameter lists.

    Meant for building test oracles; every input is converted to Fraction so
    the result carries no rounding.
    """
    upper = [Fraction(u) for u in upper]
    lower = [Fraction(d) for d in lower]
    x = Fraction(x)
    total = Fraction(0)
    fact = 1
    for k in range(terms):
        if k:
            fact *= k
        num = Fraction(1)
        for u in upper:
            num *= pochhammer(u, k)
        den = Fraction(1)
        for d in lower:
            den *= pochhammer(d, k)
        if num == 0:
            continue
        total += num / den * x ** k / fact
    return total
