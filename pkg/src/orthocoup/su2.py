"""SU(2) recoupling: Clebsch-Gordan coefficients, 6j symbols and 3jm symbols.

Everything is computed by the classical single-sum formulas on the exact
lattice, so results are rationals times one square root. These serve both as
public API and as the internal oracle for the SO(3) reductions and the
Gegenbauer-to-6j cross check.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import (
    ExactReal,
    HalfInt,
    as_halfint,
    factorial,
    phase,
)


def _is_triad(a: HalfInt, b: HalfInt, c: HalfInt) -> bool:
    # triangle inequality plus integer perimeter
    if (a.twice + b.twice + c.twice) % 2:
        return False
    return abs(a.twice - b.twice) <= c.twice <= a.twice + b.twice


def _f(x: HalfInt) -> int:
    return factorial(x.to_int())


def su2_cg(j1, m1, j2, m2, j3, m3) -> ExactReal:
    """<j1 m1 j2 m2 | j3 m3> in the Condon-Shortley convention."""
    j1, m1 = as_halfint(j1), as_halfint(m1)
    j2, m2 = as_halfint(j2), as_halfint(m2)
    j3, m3 = as_halfint(j3), as_halfint(m3)
    for j, m in ((j1, m1), (j2, m2), (j3, m3)):
        if (j.twice + m.twice) % 2 or abs(m.twice) > j.twice:
            return ExactReal.zero()
    if m1 + m2 != m3 or not _is_triad(j1, j2, j3):
        return ExactReal.zero()

    norm_sq = (
        Fraction(j3.twice + 1)
        * _f(j1 + j2 - j3)
        * _f(j1 - j2 + j3)
        * _f(j2 + j3 - j1)
        * _f(j1 + m1)
        * _f(j1 - m1)
        * _f(j2 + m2)
        * _f(j2 - m2)
        * _f(j3 + m3)
        * _f(j3 - m3)
        / _f(j1 + j2 + j3 + 1)
    )

    # summation bounds keep every factorial argument nonnegative
    zmin = max(0, (j2 - j3 - m1).to_int(), (j1 - j3 + m2).to_int())
    zmax = min(
        (j1 + j2 - j3).to_int(),
        (j1 - m1).to_int(),
        (j2 + m2).to_int(),
    )
    total = Fraction(0)
    for z in range(zmin, zmax + 1):
        den = (
            factorial(z)
            * _f(j1 + j2 - j3 - z)
            * _f(j1 - m1 - z)
            * _f(j2 + m2 - z)
            * _f(j3 - j2 + m1 + z)
            * _f(j3 - j1 - m2 + z)
        )
        total += Fraction(-1 if z % 2 else 1, den)
    if not total:
        return ExactReal.zero()
    return ExactReal.sqrt_rational(norm_sq) * total


def wigner_3j(j1, m1, j2, m2, j3, m3) -> ExactReal:
    """3jm symbol, via the Clebsch-Gordan coefficient."""
    j1, j2, j3 = as_halfint(j1), as_halfint(j2), as_halfint(j3)
    m3 = as_halfint(m3)
    cg = su2_cg(j1, m1, j2, m2, j3, -m3)
    if cg.is_zero:
        return cg
    sign = phase(j1 - j2 - m3)
    return cg * Fraction(sign) * ExactReal.sqrt_rational(Fraction(1, j3.twice + 1))


def _delta_sq(a: HalfInt, b: HalfInt, c: HalfInt) -> Fraction:
    return Fraction(
        _f(a + b - c) * _f(a - b + c) * _f(b + c - a),
        _f(a + b + c + 1),
    )


def su2_6j(a, b, c, d, e, f) -> ExactReal:
    """6j symbol {a b c; d e f} by the Racah single-sum formula."""
    a, b, c = as_halfint(a), as_halfint(b), as_halfint(c)
    d, e, f = as_halfint(d), as_halfint(e), as_halfint(f)
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    if not all(_is_triad(*t) for t in triads):
        return ExactReal.zero()

    S = [(a + b + c), (a + e + f), (d + b + f), (d + e + c)]
    Q = [(a + b + d + e), (b + c + e + f), (a + c + d + f)]
    tmin = max(s.to_int() for s in S)
    tmax = min(q.to_int() for q in Q)
    total = Fraction(0)
    for t in range(tmin, tmax + 1):
        den = 1
        for s in S:
            den *= factorial(t - s.to_int())
        for q in Q:
            den *= factorial(q.to_int() - t)
        total += Fraction((-1 if t % 2 else 1) * factorial(t + 1), den)
    if not total:
        return ExactReal.zero()
    norm_sq = Fraction(1)
    for t in triads:
        norm_sq *= _delta_sq(*t)
    return ExactReal.sqrt_rational(norm_sq) * total
