"""Finite-series evaluation of Jacobi and Gegenbauer polynomials.

Both families are evaluated by direct summation of their terminating
series, not by three-term recurrences, so the number of summed terms
is exactly the bookkeeping quantity the rest of the package reasons
about.  Recurrence evaluation exists only in the quadrature oracle.

Two series are provided for each family:

* Jacobi form ``A``  -- powers of (1+x) and (1-x),
* Jacobi form ``B``  -- powers of (1-x)/2,
* Gegenbauer ``SERIES``     -- powers of x with step two,
* Gegenbauer ``VIA_JACOBI`` -- prefactor times an equal-parameter
  Jacobi polynomial.

When x is rational (int, Fraction, HalfInt or a digit string) the value
is returned as an :class:`~orthocoup.exact.ExactReal`; any other x is
evaluated in mpmath floating point at the requested binary precision.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import (
    DEFAULT_PREC,
    DomainError,
    ExactReal,
    HalfInt,
    as_halfint,
    factorial,
    gamma_half,
    pochhammer,
)

__all__ = [
    "JacobiSpec",
    "GegenbauerSpec",
    "jacobi_eval",
    "gegenbauer_eval",
    "gegenbauer_linearization",
]


@dataclass(frozen=True)
class JacobiSpec:
    """Degree and weight exponents of one Jacobi polynomial."""

    k: int
    alpha: HalfInt
    beta: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_halfint(self.alpha))
        object.__setattr__(self, "beta", as_halfint(self.beta))
        if not (isinstance(self.k, int) and self.k >= 0):
            raise DomainError("degree k must be a nonnegative integer")
        if self.alpha <= -1 or self.beta <= -1:
            raise DomainError("weight exponents must exceed -1")


@dataclass(frozen=True)
class GegenbauerSpec:
    """Degree and superscript of one Gegenbauer polynomial."""

    k: int
    p: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "p", as_halfint(self.p))
        if not (isinstance(self.k, int) and self.k >= 0):
            raise DomainError("degree k must be a nonnegative integer")
        if self.p <= 0:
            raise DomainError("superscript p must be positive")


def _rational_of(x):
    """Fraction view of x, or None when x is not exactly rational."""
    if isinstance(x, bool):
        return None
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, HalfInt):
        return x.as_fraction()
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, ExactReal) and x.is_rational:
        return x.as_fraction()
    return None


def _jacobi_terms_a(k, alpha, beta):
    # coefficient of (1+x)^m (1-x)^(k-m), m = 0..k, including the 2^-k
    a = alpha.as_fraction()
    b = beta.as_fraction()
    scale = Fraction(1, 2 ** k)
    for m in range(k + 1):
        c = (
            pochhammer(-k - a, m)
            * pochhammer(-k - b, k - m)
            * (-1) ** m
            / (factorial(m) * factorial(k - m))
        )
        yield m, c * scale


def _jacobi_terms_b(k, alpha, beta):
    # coefficient of ((1-x)/2)^(k-m), m = 0..k, including the (-1)^k
    a = alpha.as_fraction()
    b = beta.as_fraction()
    sign = (-1) ** k
    for m in range(k + 1):
        c = (
            pochhammer(-k - a, m)
            * pochhammer(k + a + b + 1, k - m)
            / (factorial(m) * factorial(k - m))
        )
        yield k - m, sign * c


def jacobi_eval(spec: JacobiSpec, x, form: str = "A", prec: int = DEFAULT_PREC):
    """Value of the Jacobi polynomial of `spec` at x.

    form "A" sums powers of (1+x) and (1-x); form "B" sums powers of
    (1-x)/2.  The two agree identically; both are exposed so either
    series can be cross-checked against the other.
    """
    if form not in ("A", "B"):
        raise ValueError("form must be 'A' or 'B'")
    k, alpha, beta = spec.k, spec.alpha, spec.beta
    xq = _rational_of(x)

    if xq is not None:
        total = Fraction(0)
        if form == "A":
            up, dn = 1 + xq, 1 - xq
            for m, c in _jacobi_terms_a(k, alpha, beta):
                total += c * up ** m * dn ** (k - m)
        else:
            h = (1 - xq) / 2
            for e, c in _jacobi_terms_b(k, alpha, beta):
                total += c * h ** e
        return ExactReal.from_rational(total)

    with mpmath.workprec(prec):
        xv = mpmath.mpf(x) if not isinstance(x, mpmath.mpf) else x
        total = mpmath.mpf(0)
        if form == "A":
            up, dn = 1 + xv, 1 - xv
            for m, c in _jacobi_terms_a(k, alpha, beta):
                total += mpmath.mpf(c.numerator) / c.denominator * up ** m * dn ** (k - m)
        else:
            h = (1 - xv) / 2
            for e, c in _jacobi_terms_b(k, alpha, beta):
                total += mpmath.mpf(c.numerator) / c.denominator * h ** e
        return +total


def _gegenbauer_coeffs(k, p):
    # coefficient of x^(k-2m), m = 0..floor(k/2)
    pf = p.as_fraction()
    for m in range(k // 2 + 1):
        c = (
            Fraction((-1) ** m * 2 ** (k - 2 * m))
            * pochhammer(pf, k - m)
            / (factorial(m) * factorial(k - 2 * m))
        )
        yield k - 2 * m, c


def gegenbauer_eval(spec: GegenbauerSpec, x, form: str = "SERIES",
                    prec: int = DEFAULT_PREC):
    """Value of the Gegenbauer polynomial of `spec` at x.

    "SERIES" sums the terminating power series directly; "VIA_JACOBI"
    rescales the equal-parameter Jacobi polynomial with exponents
    p - 1/2.
    """
    if form == "VIA_JACOBI":
        k, p = spec.k, spec.p
        ratio = pochhammer(2 * p.as_fraction(), k) / pochhammer(
            p.as_fraction() + Fraction(1, 2), k)
        half = HalfInt.from_twice(1)
        jv = jacobi_eval(JacobiSpec(k, p - half, p - half), x, "B", prec)
        if isinstance(jv, ExactReal):
            return ExactReal.from_rational(ratio) * jv
        return mpmath.mpf(ratio.numerator) / ratio.denominator * jv
    if form != "SERIES":
        raise ValueError("form must be 'SERIES' or 'VIA_JACOBI'")

    k, p = spec.k, spec.p
    xq = _rational_of(x)
    if xq is not None:
        total = Fraction(0)
        for e, c in _gegenbauer_coeffs(k, p):
            total += c * xq ** e
        return ExactReal.from_rational(total)
    with mpmath.workprec(prec):
        xv = mpmath.mpf(x) if not isinstance(x, mpmath.mpf) else x
        total = mpmath.mpf(0)
        for e, c in _gegenbauer_coeffs(k, p):
            total += mpmath.mpf(c.numerator) / c.denominator * xv ** e
        return +total


def gegenbauer_linearization(l: int, k: int, p) -> list:
    """Expansion of a product of two equal-superscript Gegenbauer
    polynomials over single polynomials of the same superscript.

    Returns [(n, c_n), ...] with C_l^p C_k^p = sum c_n C_n^p, where n
    runs from |l-k| to l+k in steps of two and every c_n is exact.
    """
    p = as_halfint(p)
    if p <= 0:
        raise DomainError("superscript p must be positive")
    if l < 0 or k < 0:
        raise DomainError("degrees must be nonnegative")
    out = []
    gamma_p_sq = gamma_half(p) * gamma_half(p)
    for n in range(abs(l - k), l + k + 1, 2):
        g = (l + k + n) // 2
        num = (
            ExactReal.from_rational(Fraction(factorial(n)) * (n + p.as_fraction()))
            * gamma_half(g + 2 * p)
            * gamma_half(g - n + p)
            * gamma_half(g - l + p)
            * gamma_half(g - k + p)
        )
        den = (
            gamma_p_sq
            * gamma_half(g + p + 1)
            * gamma_half(n + 2 * p)
            * ExactReal.from_rational(
                Fraction(factorial(g - n) * factorial(g - l) * factorial(g - k)))
        )
        out.append((n, num / den))
    return out
