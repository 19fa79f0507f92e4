"""Exact arithmetic kernel.

Values produced by the closed-form integrals and coupling coefficients live on
a small lattice: finite sums of rationals times integer powers of sqrt(pi),
optionally carrying one overall square root of a square-free integer.  This
module provides that lattice (ExactReal), half-integer indices (HalfInt),
gamma/beta functions on the half-integer grid, the two triangle norms used by
the Sp(4) coefficients, and combinatorial helpers shared by every series form.

High-precision floating point is delegated to mpmath; ``to_mpf`` converts an
exact value at a caller-chosen precision in bits.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

DEFAULT_PREC = 256


class DomainError(ValueError):
    """Raised when a query leaves the domain of a formula or type."""


class LatticeError(ArithmeticError):
    """Raised when a result cannot be represented exactly on the lattice."""


# ---------------------------------------------------------------------------
# half integers


class HalfInt:
    """An element of (1/2)Z, stored as twice its value (an exact big int)."""

    __slots__ = ("twice",)

    def __init__(self, value=0):
        if isinstance(value, HalfInt):
            self.twice = value.twice
        elif isinstance(value, int):
            self.twice = 2 * value
        elif isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise DomainError(f"{value} is not a half integer")
            self.twice = value.numerator * (2 // value.denominator)
        elif isinstance(value, str):
            self.twice = _parse_half(value)
        else:
            raise DomainError(f"cannot build a half integer from {value!r}")

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInt":
        obj = cls.__new__(cls)
        obj.twice = twice
        return obj

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def to_int(self) -> int:
        if self.twice % 2:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        return HalfInt.from_twice(self.twice + HalfInt(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt.from_twice(self.twice - HalfInt(other).twice)

    def __rsub__(self, other):
        return HalfInt.from_twice(HalfInt(other).twice - self.twice)

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __abs__(self):
        return HalfInt.from_twice(abs(self.twice))

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInt.from_twice(self.twice * other)
        return self.as_fraction() * other

    __rmul__ = __mul__

    def _twice_of(self, other) -> int:
        return HalfInt(other).twice

    def __eq__(self, other):
        try:
            return self.twice == self._twice_of(other)
        except DomainError:
            return NotImplemented

    def __lt__(self, other):
        return self.twice < self._twice_of(other)

    def __le__(self, other):
        return self.twice <= self._twice_of(other)

    def __gt__(self, other):
        return self.twice > self._twice_of(other)

    def __ge__(self, other):
        return self.twice >= self._twice_of(other)

    def __hash__(self):
        return hash(self.as_fraction())

    def __repr__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __str__(self):
        return self.__repr__()


def _parse_half(text: str) -> int:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        frac = Fraction(int(num), int(den))
        if frac.denominator not in (1, 2):
            raise DomainError(f"{text} is not a half integer")
        return frac.numerator * (2 // frac.denominator)
    return 2 * int(text)


def as_halfint(x) -> HalfInt:
    return x if isinstance(x, HalfInt) else HalfInt(x)


def as_fraction(x) -> Fraction:
    if isinstance(x, HalfInt):
        return x.as_fraction()
    return Fraction(x)


def phase(exponent) -> int:
    """(-1)**exponent for an exponent that must land on an integer."""
    if isinstance(exponent, HalfInt):
        if not exponent.is_integer:
            raise DomainError(f"phase exponent {exponent} is not an integer")
        exponent = exponent.to_int()
    elif isinstance(exponent, Fraction):
        if exponent.denominator != 1:
            raise DomainError(f"phase exponent {exponent} is not an integer")
        exponent = exponent.numerator
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# combinatorial helpers (exact, negative-safe conventions)


def factorial(n) -> int:
    """n! for nonnegative integer n; negative or fractional n is a domain error."""
    if isinstance(n, (HalfInt, Fraction)):
        n = HalfInt(n).to_int() if isinstance(n, HalfInt) else _int_of(n)
    if n < 0:
        raise DomainError(f"factorial of negative argument {n}")
    return math.factorial(n)


def _int_of(x) -> int:
    if isinstance(x, HalfInt):
        return x.to_int()
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise DomainError(f"{x} is not an integer")
        return x.numerator
    return int(x)


def binomial(n, k) -> int:
    """Generalized binomial: falling factorial over k!, zero for k < 0.

    Works for negative upper index (the convention needed by the reparametrized
    triple sums); for 0 <= n < k it correctly returns zero.
    """
    n = _int_of(n)
    k = _int_of(k)
    if k < 0:
        return 0
    num = 1
    for t in range(k):
        num *= n - t
    return num // math.factorial(k)


def pochhammer(c, n: int) -> Fraction:
    """Rising factorial (c)_n for rational c and nonnegative integer n."""
    if n < 0:
        raise DomainError("pochhammer length must be nonnegative")
    c = as_fraction(c)
    out = Fraction(1)
    for t in range(n):
        out *= c + t
    return out


# ---------------------------------------------------------------------------
# square-free reduction

_SMALL_PRIMES: list[int] = []


def _extend_primes(limit: int) -> None:
    if _SMALL_PRIMES and _SMALL_PRIMES[-1] >= limit:
        return
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    _SMALL_PRIMES.clear()
    _SMALL_PRIMES.extend(i for i, v in enumerate(sieve) if v)


def squarefree_split(n: int) -> tuple[int, int]:
    """n = s*s*r with r square-free (n must be positive)."""
    if n <= 0:
        raise DomainError("squarefree_split needs a positive integer")
    _extend_primes(10000)
    s, r = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                r *= p
    if n > 1:
        root = math.isqrt(n)
        if root * root == n:
            s *= root
        else:
            r *= n
    return s, r


# ---------------------------------------------------------------------------
# the exact value lattice


class ExactReal:
    """sum_e q_e * pi**(e/2), q_e rational, times sqrt(root) for square-free root.

    Addition is defined only between values that carry the same radical (after
    normalization); multiplication and division by a single-grade value are
    always exact.  ``to_mpf`` rounds at a requested binary precision.
    """

    __slots__ = ("coeffs", "root")

    def __init__(self, coeffs=None, root: int = 1):
        clean: dict[int, Fraction] = {}
        if coeffs:
            for e, q in coeffs.items():
                q = as_fraction(q)
                if q:
                    clean[int(e)] = q
        if not clean:
            root = 1
        if root != 1:
            s, r = squarefree_split(root)
            if s != 1:
                clean = {e: q * s for e, q in clean.items()}
            root = r
        self.coeffs = clean
        self.root = root

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "ExactReal":
        return cls()

    @classmethod
    def one(cls) -> "ExactReal":
        return cls({0: 1})

    @classmethod
    def from_rational(cls, q, grade: int = 0) -> "ExactReal":
        return cls({grade: as_fraction(q)})

    @classmethod
    def sqrt_rational(cls, q) -> "ExactReal":
        """sqrt of a nonnegative rational, exactly."""
        q = as_fraction(q)
        if q < 0:
            raise DomainError("square root of a negative rational")
        if q == 0:
            return cls.zero()
        s, r = squarefree_split(q.numerator * q.denominator)
        return cls({0: Fraction(s, q.denominator)}, root=r)

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_rational(self) -> bool:
        return self.root == 1 and set(self.coeffs) <= {0}

    def as_fraction(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if not self.is_rational:
            raise LatticeError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other) -> "ExactReal":
        if isinstance(other, ExactReal):
            return other
        return ExactReal({0: as_fraction(other)})

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.root != other.root:
            raise LatticeError(
                f"cannot add values with radicals sqrt({self.root}) and sqrt({other.root})"
            )
        coeffs = dict(self.coeffs)
        for e, q in other.coeffs.items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + q
        return ExactReal(coeffs, root=self.root)

    __radd__ = __add__

    def __neg__(self):
        return ExactReal({e: -q for e, q in self.coeffs.items()}, root=self.root)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, HalfInt)):
            q = as_fraction(other)
            if not q:
                return ExactReal.zero()
            return ExactReal({e: c * q for e, c in self.coeffs.items()}, root=self.root)
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return ExactReal.zero()
        coeffs: dict[int, Fraction] = {}
        for e1, q1 in self.coeffs.items():
            for e2, q2 in other.coeffs.items():
                e = e1 + e2
                coeffs[e] = coeffs.get(e, Fraction(0)) + q1 * q2
        return ExactReal(coeffs, root=self.root * other.root)

    __rmul__ = __mul__

    def inverse(self) -> "ExactReal":
        if self.is_zero:
            raise ZeroDivisionError("inverse of exact zero")
        if len(self.coeffs) != 1:
            raise LatticeError("can only invert a single-grade value")
        ((e, q),) = self.coeffs.items()
        return ExactReal({-e: 1 / (q * self.root)}, root=self.root)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, HalfInt)):
            q = as_fraction(other)
            return ExactReal({e: c / q for e, c in self.coeffs.items()}, root=self.root)
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def sqrt(self) -> "ExactReal":
        """Exact square root of a single-grade value with even pi-grade."""
        if self.is_zero:
            return ExactReal.zero()
        if self.root != 1:
            raise LatticeError("square root of a value already carrying a radical")
        if len(self.coeffs) != 1:
            raise LatticeError("square root of a multi-grade value")
        ((e, q),) = self.coeffs.items()
        if e % 2:
            raise LatticeError("square root would leave the sqrt(pi) lattice")
        if q < 0:
            raise DomainError("square root of a negative value")
        s, r = squarefree_split(q.numerator * q.denominator)
        return ExactReal({e // 2: Fraction(s, q.denominator)}, root=r)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, HalfInt)):
            other = self._coerce(other)
        if not isinstance(other, ExactReal):
            return NotImplemented
        return self.root == other.root and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.root, frozenset(self.coeffs.items())))

    # -- conversion ------------------------------------------------------------

    def to_mpf(self, prec: int = DEFAULT_PREC):
        """Round the exact value to an mpmath float at ``prec`` bits."""
        with mpmath.workprec(prec + 32):
            total = mpmath.mpf(0)
            for e, q in self.coeffs.items():
                term = mpmath.mpf(q.numerator) / q.denominator
                if e:
                    term *= mpmath.power(mpmath.pi, mpmath.mpf(e) / 2)
                total += term
            if self.root != 1:
                total *= mpmath.sqrt(self.root)
        with mpmath.workprec(prec):
            return +total

    def __repr__(self):
        if self.is_zero:
            return "ExactReal(0)"
        parts = []
        for e in sorted(self.coeffs):
            q = self.coeffs[e]
            if e == 0:
                parts.append(f"{q}")
            elif e % 2 == 0:
                parts.append(f"{q}*pi^{e // 2}" if e != 2 else f"{q}*pi")
            else:
                parts.append(f"{q}*pi^({e}/2)")
        body = " + ".join(parts)
        if self.root != 1:
            return f"ExactReal(({body})*sqrt({self.root}))"
        return f"ExactReal({body})"


def pow2(exponent) -> ExactReal:
    """2**e for half-integer e, as an exact value (sqrt(2) when e is half-odd)."""
    e = as_halfint(exponent)
    if e.is_integer:
        n = e.to_int()
        q = Fraction(2) ** n
        return ExactReal({0: q})
    n = (e.twice - 1) // 2
    return ExactReal({0: Fraction(2) ** n}, root=2)


# ---------------------------------------------------------------------------
# gamma and beta on the half-integer grid


@lru_cache(maxsize=None)
def _gamma_twice(twice: int) -> tuple[Fraction, int]:
    """Gamma(twice/2) as (rational, grade) with grade in {0,1}.

    Defined for positive integers and all half-odd arguments (where the
    reflection through the recursion is exact); poles are domain errors.
    """
    if twice % 2 == 0:
        n = twice // 2
        if n <= 0:
            raise DomainError(f"gamma pole at {n}")
        return Fraction(math.factorial(n - 1)), 0
    if twice > 0:
        k = (twice - 1) // 2
        return Fraction(math.factorial(2 * k), 4**k * math.factorial(k)), 1
    # Gamma(1/2 - m) = (-4)**m m!/(2m)! sqrt(pi)
    m = (1 - twice) // 2
    return Fraction((-4) ** m * math.factorial(m), math.factorial(2 * m)), 1


def gamma_half(x) -> ExactReal:
    """Gamma at a positive half-integer argument, exactly."""
    x = as_halfint(x)
    if x.twice <= 0:
        raise DomainError(f"gamma_half needs a positive argument, got {x}")
    q, g = _gamma_twice(x.twice)
    return ExactReal({g: q})


def gamma_signed(x) -> ExactReal:
    """Gamma extended to negative half-odd arguments (used by the equal-row sums)."""
    x = as_halfint(x)
    q, g = _gamma_twice(x.twice)
    return ExactReal({g: q})


def gamma_parts(x) -> tuple[Fraction, int]:
    """(rational, sqrt-pi grade) of Gamma at a half-integer argument."""
    return _gamma_twice(as_halfint(x).twice)


def beta_half(x, y) -> ExactReal:
    """Euler beta B(x, y) for positive half-integer x, y, exactly."""
    x = as_halfint(x)
    y = as_halfint(y)
    qx, gx = _gamma_twice(x.twice)
    qy, gy = _gamma_twice(y.twice)
    qs, gs = _gamma_twice(x.twice + y.twice)
    return ExactReal({gx + gy - gs: qx * qy / qs})


# ---------------------------------------------------------------------------
# triangle norms


def nabla(a, b, c) -> ExactReal:
    """sqrt[(a+b-c)! (a-b+c)! (a+b+c+1)! / (b+c-a)!] on the half-integer grid."""
    a, b, c = as_halfint(a), as_halfint(b), as_halfint(c)
    inner = (
        gamma_half(a + b - c + 1)
        * gamma_half(a - b + c + 1)
        * gamma_half(a + b + c + 2)
        / gamma_half(b + c - a + 1)
    )
    return inner.sqrt()


def triangle_e(a, b, c) -> ExactReal:
    """sqrt[(a-b-c)! (a-b+c+1)! (a+b-c+1)! (a+b+c+2)!] on the half-integer grid."""
    a, b, c = as_halfint(a), as_halfint(b), as_halfint(c)
    inner = (
        gamma_half(a - b - c + 1)
        * gamma_half(a - b + c + 2)
        * gamma_half(a + b - c + 2)
        * gamma_half(a + b + c + 3)
    )
    return inner.sqrt()


# ---------------------------------------------------------------------------
# float helpers


def mpf_of(x, prec: int = DEFAULT_PREC):
    """Exact-input conversion to mpf: half-integers and rationals are dyadic-safe."""
    with mpmath.workprec(prec):
        if isinstance(x, HalfInt):
            return mpmath.mpf(x.twice) / 2
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)
