"""Semistretched coupling coefficients of Sp(4) restricted to SU(2)xSU(2).

An irrep is labelled <K L> with K the largest I-spin and L the largest J-spin
of its SU(2)xSU(2) content.  When the coupled and resulting irreps satisfy
K = K1 + K2 the isoscalar factor is multiplicity free and factors into a
normalization prefactor times an 11j coefficient, which in turn is a pair of
triangle-norm ratios times a terminating triple sum over a 3x4 array.

The triple sum is implemented in its three rearrangements (forms A, B, C: the
three inequivalent summation structures), in the shifted parametrization used
to connect it with the triple-product Jacobi integrals (forms PA, PB1..PB3),
and in the two closed specializations available when the first two array rows
coincide.  All values are exact.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import (
    DomainError,
    ExactReal,
    HalfInt,
    LatticeError,
    as_halfint,
    binomial,
    factorial,
    gamma_half,
    gamma_signed,
    nabla,
    phase,
    pochhammer,
    pow2,
    triangle_e,
)
from .triple_integrals import FormResult, UnsupportedFormError

S_TILDE_FORMS = ("A", "B", "C")
S_SCRIPT_FORMS = ("PA", "PB1", "PB2", "PB3")


def _exact_int(x, what: str) -> int:
    x = as_halfint(x)
    if not x.is_integer:
        raise DomainError(f"{what} must be an integer, got {x}")
    return x.to_int()


def _nn_int(x, what: str) -> int:
    n = _exact_int(x, what)
    if n < 0:
        raise DomainError(f"{what} must be nonnegative, got {n}")
    return n


def _triangle_ints(a, b, c) -> bool:
    """True when (a, b, c) couple as SU(2) spins."""
    for combo in (a + b - c, a - b + c, b + c - a):
        if not combo.is_integer or combo.twice < 0:
            return False
    return True


class Sp4Irrep:
    """Irrep label <K L>: K = max I-spin, L = max J-spin of the content."""

    __slots__ = ("K", "Lambda")

    def __init__(self, K, Lambda):
        K = as_halfint(K)
        Lambda = as_halfint(Lambda)
        if Lambda.twice < 0 or K < Lambda:
            raise DomainError(f"irrep labels need K >= Lambda >= 0, got <{K} {Lambda}>")
        if not (K - Lambda).is_integer:
            raise DomainError(f"K - Lambda must be an integer, got <{K} {Lambda}>")
        self.K = K
        self.Lambda = Lambda

    def su2_content(self) -> list[tuple[HalfInt, HalfInt]]:
        """All (I, J) pairs of the SU(2)xSU(2) decomposition, each once.

        I+J runs over K-Lambda .. K+Lambda and I-J over -(K-Lambda) ..
        K-Lambda, both in integer steps.
        """
        lo = (self.K - self.Lambda).to_int()
        hi = _exact_int(self.K + self.Lambda, "K + Lambda")
        out = []
        for s in range(lo, hi + 1):
            for d in range(-lo, lo + 1):
                out.append((HalfInt.from_twice(s + d), HalfInt.from_twice(s - d)))
        return out

    @property
    def dim(self) -> int:
        return sum((i.twice + 1) * (j.twice + 1) for i, j in self.su2_content())

    def __eq__(self, other):
        return (isinstance(other, Sp4Irrep)
                and self.K == other.K and self.Lambda == other.Lambda)

    def __hash__(self):
        return hash((self.K.twice, self.Lambda.twice))

    def __repr__(self):
        return f"Sp4Irrep({self.K}, {self.Lambda})"


class Sp4SumArray:
    """3x4 argument array of the triple sum: rows (K_r; j_r^1, j_r^2, j_r^3).

    The third row label must equal K1 + K2.  Every column must satisfy the
    SU(2) triangle conditions with integer perimeter differences, and each of
    the first two rows must have an integer excess sum(j_r) - K_r; these are
    exactly the conditions that keep every factorial argument of the three
    summation forms on the integers.
    """

    __slots__ = ("K1", "K2", "j1", "j2", "j")

    def __init__(self, row1, row2, row3):
        k1, *top = (as_halfint(x) for x in row1)
        k2, *mid = (as_halfint(x) for x in row2)
        k12, *bot = (as_halfint(x) for x in row3)
        if len(top) != 3 or len(mid) != 3 or len(bot) != 3:
            raise DomainError("each array row needs a label and three entries")
        if k12 != k1 + k2:
            raise DomainError(f"third row label must be K1+K2, got {k12}")
        for x in (k1, k2, *top, *mid, *bot):
            if x.twice < 0:
                raise DomainError(f"array entries must be nonnegative, got {x}")
        for a in range(3):
            if not _triangle_ints(top[a], mid[a], bot[a]):
                raise DomainError(
                    f"column {a + 1} entries {top[a]}, {mid[a]}, {bot[a]}"
                    " do not satisfy the triangle conditions")
        _exact_int(top[0] + top[1] + top[2] - k1, "sum of row 1 minus K1")
        _exact_int(mid[0] + mid[1] + mid[2] - k2, "sum of row 2 minus K2")
        self.K1 = k1
        self.K2 = k2
        self.j1 = tuple(top)
        self.j2 = tuple(mid)
        self.j = tuple(bot)

    def row_swapped(self) -> "Sp4SumArray":
        return Sp4SumArray((self.K2, *self.j2), (self.K1, *self.j1),
                           (self.K1 + self.K2, *self.j))

    def columns_permuted(self, perm) -> "Sp4SumArray":
        p = tuple(perm)
        return Sp4SumArray(
            (self.K1,) + tuple(self.j1[a] for a in p),
            (self.K2,) + tuple(self.j2[a] for a in p),
            (self.K1 + self.K2,) + tuple(self.j[a] for a in p))

    def __eq__(self, other):
        return (isinstance(other, Sp4SumArray) and self.K1 == other.K1
                and self.K2 == other.K2 and self.j1 == other.j1
                and self.j2 == other.j2 and self.j == other.j)

    def __hash__(self):
        return hash((self.K1, self.K2, self.j1, self.j2, self.j))

    def __repr__(self):
        def row(label, js):
            return "(" + ", ".join(str(x) for x in (label, *js)) + ")"
        return ("Sp4SumArray(" + row(self.K1, self.j1) + ", "
                + row(self.K2, self.j2) + ", "
                + row(self.K1 + self.K2, self.j) + ")")


# ---------------------------------------------------------------------------
# the triple sum in its three rearrangements


def _s_tilde_a(arr: Sp4SumArray) -> FormResult:
    upper = _nn_int(arr.j[0] + arr.j[1] + arr.j[2] - arr.K1 - arr.K2,
                    "form A binomial index sum(j) - K1 - K2")
    caps = [_exact_int(arr.j1[a] + arr.j2[a] - arr.j[a], "triangle") for a in range(3)]
    gain = [_exact_int(arr.j[a] - arr.j1[a] + arr.j2[a], "triangle") for a in range(3)]
    twos = [arr.j1[a].twice for a in range(3)]
    low0 = _exact_int(arr.j1[0] + arr.j1[1] + arr.j1[2] - arr.K1, "row 1 excess")
    total = Fraction(0)
    terms = 0
    for x1 in range(caps[0] + 1):
        for x2 in range(caps[1] + 1):
            for x3 in range(caps[2] + 1):
                b = binomial(upper, low0 - x1 - x2 - x3)
                if b == 0:
                    continue
                num = b
                den = 1
                for a, x in enumerate((x1, x2, x3)):
                    num *= factorial(twos[a] - x) * factorial(gain[a] + x)
                    den *= factorial(x) * factorial(caps[a] - x)
                    if x % 2:
                        num = -num
                total += Fraction(num, den)
                terms += 1
    return FormResult(ExactReal.from_rational(total), "A", terms)


def _s_tilde_b(arr: Sp4SumArray) -> FormResult:
    j11, j12, j13 = arr.j1
    j21, j22, j23 = arr.j2
    g1, g2, g3 = arr.j
    pref = (factorial(j11 - j21 + g1) * factorial(j11 + j21 + g1 + 1)
            * factorial(g2 - j12 + j22) * factorial(j12 + j22 + g2 + 1))
    cap3 = _exact_int(j13 + j23 - g3, "triangle")
    gain3 = _exact_int(g3 - j13 + j23, "triangle")
    t1 = _exact_int(j11 + j21 - g1, "triangle")
    s1 = _exact_int(j11 + j21 + g1, "column 1 perimeter")
    t2 = _exact_int(j12 + j22 - g2, "triangle")
    s2 = _exact_int(j12 + j22 + g2, "column 2 perimeter")
    capv = min(j21.twice, t1)
    capu = min(j12.twice, t2)
    e1base = _exact_int(j21 + j22 + g3 - j13 - arr.K2, "form B gate")
    e2base = _exact_int(j11 + j12 + j13 - arr.K1, "row 1 excess")
    nbase = _exact_int(j11 + j21 + j12 + j22 + g3 - arr.K1 - arr.K2, "form B sum")
    total = Fraction(0)
    terms = 0
    for x3 in range(cap3 + 1):
        fx3 = factorial(j13.twice - x3) * factorial(gain3 + x3)
        dx3 = factorial(x3) * factorial(cap3 - x3)
        for v in range(capv + 1):
            e1 = e1base + x3 - v
            if e1 < 0:
                continue
            fv = factorial(j21.twice - v)
            dv = (factorial(v) * factorial(t1 - v) * factorial(s1 - v + 1)
                  * factorial(e1))
            for u in range(capu + 1):
                e2 = e2base - x3 - u
                if e2 < 0:
                    continue
                num = fx3 * fv * factorial(j12.twice - u) * factorial(nbase - u - v)
                den = (dx3 * dv * factorial(u) * factorial(t2 - u)
                       * factorial(s2 - u + 1) * factorial(e2))
                if (t1 + x3 + u + v) % 2:
                    num = -num
                total += Fraction(num, den)
                terms += 1
    return FormResult(ExactReal.from_rational(pref * total), "B", terms)


def _s_tilde_c(arr: Sp4SumArray) -> FormResult:
    j13, j23, g3 = arr.j1[2], arr.j2[2], arr.j[2]
    upper = _nn_int(arr.K2 - arr.j2[0] - arr.j2[1] + j23,
                    "form C binomial index K2 - j2^1 - j2^2 + j2^3")
    # exponent written with the j-part negated only matches this one on
    # integer columns; this version stays correct when j_1^1 + j_1^2 - j_1^3
    # is half-odd
    sign0 = phase(arr.K1 + arr.j1[0] + arr.j1[1] - j13)
    pref = Fraction(factorial(j13 - j23 + g3), factorial(j13 + j23 - g3))
    for a in range(2):
        pref *= (factorial(arr.j[a] - arr.j1[a] + arr.j2[a])
                 * factorial(arr.j1[a] + arr.j2[a] + arr.j[a] + 1))
    caps = [_exact_int(arr.j1[a] + arr.j2[a] - arr.j[a], "triangle") for a in range(2)]
    peri = [_exact_int(arr.j1[a] + arr.j2[a] + arr.j[a], "triangle") for a in range(2)]
    cap3 = _exact_int(j13 - j23 + g3, "triangle")
    gain3 = _exact_int(g3 - j13 + j23, "triangle")
    low0 = _exact_int(arr.j1[0] + arr.j1[1] + j13 - arr.K1, "row 1 excess")
    total = Fraction(0)
    terms = 0
    for x1 in range(caps[0] + 1):
        for x2 in range(caps[1] + 1):
            for x3 in range(cap3 + 1):
                b = binomial(upper, low0 - x1 - x2 - x3)
                if b == 0:
                    continue
                num = b * factorial(j13.twice - x3) * factorial(gain3 + x3)
                den = factorial(x3) * factorial(cap3 - x3)
                for a, x in enumerate((x1, x2)):
                    num *= factorial(arr.j1[a].twice - x)
                    den *= (factorial(x) * factorial(caps[a] - x)
                            * factorial(peri[a] - x + 1))
                if x3 % 2:
                    num = -num
                total += Fraction(num, den)
                terms += 1
    return FormResult(ExactReal.from_rational(sign0 * pref * total), "C", terms)


_S_TILDE_DISPATCH = {"A": _s_tilde_a, "B": _s_tilde_b, "C": _s_tilde_c}


def s_tilde_report(arr: Sp4SumArray, form: str = "A") -> FormResult:
    """Triple sum over the array with per-form structure and term count."""
    try:
        fn = _S_TILDE_DISPATCH[form]
    except KeyError:
        raise UnsupportedFormError(f"unknown triple-sum form {form!r}") from None
    return fn(arr)


def s_tilde(arr: Sp4SumArray, form: str = "A") -> ExactReal:
    return s_tilde_report(arr, form).value


# ---------------------------------------------------------------------------
# shifted parametrization: negative integer parameters, Pochhammer legs


def _script_checked(alpha0, beta0, alphas, betas, ks):
    a0 = _exact_int(as_halfint(alpha0), "alpha0")
    b0 = _exact_int(as_halfint(beta0), "beta0")
    al = [_exact_int(as_halfint(x), "alpha") for x in alphas]
    be = [_exact_int(as_halfint(x), "beta") for x in betas]
    kk = [_nn_int(as_halfint(x), "k") for x in ks]
    if len(al) != 3 or len(be) != 3 or len(kk) != 3:
        raise DomainError("need three legs")
    for x in (a0, b0, *al, *be):
        if x >= 0:
            raise DomainError("shifted parametrization needs negative integer"
                              f" alpha/beta parameters, got {x}")
    return a0, b0, al, be, kk


def _script_p(a0, b0, al, be, kk, i):
    j, k = [a for a in range(3) if a != i]
    num_pp = be[j] + be[k] - be[i] - b0
    num_pd = al[j] + al[k] - al[i] - a0
    if num_pp % 2 or num_pd % 2:
        raise DomainError("shifted parameters are inconsistent: p', p'' not integers")
    pp = num_pp // 2
    pd = num_pd // 2
    return pp, pd, kk[j] + kk[k] - kk[i] + pp + pd


def _s_script_pa(a0, b0, al, be, kk) -> FormResult:
    up2 = (a0 + b0) - 2 * sum(kk) - sum(al) - sum(be) - 4
    lo2 = b0 - sum(be) - 2
    if up2 % 2 or lo2 % 2:
        raise DomainError("shifted parameters are inconsistent: binomial index not integer")
    upper = up2 // 2
    if upper < 0:
        raise DomainError("form PA binomial index must be nonnegative")
    low0 = lo2 // 2
    total = Fraction(0)
    terms = 0
    for z1 in range(kk[0] + 1):
        for z2 in range(kk[1] + 1):
            for z3 in range(kk[2] + 1):
                b = binomial(upper, low0 - z1 - z2 - z3)
                if b == 0:
                    continue
                t = Fraction(b)
                for a, z in enumerate((z1, z2, z3)):
                    t *= (pochhammer(-kk[a] - al[a], z)
                          * pochhammer(-kk[a] - be[a], kk[a] - z))
                    t /= factorial(z) * factorial(kk[a] - z)
                    if z % 2:
                        t = -t
                if t:
                    total += t
                    terms += 1
    return FormResult(ExactReal.from_rational(total), "PA", terms)


def _s_script_pb(a0, b0, al, be, kk, i) -> FormResult:
    pp, pd, p = _script_p(a0, b0, al, be, kk, i)
    if pp < 0 or pd < 0 or p < 0:
        raise DomainError(f"form PB{i + 1} needs nonnegative p, p', p'' for its leg")
    up = -(2 * kk[i] + al[i] + be[i] + 2)
    lo = -(kk[i] + al[i] + 1)
    if up < 0 or lo < 0:
        raise DomainError(f"form PB{i + 1} binomial arguments must be nonnegative")
    pref = binomial(up, lo)
    j, k = [a for a in range(3) if a != i]
    total = Fraction(0)
    terms = 0
    for zj in range(kk[j] + 1):
        cj = (pochhammer(-kk[j] - be[j], zj)
              * pochhammer(kk[j] + al[j] + be[j] + 1, kk[j] - zj)
              / (factorial(zj) * factorial(kk[j] - zj)))
        for zk in range(kk[k] + 1):
            ck = (pochhammer(-kk[k] - be[k], zk)
                  * pochhammer(kk[k] + al[k] + be[k] + 1, kk[k] - zk)
                  / (factorial(zk) * factorial(kk[k] - zk)))
            rest = p - zj - zk
            for zi in range(max(0, rest - pd), rest + 1):
                b = binomial(pd, rest - zi)
                if b == 0 or cj == 0 or ck == 0:
                    continue
                num = (pochhammer(kk[i] + 1, zi)
                       * pochhammer(kk[i] + be[i] + 1, zi))
                if num == 0:
                    continue
                den = pochhammer(2 * kk[i] + al[i] + be[i] + 2, zi)
                if den == 0:
                    raise LatticeError("leg Pochhammer pole in form PB")
                t = b * cj * ck * num / (factorial(zi) * den)
                if (p - pd + zi + zj + zk) % 2:
                    t = -t
                total += t
                terms += 1
    return FormResult(ExactReal.from_rational(pref * total), f"PB{i + 1}", terms)


def s_script_report(alpha0, beta0, alphas, betas, ks, form: str = "PA") -> FormResult:
    """Shifted-parameter triple sum; equals s_tilde / (row-3 factorial product)."""
    a0, b0, al, be, kk = _script_checked(alpha0, beta0, alphas, betas, ks)
    if form == "PA":
        return _s_script_pa(a0, b0, al, be, kk)
    if form in ("PB1", "PB2", "PB3"):
        return _s_script_pb(a0, b0, al, be, kk, int(form[2]) - 1)
    raise UnsupportedFormError(f"unknown shifted form {form!r}")


def s_script(alpha0, beta0, alphas, betas, ks, form: str = "PA") -> ExactReal:
    return s_script_report(alpha0, beta0, alphas, betas, ks, form).value


def array_from_script(alpha0, beta0, alphas, betas, ks) -> Sp4SumArray:
    """Invert the parameter substitution back to a label array.

    k_a = I1+I2-I (etc. per column), alpha_0 = -2 K2 - 1, beta_0 = -2 K1 - 1,
    alpha_a = -2 j2^a - 1, beta_a = -2 j1^a - 1.
    """
    a0, b0, al, be, kk = _script_checked(alpha0, beta0, alphas, betas, ks)
    k2 = HalfInt.from_twice(-a0 - 1)
    k1 = HalfInt.from_twice(-b0 - 1)
    j2 = [HalfInt.from_twice(-x - 1) for x in al]
    j1 = [HalfInt.from_twice(-x - 1) for x in be]
    j = [j1[a] + j2[a] - kk[a] for a in range(3)]
    return Sp4SumArray((k1, *j1), (k2, *j2), (k1 + k2, *j))


# ---------------------------------------------------------------------------
# 11j coefficient and the semistretched isoscalar factor


def _row_in_content(K, Lam, I, J) -> bool:
    for combo in (K + Lam - I - J, I + J - K + Lam, K - Lam + I - J,
                  K - Lam - I + J):
        if not combo.is_integer or combo.twice < 0:
            return False
    return True


def eleven_j(K1, K2, row1, row2, row3, form: str = "A") -> ExactReal:
    """11j coefficient [K1 K2 K1+K2 | (L1 I1 J1) (L2 I2 J2) (L I J)].

    Zero whenever the SU(2) triangles or the irrep content conditions fail;
    invariant under permutations of the three right-hand columns, and the
    swap of the first two rows scales it by
    (-1)^(I1+I2-I+J1+J2-J+L1+L2-L).
    """
    K1 = as_halfint(K1)
    K2 = as_halfint(K2)
    L1, I1, J1 = (as_halfint(x) for x in row1)
    L2, I2, J2 = (as_halfint(x) for x in row2)
    L, I, J = (as_halfint(x) for x in row3)
    K = K1 + K2
    if not (_triangle_ints(I1, I2, I) and _triangle_ints(J1, J2, J)
            and _triangle_ints(L1, L2, L)):
        return ExactReal.zero()
    if not (_row_in_content(K1, L1, I1, J1) and _row_in_content(K2, L2, I2, J2)
            and _row_in_content(K, L, I, J)):
        return ExactReal.zero()
    arr = Sp4SumArray((K1, I1, J1, L1), (K2, I2, J2, L2), (K, I, J, L))
    st = s_tilde_report(arr, form)
    num = triangle_e(K + L, I, J) * nabla(K - L, I, J)
    den = (triangle_e(K1 + L1, I1, J1) * nabla(K1 - L1, I1, J1)
           * triangle_e(K2 + L2, I2, J2) * nabla(K2 - L2, I2, J2)
           * nabla(I, I1, I2) * nabla(J, J1, J2) * nabla(L, L1, L2))
    return num / den * st.value


def semistretched_isofactor(irrep1, irrep2, irrep, IJ1, IJ2, IJ,
                            form: str = "A") -> ExactReal:
    """Isoscalar factor [<K1 L1> <K2 L2> <K1+K2, L>; I1 J1, I2 J2, I J].

    Only the semistretched coupling K = K1 + K2 is supported; rows of the
    resulting coefficient matrix are orthonormal.
    """
    r1 = irrep1 if isinstance(irrep1, Sp4Irrep) else Sp4Irrep(*irrep1)
    r2 = irrep2 if isinstance(irrep2, Sp4Irrep) else Sp4Irrep(*irrep2)
    r = irrep if isinstance(irrep, Sp4Irrep) else Sp4Irrep(*irrep)
    if r.K != r1.K + r2.K:
        raise UnsupportedFormError(
            f"coupling <{r1.K} {r1.Lambda}> x <{r2.K} {r2.Lambda}> ->"
            f" <{r.K} {r.Lambda}> is not semistretched (K != K1 + K2)")
    I1, J1 = (as_halfint(x) for x in IJ1)
    I2, J2 = (as_halfint(x) for x in IJ2)
    I, J = (as_halfint(x) for x in IJ)
    core = eleven_j(r1.K, r2.K, (r1.Lambda, I1, J1), (r2.Lambda, I2, J2),
                    (r.Lambda, I, J), form=form)
    if core.is_zero:
        return core
    norm = Fraction((I1.twice + 1) * (J1.twice + 1) * (I2.twice + 1)
                    * (J2.twice + 1) * (r.Lambda.twice + 1))
    for ir in (r1, r2):
        norm *= (factorial((ir.K - ir.Lambda).twice)
                 * factorial(ir.K.twice + 1)
                 * factorial((ir.K + ir.Lambda).twice + 2))
    norm /= (factorial((r.K - r.Lambda).twice) * factorial(r.K.twice + 1)
             * factorial((r.K + r.Lambda).twice + 2))
    return phase(r1.Lambda + r2.Lambda - r.Lambda) * ExactReal.sqrt_rational(norm) * core


# ---------------------------------------------------------------------------
# closed forms for arrays with two equal rows


def _require_equal_rows(arr: Sp4SumArray) -> None:
    if arr.K1 != arr.K2 or arr.j1 != arr.j2:
        raise UnsupportedFormError("the first two array rows must coincide")


def _equal_rows_general(arr: Sp4SumArray, version: int) -> ExactReal:
    _require_equal_rows(arr)
    i = version
    jx, kx = (a for a in range(3) if a != i)
    g = [_exact_int(x, "column sum") for x in arr.j]
    nsum = g[0] + g[1] + g[2] - arr.K1.twice
    if nsum % 2:
        return ExactReal.zero()
    p = arr.K1 + arr.K2 + arr.j[i] - arr.j[jx] - arr.j[kx]
    if p.to_int() < 0:
        raise UnsupportedFormError(
            f"version {i} needs 2 K1 + j^{i + 1} >= j^{jx + 1} + j^{kx + 1}")
    ppr = arr.K1 + arr.j1[i] - arr.j1[jx] - arr.j1[kx]
    if not ppr.is_integer or ppr.to_int() < 0:
        raise UnsupportedFormError(
            f"version {i} needs K1 + j1^{i + 1} - j1^{jx + 1} - j1^{kx + 1}"
            " to be a nonnegative integer")
    # column triangles give k >= 0; parity of sum(k) matches sum(delta)
    k = [arr.j1[a].twice - g[a] for a in range(3)]
    delta = [x % 2 for x in k]
    if (delta[jx] + delta[kx] - delta[i]) % 2:
        raise UnsupportedFormError(
            "general equal-rows form needs integer j1 row sum minus K1")
    dmid = (delta[jx] + delta[kx] - delta[i]) // 2
    c = [(k[a] - delta[a]) // 2 for a in range(3)]
    front = pochhammer(Fraction(1, 2), g[i]) / factorial(g[i])
    front *= pow2(nsum).coeffs[0]
    front *= (factorial(g[0]) * factorial(g[1]) * factorial(g[2])) ** 2
    front /= pochhammer(Fraction(1, 2), c[jx] + delta[jx])
    front /= pochhammer(Fraction(1, 2), c[kx] + delta[kx])
    basej = -arr.j1[jx].as_fraction() - Fraction(g[jx] + 1 - delta[jx], 2)
    basek = -arr.j1[kx].as_fraction() - Fraction(g[kx] + 1 - delta[kx], 2)
    basei = -arr.j1[i].as_fraction() - Fraction(g[i] + delta[i], 2)
    sign0 = (ppr.to_int() + c[jx] + delta[jx] + c[kx] + delta[kx]) % 2
    halfp = p.to_int() // 2
    total = Fraction(0)
    for zj in range(c[jx] + 1):
        lj = (pochhammer(g[jx] + 1, c[jx] + delta[jx] + zj)
              * pochhammer(basej, c[jx] - zj)
              / (factorial(zj) * factorial(c[jx] - zj)))
        if lj == 0:
            continue
        for zk in range(c[kx] + 1):
            lk = (pochhammer(g[kx] + 1, c[kx] + delta[kx] + zk)
                  * pochhammer(basek, c[kx] - zk)
                  / (factorial(zk) * factorial(c[kx] - zk)))
            if lk == 0:
                continue
            for zi in range(max(0, halfp - dmid - zj - zk),
                            halfp - zj - zk + 1):
                b = binomial(dmid, halfp - zi - zj - zk)
                if b == 0:
                    continue
                li = (Fraction(binomial(c[i] + zi, zi))
                      * pochhammer(basei, zi)
                      / pochhammer(Fraction(1, 2) - g[i], zi))
                t = b * lj * lk * li
                if (sign0 + zi + zj + zk) % 2:
                    t = -t
                total += t
    return ExactReal.from_rational(front * total)


def _equal_rows_special(arr: Sp4SumArray) -> ExactReal:
    _require_equal_rows(arr)
    if arr.j1[0] != arr.j1[1] or arr.j1[2] != arr.K1:
        raise UnsupportedFormError(
            "the special equal-rows form needs j1^1 = j1^2 and j1^3 = K1")
    tb = arr.j1[0].twice                 # twice the repeated spin of columns 1, 2
    tk = arr.K1.twice                    # twice K1 = twice the column-3 spin
    g = [_exact_int(x, "column sum") for x in arr.j]
    width = tk - tb
    if width < 0:
        raise UnsupportedFormError(
            "the special equal-rows form needs j1^1 <= K1")
    nsum = g[0] + g[1] + g[2] - tk
    if nsum % 2:
        return ExactReal.zero()
    p = [tk + g[a] - g[(a + 1) % 3] - g[(a + 2) % 3] for a in range(3)]
    front = Fraction(1, 2) * pow2(-2 * tk - 3).coeffs[0] * factorial(width)
    front *= Fraction(-8) * (-1 if tk % 2 else 1)
    front *= (factorial(tb + g[0] + 1) * factorial(tb + g[1] + 1)
              * factorial(tk + g[2] + 1))
    front *= factorial(g[0]) * factorial(g[1]) * factorial(g[2])
    pre = gamma_signed(HalfInt.from_twice(-2 * tb - 1))
    for a in range(3):
        pre = pre * gamma_signed(HalfInt.from_twice(p[a] - 2 * tk - 1))
    den = (gamma_half(Fraction(1, 2))
           * gamma_signed(HalfInt.from_twice(tk - g[0] - g[1] - g[2] + 1)))
    total = ExactReal.zero()
    for u in range(max(0, width - p[2] // 2),
                   min(width, p[0] // 2, p[1] // 2) + 1):
        xbar = u + nsum // 2 + tb + 1
        if xbar < 0:
            continue
        q = Fraction((-1) ** ((u + xbar) % 2), 2)
        q /= (factorial(xbar) * factorial(u) * factorial(width - u)
              * factorial(p[0] // 2 - u) * factorial(p[1] // 2 - u)
              * factorial(p[2] // 2 - width + u))
        ga = gamma_signed(HalfInt.from_twice(-2 * tk - 1 + 2 * u))
        gb = gamma_signed(HalfInt.from_twice(-2 * tb - 1 - 2 * u))
        total = total + ExactReal.from_rational(q) * ga.inverse() * gb.inverse()
    return pre / den * total * front


def equal_rows_s_tilde(arr: Sp4SumArray, variant: str = "GENERAL",
                       version: int | None = None) -> ExactReal:
    """Closed forms of the triple sum for arrays whose first two rows coincide.

    GENERAL reduces the triple sum to one over three indices bounded by the
    differences 2 j1^a - j^a; each version i in {0, 1, 2} distinguishes one
    column and applies when both 2 K1 + j^i - j^j - j^k and
    K1 + j1^i - j1^j - j1^k are nonnegative (integers).  With version None the
    versions are tried in the order 2, 0, 1.  SPECIAL is a single sum of Gamma
    ratios and additionally needs j1^1 = j1^2 <= j1^3 = K1.  Both vanish when
    j^1 + j^2 + j^3 - 2 K1 is odd.
    """
    if variant == "GENERAL":
        if version is not None:
            return _equal_rows_general(arr, version)
        err = None
        for i in (2, 0, 1):
            try:
                return _equal_rows_general(arr, i)
            except UnsupportedFormError as e:
                err = e
        raise UnsupportedFormError(
            f"no version of the general equal-rows form applies: {err}")
    if variant == "SPECIAL":
        return _equal_rows_special(arr)
    raise UnsupportedFormError(f"unknown equal-rows variant {variant!r}")
