"""Independent verification engines.

Everything here exists to cross-check the closed series forms by a
route that shares no series code with them:

* Gauss-Jacobi quadrature at arbitrary binary precision, with nodes
  found by Newton iteration on recurrence-evaluated polynomials.  The
  rules are exact for polynomial integrands, so agreement is limited
  only by rounding.
* A group-integral evaluation of SO(n) 3j symbols (n = 4, 5) as
  iterated one-dimensional quadratures over the subgroup-chain angles.
* A Regge-symbol consistency check that ties the inner summations of
  the single- and triple-sum integral forms to SU(2) Clebsch-Gordan
  coefficients computed by the Racah formula.

Polynomial evaluation in this module uses three-term recurrences only;
the finite-series evaluators live elsewhere and are never called from
the quadrature path.
"""

from fractions import Fraction

import mpmath
import numpy

from .exact import (
    DEFAULT_PREC,
    DomainError,
    ExactReal,
    as_halfint,
    beta_half,
    binomial,
    factorial,
    phase,
    pochhammer,
)
from .su2 import wigner_3j

__all__ = [
    "gauss_jacobi_rule",
    "quad_triple_jacobi",
    "quad_triple_gegenbauer",
    "quad_group_3j",
    "regge_equivalence_check",
]

_rules = {}


def _jacobi_rec(k: int, a, b, x):
    """P_k^(a,b)(x) by the three-term recurrence, in the ambient mpf
    precision.  a, b enter as mpf."""
    if k == 0:
        return mpmath.mpf(1)
    p_prev = mpmath.mpf(1)
    p = (a - b + (a + b + 2) * x) / 2
    for m in range(2, k + 1):
        c1 = 2 * m * (m + a + b) * (2 * m + a + b - 2)
        c2 = (2 * m + a + b - 1) * (a * a - b * b)
        c3 = (2 * m + a + b - 2) * (2 * m + a + b - 1) * (2 * m + a + b)
        c4 = 2 * (m + a - 1) * (m + b - 1) * (2 * m + a + b)
        p, p_prev = ((c2 + c3 * x) * p - c4 * p_prev) / c1, p
    return p


def _jacobi_any(k: int, a, b, x):
    """P_k^(a,b)(x) for parameters where the recurrence may degenerate
    (a at or below -1).  Uses the terminating hypergeometric
    representation anchored on the b side, which only needs b > -1."""
    if a > -1:
        return _jacobi_rec(k, a, b, x)
    return ((-1) ** k * mpmath.binomial(k + b, k)
            * mpmath.hyp2f1(-k, k + a + b + 1, b + 1, (1 + x) / 2))


def _gegenbauer_rec(k: int, p, x):
    """C_k^p(x) by the three-term recurrence, in ambient precision."""
    if k == 0:
        return mpmath.mpf(1)
    c_prev = mpmath.mpf(1)
    c = 2 * p * x
    for m in range(2, k + 1):
        c, c_prev = (2 * x * (m + p - 1) * c - (m + 2 * p - 2) * c_prev) / m, c
    return c


def gauss_jacobi_rule(n_nodes: int, alpha, beta, prec: int = DEFAULT_PREC):
    """Nodes and weights integrating (1-x)^alpha (1+x)^beta exactly for
    polynomials of degree <= 2*n_nodes - 1.

    Nodes are seeded from the float64 Golub-Welsch eigenproblem and
    polished by Newton iteration at working precision.  Rules are
    cached per (n_nodes, alpha, beta, prec).
    """
    if prec < 16:
        raise DomainError("requested precision is too small to be meaningful")
    alpha = as_halfint(alpha)
    beta = as_halfint(beta)
    if alpha <= -1 or beta <= -1:
        raise DomainError("weight exponents must exceed -1")
    key = (n_nodes, alpha.twice, beta.twice, prec)
    if key in _rules:
        return _rules[key]

    af = float(alpha.as_fraction())
    bf = float(beta.as_fraction())
    # Golub-Welsch tridiagonal in float64, for seeds only
    diag = numpy.empty(n_nodes)
    diag[0] = (bf - af) / (af + bf + 2)
    for m in range(1, n_nodes):
        diag[m] = (bf * bf - af * af) / ((2 * m + af + bf) * (2 * m + af + bf + 2))
    off = numpy.empty(max(n_nodes - 1, 0))
    for m in range(1, n_nodes):
        if m == 1:
            sq = 4 * (1 + af) * (1 + bf) / ((2 + af + bf) ** 2 * (3 + af + bf))
        else:
            sq = (4 * m * (m + af) * (m + bf) * (m + af + bf)
                  / ((2 * m + af + bf) ** 2
                     * (2 * m + af + bf + 1) * (2 * m + af + bf - 1)))
        off[m - 1] = numpy.sqrt(sq)
    if n_nodes > 1:
        seeds = numpy.linalg.eigvalsh(numpy.diag(diag) + numpy.diag(off, 1)
                                      + numpy.diag(off, -1))
    else:
        seeds = diag[:1]

    with mpmath.workprec(prec + 64):
        am = mpmath.mpf(Fraction(alpha.as_fraction()).numerator) / alpha.as_fraction().denominator
        bm = mpmath.mpf(beta.as_fraction().numerator) / beta.as_fraction().denominator
        tol = mpmath.mpf(2) ** (-(prec + 24))
        nodes = []
        for seed in seeds:
            x = mpmath.mpf(float(seed))
            for _ in range(80):
                pv = _jacobi_rec(n_nodes, am, bm, x)
                dv = (n_nodes + am + bm + 1) / 2 * _jacobi_rec(
                    n_nodes - 1, am + 1, bm + 1, x)
                step = pv / dv
                x -= step
                if abs(step) < tol:
                    break
            nodes.append(x)
        norm = (mpmath.mpf(2) ** (am + bm + 1) * mpmath.gamma(n_nodes + am + 1)
                * mpmath.gamma(n_nodes + bm + 1)
                / (mpmath.factorial(n_nodes) * mpmath.gamma(n_nodes + am + bm + 1)))
        weights = []
        for x in nodes:
            dv = (n_nodes + am + bm + 1) / 2 * _jacobi_rec(
                n_nodes - 1, am + 1, bm + 1, x)
            weights.append(norm / ((1 - x * x) * dv * dv))
        rule = (tuple(mpmath.mpf(x) for x in nodes),
                tuple(mpmath.mpf(w) for w in weights))
    _rules[key] = rule
    return rule


def quad_triple_jacobi(spec, prec: int = DEFAULT_PREC):
    """Quadrature value of the weighted triple-Jacobi integral of
    `spec`, to the requested binary precision.

    The weight exponents of the rule absorb the integrand's own weight
    factor, so only the polynomial triple product is sampled and the
    rule is exact up to rounding.
    """
    a_exp = (sum((a.as_fraction() for a in spec.alphas), Fraction(0))
             - spec.alpha0.as_fraction()) / 2
    b_exp = (sum((b.as_fraction() for b in spec.betas), Fraction(0))
             - spec.beta0.as_fraction()) / 2
    if a_exp <= -1 or b_exp <= -1:
        raise DomainError("total weight exponents must exceed -1")
    deg = sum(spec.ks)
    n_nodes = int((deg + a_exp + b_exp
                   - spec.alpha0.as_fraction() - spec.beta0.as_fraction()) // 2) + 2
    n_nodes = max(n_nodes, deg // 2 + 1)
    nodes, weights = gauss_jacobi_rule(n_nodes, as_halfint(a_exp),
                                       as_halfint(b_exp), prec)
    with mpmath.workprec(prec + 32):
        total = mpmath.mpf(0)
        legs = [(k, mpmath.mpf(a.as_fraction().numerator) / a.as_fraction().denominator,
                 mpmath.mpf(b.as_fraction().numerator) / b.as_fraction().denominator)
                for k, a, b in zip(spec.ks, spec.alphas, spec.betas)]
        for x, w in zip(nodes, weights):
            prod = w
            for k, am, bm in legs:
                prod *= _jacobi_any(k, am, bm, x)
            total += prod
        scale = mpmath.mpf(2) ** (-(a_exp + b_exp + 1))
        return +(total * scale)


def quad_triple_gegenbauer(n: int, l, lprime, prec: int = DEFAULT_PREC):
    """Quadrature value of the triple-Gegenbauer angular integral with
    dimension label n, degrees l_a - l'_a and superscripts l'_a + n/2 - 1."""
    if n < 3:
        raise DomainError("dimension label must be at least 3")
    sin_pow = Fraction(sum(lprime) + n - 2)
    # cos substitution turns the sine power into a symmetric Jacobi weight
    exp = (sin_pow - 1) / 2
    deg = sum(la - lp for la, lp in zip(l, lprime))
    if deg < 0 or any(lp < 0 for lp in lprime):
        raise DomainError("labels must satisfy l >= l' >= 0")
    n_nodes = deg // 2 + 1
    nodes, weights = gauss_jacobi_rule(n_nodes, as_halfint(exp), as_halfint(exp), prec)
    with mpmath.workprec(prec + 32):
        total = mpmath.mpf(0)
        legs = [(la - lp, mpmath.mpf(2 * lp + n - 2) / 2) for la, lp in zip(l, lprime)]
        for x, w in zip(nodes, weights):
            prod = w
            for k, p in legs:
                prod *= _gegenbauer_rec(k, p, x)
            total += prod
        return +total


def _chain_measure_consts(r: int, prec: int):
    # normalized slice measure on the angle theta_r: c_r sin^(r-2) theta
    with mpmath.workprec(prec + 32):
        c = (mpmath.gamma(mpmath.mpf(r) / 2)
             / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(r - 1) / 2)))
        return +c


def quad_group_3j(n: int, l, lprime, m, prec: int = DEFAULT_PREC):
    """Group-integral value of the invariant triple product of SO(n)
    representation functions over the class-one subgroup chain, for
    n = 4 or 5, by iterated one-dimensional quadratures.

    `l` are the three SO(n) labels; `lprime` the chain labels one level
    down (SO(n-1)); `m` the three signed SO(2) weights at the bottom.
    For n = 5 `lprime` carries pairs (SO(4) label, SO(3) label).
    """
    if n not in (4, 5):
        raise DomainError("group-integral oracle supports n = 4 and 5 only")
    from . import son  # deferred: oracle must stay importable on its own

    if sum(m) != 0:
        return mpmath.mpf(0)

    if n == 4:
        levels = [(4, tuple(l), tuple(lprime))]
        l3 = tuple(lprime)
    else:
        l4 = tuple(lp[0] for lp in lprime)
        l3 = tuple(lp[1] for lp in lprime)
        levels = [(5, tuple(l), l4), (4, l4, l3)]

    with mpmath.workprec(prec + 32):
        value = mpmath.mpf(1)
        for r, upper, lower in levels:
            value *= _chain_level_integral(r, upper, lower, prec)
        value *= _chain_level_integral(3, l3, tuple(abs(mi) for mi in m), prec)
        for li, mi in zip(l3, m):
            value *= son.so3_weight_phase(li, mi).to_mpf(prec)
        return +value


def _chain_level_integral(r: int, upper, lower, prec: int):
    # integral of the three reduced elements against the normalized
    # slice measure c_r sin^(r-2)theta on [0, pi]
    from . import son

    for lu, ld in zip(upper, lower):
        if ld > lu:
            return mpmath.mpf(0)
    sin_pow = sum(lower) + r - 2
    exp = Fraction(sin_pow - 1, 2)
    deg = sum(lu - ld for lu, ld in zip(upper, lower))
    nodes, weights = gauss_jacobi_rule(deg // 2 + 1, as_halfint(exp),
                                       as_halfint(exp), prec)
    with mpmath.workprec(prec + 32):
        pref = _chain_measure_consts(r, prec)
        for lu, ld in zip(upper, lower):
            pref *= son.reduced_mel_prefactor(r, lu, ld).to_mpf(prec + 32)
        total = mpmath.mpf(0)
        legs = [(lu - ld, mpmath.mpf(2 * ld + r - 2) / 2) for lu, ld in zip(upper, lower)]
        for x, w in zip(nodes, weights):
            prod = w
            for k, p in legs:
                prod *= _gegenbauer_rec(k, p, x)
            total += prod
        return +(pref * total)


# ---------------------------------------------------------------------------
# Regge-symbol equivalence of the single- and triple-sum inner summations
# ---------------------------------------------------------------------------


def _w3j_from_regge(r):
    """3j value of the Regge array r by the single-sum formula, exact."""
    j = [Fraction(r[1][c] + r[2][c], 2) for c in range(3)]
    m = [Fraction(r[2][c] - r[1][c], 2) for c in range(3)]
    big_j = sum(r[0])
    norm_num = 1
    for row in r:
        for entry in row:
            norm_num *= factorial(entry)
    norm = ExactReal.sqrt_rational(Fraction(norm_num, factorial(big_j + 1)))
    t_lo = max(0, r[1][0] - r[0][1], r[2][1] - r[0][0])
    t_hi = min(r[0][2], r[1][0], r[2][1])
    acc = Fraction(0)
    for t in range(t_lo, t_hi + 1):
        den = (factorial(t) * factorial(r[0][2] - t) * factorial(r[1][0] - t)
               * factorial(r[2][1] - t) * factorial(r[0][1] - r[1][0] + t)
               * factorial(r[0][0] - r[2][1] + t))
        acc += Fraction(-1 if t % 2 else 1, den)
    sign = phase(j[0] - j[1] - m[2])
    return sign * norm * ExactReal.from_rational(acc)


def _regge_arrays(ki, ai, bi, p, pp, ppp, kj, kk, s):
    # the two equivalent symbols attached to leg i at fixed z_j + z_k = s
    rc = (
        (ki, ki + ai + bi, p - s),
        (ppp + bi + kj + kk - s, pp, ki + ai),
        (pp + ai, ppp + kj + kk - s, ki + bi),
    )
    # column cycle (3,1,2) then swap of the last two rows
    rd = (
        (p - s, ki, ki + ai + bi),
        (ki + bi, pp + ai, ppp + kj + kk - s),
        (ki + ai, ppp + bi + kj + kk - s, pp),
    )
    return rc, rd


def regge_equivalence_check(spec) -> bool:
    """For integer weight offsets, confirm that the inner summation
    over one leg's index in the single-sum form (after the parameter
    swap symmetry) and in the triple-sum form coincide exactly, and
    that both sit inside valid, mutually equivalent Regge symbols whose
    3j values match the Racah-formula results.

    Returns True when every leg and every partial sum passes.
    """
    a0 = spec.alpha0
    b0 = spec.beta0
    if not (a0.is_integer and b0.is_integer and a0 >= 0 and b0 >= 0):
        raise DomainError("Regge comparison needs nonnegative integer offsets")
    al = [int(a.as_fraction()) for a in spec.alphas]
    be = [int(b.as_fraction()) for b in spec.betas]
    ks = list(spec.ks)
    a0 = int(a0.as_fraction())
    b0 = int(b0.as_fraction())

    pprime, pdouble, pfull = [], [], []
    for i in range(3):
        jx, kx = (i + 1) % 3, (i + 2) % 3
        tp = Fraction(be[jx] + be[kx] - be[i] - b0, 2)
        tq = Fraction(al[jx] + al[kx] - al[i] - a0, 2)
        if tp.denominator != 1 or tq.denominator != 1:
            raise DomainError("spec is not triangular")
        pprime.append(int(tp))
        pdouble.append(int(tq))
        pfull.append(ks[jx] + ks[kx] - ks[i] + int(tp) + int(tq))
    if min(pprime) < 0 or min(pdouble) < 0 or min(pfull) < 0:
        raise DomainError("spec is not triangular")

    # constant beta-function arguments of the swapped single-sum form
    x_c = 1 + Fraction(sum(al) - a0, 2)
    y_c = 1 + Fraction(sum(be) - b0, 2) + sum(ks)

    for i in range(3):
        jx, kx = (i + 1) % 3, (i + 2) % 3
        ki, ai, bi = ks[i], al[i], be[i]
        kj, kk = ks[jx], ks[kx]
        p, pp, ppp = pfull[i], pdouble[i], pprime[i]
        pref_d = beta_half(ki + ai + 1, ki + bi + 1)
        for s in range(kj + kk + 1):
            inner_c = ExactReal.zero()
            for z in range(ki + 1):
                c = (pochhammer(Fraction(-ki - bi), z)
                     * pochhammer(Fraction(ki + ai + bi + 1), ki - z)
                     / (factorial(z) * factorial(ki - z)))
                inner_c = inner_c + ExactReal.from_rational(c) * beta_half(
                    x_c, y_c - s - z)
            inner_d = ExactReal.zero()
            for z in range(max(0, p - pp - s), p - s + 1):
                if z < 0:
                    continue
                c = (binomial(pp, p - s - z)
                     * pochhammer(Fraction(ki + 1), z)
                     * pochhammer(Fraction(ki + bi + 1), z)
                     / (factorial(z) * pochhammer(Fraction(2 * ki + ai + bi + 2), z)))
                term = ExactReal.from_rational(c) * phase(p - pp + s + z)
                inner_d = inner_d + term
            inner_d = pref_d * inner_d
            if inner_c != inner_d:
                return False
            if s > p:
                if not inner_c.is_zero:
                    return False
                continue

            rc, rd = _regge_arrays(ki, ai, bi, p, pp, ppp, kj, kk, s)
            sums = {sum(row) for row in rc} | {sum(col) for col in zip(*rc)}
            sums |= {sum(row) for row in rd} | {sum(col) for col in zip(*rd)}
            if len(sums) != 1:
                return False
            if any(entry < 0 for row in rc for entry in row):
                return False
            cycled = tuple(tuple(row[c] for c in (2, 0, 1)) for row in rc)
            if rd != (cycled[0], cycled[2], cycled[1]):
                return False

            vals = []
            for arr in (rc, rd):
                direct = _w3j_from_regge(arr)
                jm = [(as_halfint(Fraction(arr[1][c] + arr[2][c], 2)),
                       as_halfint(Fraction(arr[2][c] - arr[1][c], 2)))
                      for c in range(3)]
                racah = wigner_3j(jm[0][0], jm[0][1], jm[1][0], jm[1][1],
                                  jm[2][0], jm[2][1])
                if direct != racah:
                    return False
                vals.append(direct)
            big_j = sum(rc[0])
            if vals[1] != vals[0] * phase(big_j):
                return False
            # proportionality: the inner sums must vanish exactly when
            # the shared 3j value does, and conversely
            if vals[0].is_zero != inner_c.is_zero:
                return False
    return True
