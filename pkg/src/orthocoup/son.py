"""Coupling coefficients of the class-one (symmetric) representations of
the rotation groups SO(n).

Covers the canonical subgroup chain SO(n) > SO(n-1) > ... > SO(2) and the
two-branch trees SO(n) > SO(n') x SO(n'') with n' + n'' = n: irrep
dimensions, reduced matrix elements of the elementary plane rotations,
extreme-weight 3j-symbols, isoscalar factors of 3j-symbols and of
Clebsch-Gordan coefficients in both bases, and a duplication identity
that evaluates a doubled-label tree isofactor through canonical ones.

Two phase systems are supported.  PSI_J attaches the sign (-1)^J to every
extreme-weight 3j-symbol, J being the half-sum of its three labels;
GT_CONSISTENT drops that sign for n >= 4, which matches the
Gel'fand-Tsetlin sign convention for the generator matrix elements.  The
systems agree for n <= 3 and differ only in signs; isofactors with all
subgroup labels maximal are positive in both.

SO(2) carries signed integer weights.  Formulas consume the magnitudes;
the signs enter only through selection rules (weights summing to zero)
and explicit phase factors, which keeps the sign bookkeeping testable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exact import (
    DEFAULT_PREC,
    DomainError,
    ExactReal,
    beta_half,
    factorial,
    gamma_half,
    phase,
    pochhammer,
    pow2,
)
from .orthopoly import GegenbauerSpec, JacobiSpec, gegenbauer_eval, jacobi_eval
from .su2 import wigner_3j
from .triple_integrals import (
    GegenbauerTripleSpec,
    TripleIntegralSpec,
    triple_gegenbauer_integral,
    triple_jacobi_integral,
)

__all__ = [
    "PHASE_SYSTEMS",
    "SOnChainLabel",
    "cg_isofactor_canonical",
    "cg_isofactor_semicanonical",
    "duplication_isofactor",
    "extreme_3j",
    "isofactor_canonical",
    "isofactor_semicanonical",
    "reduced_mel_canonical",
    "reduced_mel_prefactor",
    "reduced_mel_tree",
    "so3_weight_phase",
    "so_dim",
    "tree_mel_prefactor",
]

PHASE_SYSTEMS = ("PSI_J", "GT_CONSISTENT")


def _check_phase_system(tag: str) -> None:
    if tag not in PHASE_SYSTEMS:
        raise DomainError(f"unknown phase system {tag!r}; choose from {PHASE_SYSTEMS}")


def so_dim(n: int, l: int) -> int:
    """Dimension of the symmetric traceless irrep with label l of SO(n).

    SO(2) weights (either sign) label one-dimensional irreps, so n = 2
    returns 1; that convention keeps the chain dimension products and the
    tree norms finite.
    """
    n = int(n)
    l = int(l)
    if n < 2:
        raise DomainError(f"group rank label n must be at least 2, got {n}")
    if l < 0:
        raise DomainError(f"irrep label must be nonnegative, got {l}")
    if n == 2:
        return 1
    return ((2 * l + n - 2) * factorial(l + n - 3)
            // (factorial(l) * factorial(n - 2)))


@dataclass(frozen=True)
class SOnChainLabel:
    """Canonical chain label of a basis state: the top label l of SO(n)
    and the tuple (l_(n-1), ..., l_(3), m_(2)) down the subgroup chain.

    Every consecutive pair must interleave; the last entry is a signed
    SO(2) weight bounded by l_(3) in magnitude.
    """

    n: int
    l: int
    chain: tuple

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(int(x) for x in self.chain))
        if self.n < 2:
            raise DomainError("chain labels need n >= 2")
        if len(self.chain) != self.n - 2:
            raise DomainError(
                f"SO({self.n}) needs {self.n - 2} descending labels,"
                f" got {len(self.chain)}")
        levels = (self.l, *self.chain)
        for i in range(len(levels) - 2):
            if not levels[i] >= levels[i + 1] >= 0:
                raise DomainError(f"labels {levels[i]} >= {levels[i + 1]} >= 0"
                                  " violated down the chain")
        if len(levels) >= 2 and levels[-2] < abs(levels[-1]):
            raise DomainError("the SO(2) weight exceeds its SO(3) label")


# ---------------------------------------------------------------------------
# reduced matrix elements of single plane rotations


def reduced_mel_prefactor(n: int, l: int, lprime: int) -> ExactReal:
    """Exact scalar multiplying sin^l'(t) C_{l-l'}^{l'+n/2-1}(cos t) in the
    canonical reduced matrix element between chain labels l and l'.

    The generic normalization is indeterminate at n = 3, where unitarity
    of the resulting rotation-matrix row fixes the replacement bracket
    (l-l')!/(l+l')! used here.
    """
    n = int(n)
    if n < 3:
        raise DomainError("reduced elements need n >= 3")
    if not 0 <= lprime <= l:
        raise DomainError(f"chain labels must satisfy 0 <= {lprime} <= {l}")
    if n == 3:
        br = Fraction(factorial(l - lprime), factorial(l + lprime))
    else:
        br = Fraction(
            factorial(l) * factorial(l - lprime) * factorial(n - 3)
            * factorial(lprime + n - 4) * (2 * lprime + n - 3),
            factorial(lprime) * factorial(l + lprime + n - 3)
            * factorial(l + n - 3))
    scale = pochhammer(Fraction(n - 2, 2), lprime) * 2 ** lprime
    return ExactReal.sqrt_rational(br) * scale


def reduced_mel_canonical(n: int, l: int, lprime: int, theta,
                          prec: int = DEFAULT_PREC):
    """Reduced matrix element of the rotation by theta in the plane of the
    two highest coordinate axes, between canonical chain labels l and l'."""
    pref = reduced_mel_prefactor(n, l, lprime)
    with mpmath.workprec(prec + 16):
        th = +mpmath.mpf(theta)
        geg = gegenbauer_eval(
            GegenbauerSpec(l - lprime, Fraction(2 * lprime + n - 2, 2)),
            mpmath.cos(th), prec=prec + 16)
        val = pref.to_mpf(prec + 16) * mpmath.sin(th) ** lprime * geg
    with mpmath.workprec(prec):
        return +val


def so3_weight_phase(l: int, m: int) -> ExactReal:
    """Sign relating the SO(3) matrix element of signed weight m to the
    reduced element with label |m|; reflection of the associated Legendre
    function makes it (-1)^|m| for negative m and +1 otherwise."""
    if abs(m) > l:
        raise DomainError(f"weight {m} exceeds the SO(3) label {l}")
    return ExactReal.from_rational(phase((abs(m) - m) // 2))


def _split_branches(n: int, nprime: int) -> int:
    ndp = int(n) - int(nprime)
    if nprime < 2 or ndp < 2:
        raise DomainError(
            f"branches SO({nprime}) x SO({ndp}) need both factors >= SO(2)")
    return ndp


def _branch_magnitude(size: int, label: int, what: str) -> tuple[int, int]:
    # SO(2) branches carry signed weights; the phase exponent is
    # (|m| - m)/2 per branch, zero for every other size
    if size == 2:
        return abs(label), (abs(label) - label) // 2
    if label < 0:
        raise DomainError(f"{what} label must be nonnegative, got {label}")
    return label, 0


def _tree_norm(n: int, nprime: int, ndp: int, l: int, lp: int, lpp: int) -> ExactReal:
    k2 = l - lp - lpp
    if k2 < 0 or k2 % 2:
        raise DomainError(
            f"top label {l} minus branch labels {lp} + {lpp} must be"
            " even and nonnegative")
    br = (ExactReal.from_rational(
        Fraction(2 * l + n - 2, 2) * factorial(k2 // 2))
        * gamma_half(Fraction(l + lp + lpp + n - 2, 2))
        / (gamma_half(Fraction(l - lp + lpp + ndp, 2))
           * gamma_half(Fraction(l + lp - lpp + nprime, 2))))
    return br.sqrt()


def tree_mel_prefactor(n: int, nprime: int, l: int, lprime: int,
                       ldoubleprime: int) -> ExactReal:
    """Exact scalar multiplying sin^l''(t) cos^l'(t) P_k(cos 2t) in the
    two-branch reduced matrix element, k = (l - l' - l'')/2.

    When a branch is SO(2) its label is a signed weight; the magnitude
    feeds the formulas and the sign only flips the overall phase.

    The element is the orthonormal Jacobi wavefunction rescaled by
    [B(n'/2, n''/2) d' d'' / d]^(1/2), which makes rows of fixed branch
    labels orthonormal with norm d'd''/d under the normalized angular
    measure; that scaling is forced by unitarity of the factorized
    representation matrix.
    """
    ndp = _split_branches(n, nprime)
    lp, phi1 = _branch_magnitude(nprime, lprime, "first branch")
    lpp, phi2 = _branch_magnitude(ndp, ldoubleprime, "second branch")
    dims = beta_half(Fraction(nprime, 2), Fraction(ndp, 2)).sqrt()
    dims = dims * ExactReal.sqrt_rational(
        Fraction(so_dim(nprime, lp) * so_dim(ndp, lpp), so_dim(n, l)))
    return phase(phi1 + phi2) * dims * _tree_norm(n, nprime, ndp, l, lp, lpp)


def reduced_mel_tree(n: int, nprime: int, l: int, lprime: int,
                     ldoubleprime: int, theta_c, prec: int = DEFAULT_PREC):
    """Reduced matrix element of the rotation by theta_c in the plane
    joining the two branches of the tree SO(n) > SO(n') x SO(n-n')."""
    ndp = _split_branches(n, nprime)
    lp = abs(lprime) if nprime == 2 else lprime
    lpp = abs(ldoubleprime) if ndp == 2 else ldoubleprime
    pref = tree_mel_prefactor(n, nprime, l, lprime, ldoubleprime)
    k = (l - lp - lpp) // 2
    with mpmath.workprec(prec + 16):
        th = +mpmath.mpf(theta_c)
        jac = jacobi_eval(
            JacobiSpec(k, Fraction(2 * lpp + ndp - 2, 2),
                       Fraction(2 * lp + nprime - 2, 2)),
            mpmath.cos(2 * th), prec=prec + 16)
        val = (pref.to_mpf(prec + 16) * mpmath.sin(th) ** lpp
               * mpmath.cos(th) ** lp * jac)
    with mpmath.workprec(prec):
        return +val


# ---------------------------------------------------------------------------
# extreme-weight 3j-symbols


def extreme_3j(n: int, l1: int, l2: int, l3: int,
               phase_system: str = "PSI_J") -> ExactReal:
    """3j-symbol with every subgroup label zero, exactly.

    Zero whenever the half-sum J of the labels is half-odd or some
    J - l_a is negative.  For n = 2 the labels are weight magnitudes and
    the nonzero value is the bare sign (-1)^J.  PSI_J keeps the (-1)^J
    phase for every n; GT_CONSISTENT drops it for n >= 4.
    """
    _check_phase_system(phase_system)
    ls = (abs(int(l1)), abs(int(l2)), abs(int(l3)))
    n = int(n)
    if n < 2:
        raise DomainError(f"group rank label n must be at least 2, got {n}")
    if sum(ls) % 2:
        return ExactReal.zero()
    J = sum(ls) // 2
    if any(J - l < 0 for l in ls):
        return ExactReal.zero()
    if n == 2:
        # one weight magnitude must balance the other two
        if max(ls) != J:
            return ExactReal.zero()
        return ExactReal.from_rational(phase(J))
    br = ExactReal.from_rational(
        Fraction(factorial(J + n - 3), factorial(n - 3)))
    br = br / gamma_half(Fraction(2 * J + n, 2))
    for l in ls:
        br = br * gamma_half(Fraction(2 * (J - l) + n - 2, 2))
        br = br * ExactReal.from_rational(
            Fraction(2 * l + n - 2, 2) / (so_dim(n, l) * factorial(J - l)))
    val = br.sqrt() / gamma_half(Fraction(n, 2))
    if phase_system == "PSI_J" or n == 3:
        val = phase(J) * val
    return val


# ---------------------------------------------------------------------------
# isoscalar factors, canonical restriction SO(n) > SO(n-1)


def _ncc_norm(n: int, l: int, lp: int) -> ExactReal:
    # per-leg factor 2^(l'+n/2-2) Gamma(l'+n/2-1)
    #   sqrt((l-l')! (2l+n-2) / (l+l'+n-3)!)
    val = (pow2(Fraction(2 * lp + n - 4, 2))
           * gamma_half(Fraction(2 * lp + n - 2, 2)))
    return val * ExactReal.sqrt_rational(
        Fraction(factorial(l - lp) * (2 * l + n - 2), factorial(l + lp + n - 3)))


def isofactor_canonical(n: int, ls, lps, phase_system: str = "PSI_J") -> ExactReal:
    """Isoscalar factor of the 3j-symbol for SO(n) restricted to SO(n-1).

    `ls` are the three SO(n) labels, `lps` the SO(n-1) labels underneath.
    For n = 3 the subgroup entries are signed SO(2) weights and the value
    is the ordinary SU(2) 3j-symbol of those weights.  Exact zero under
    any violated selection rule; isofactors with lps = ls are positive.

    In GT_CONSISTENT both auxiliary extreme-weight symbols enter through
    their magnitudes, including the SO(3) one at n = 4; together with the
    dropped phase in the Clebsch-Gordan conversion this multiplies the CG
    isofactor by (-1)^((l1 + l2 - l3 - l'1 - l'2 + l'3)/2) relative to
    PSI_J.
    """
    _check_phase_system(phase_system)
    n = int(n)
    if n < 3:
        raise DomainError("canonical restriction needs n >= 3")
    ls = tuple(int(x) for x in ls)
    lps = tuple(int(x) for x in lps)
    if len(ls) != 3 or len(lps) != 3:
        raise DomainError("three labels per level required")
    if n == 3:
        return wigner_3j(ls[0], lps[0], ls[1], lps[1], ls[2], lps[2])
    for l, lp in zip(ls, lps):
        if not 0 <= lp <= l:
            raise DomainError(f"subgroup label {lp} outside 0..{l}")
    top = extreme_3j(n, *ls, phase_system=phase_system)
    if top.is_zero:
        return ExactReal.zero()
    sub = extreme_3j(n - 1, *lps, phase_system=phase_system)
    if sub.is_zero:
        return ExactReal.zero()
    if phase_system == "GT_CONSISTENT" and n == 4:
        # strip the SO(3) symbol's phase: both auxiliaries unphased here
        sub = phase(sum(lps) // 2) * sub
    integral = triple_gegenbauer_integral(GegenbauerTripleSpec(n, ls, lps))
    if integral.is_zero:
        return ExactReal.zero()
    meas = (gamma_half(Fraction(n - 1, 2))
            / (gamma_half(Fraction(n, 2))
               * ExactReal.from_rational(1, grade=5))).sqrt()
    pref = sub / top * meas
    for l, lp in zip(ls, lps):
        pref = pref * _ncc_norm(n, l, lp)
        pref = pref * ExactReal.sqrt_rational(
            Fraction(so_dim(n - 1, lp), so_dim(n, l)))
    return pref * integral


def cg_isofactor_canonical(n: int, ls, lps,
                           phase_system: str = "PSI_J") -> ExactReal:
    """Isoscalar factor of the Clebsch-Gordan coefficient for the
    restriction SO(n) > SO(n-1), from the 3j isofactor.

    In PSI_J the conversion carries the phase (-1)^(l3 - l'3); in
    GT_CONSISTENT the phase is dropped along with the extreme-weight
    signs, which flips the value by
    (-1)^((l1 + l2 - l3 - l'1 - l'2 + l'3)/2) relative to PSI_J.
    """
    _check_phase_system(phase_system)
    n = int(n)
    ls = tuple(int(x) for x in ls)
    lps = tuple(int(x) for x in lps)
    if n == 3:
        # coupled SO(2) weights: reflect the third in the 3j-symbol
        if lps[0] + lps[1] != lps[2]:
            return ExactReal.zero()
        base = isofactor_canonical(3, ls, (lps[0], lps[1], -lps[2]),
                                   phase_system=phase_system)
        dsub = 1
    else:
        base = isofactor_canonical(n, ls, lps, phase_system=phase_system)
        dsub = so_dim(n - 1, lps[2])
    if base.is_zero:
        return base
    scale = ExactReal.sqrt_rational(Fraction(so_dim(n, ls[2]), dsub))
    if phase_system == "PSI_J" or n == 3:
        sign = phase(ls[2] - abs(lps[2]))
    else:
        sign = 1
    return sign * scale * base


# ---------------------------------------------------------------------------
# isoscalar factors, tree restriction SO(n) > SO(n') x SO(n'')


def isofactor_semicanonical(n: int, nprime: int, ls, lprimes, ldprimes,
                            phase_system: str = "PSI_J") -> ExactReal:
    """Isoscalar factor of the 3j-symbol for SO(n) restricted to the
    product SO(n') x SO(n''), n'' = n - n'.

    `lprimes` and `ldprimes` hold the three labels of each branch; when a
    branch is SO(2) its entries are signed weights that must sum to zero
    for a nonzero value.  Every l_a - l'_a - l''_a must be even and
    nonnegative.
    """
    _check_phase_system(phase_system)
    n = int(n)
    nprime = int(nprime)
    ndp = _split_branches(n, nprime)
    ls = tuple(int(x) for x in ls)
    lprimes = tuple(int(x) for x in lprimes)
    ldprimes = tuple(int(x) for x in ldprimes)
    if len(ls) != 3 or len(lprimes) != 3 or len(ldprimes) != 3:
        raise DomainError("three labels per level required")
    if any(l < 0 for l in ls):
        raise DomainError("SO(n) labels must be nonnegative")
    if nprime == 2 and sum(lprimes) != 0:
        return ExactReal.zero()
    if ndp == 2 and sum(ldprimes) != 0:
        return ExactReal.zero()
    lpm = tuple(_branch_magnitude(nprime, x, "first branch")[0] for x in lprimes)
    lppm = tuple(_branch_magnitude(ndp, x, "second branch")[0] for x in ldprimes)
    ks = []
    for l, a, b in zip(ls, lpm, lppm):
        k2 = l - a - b
        if k2 < 0 or k2 % 2:
            raise DomainError(
                f"top label {l} minus branch labels {a} + {b} must be"
                " even and nonnegative")
        ks.append(k2 // 2)
    top = extreme_3j(n, *ls, phase_system=phase_system)
    if top.is_zero:
        return ExactReal.zero()
    first = extreme_3j(nprime, *lpm, phase_system=phase_system)
    second = extreme_3j(ndp, *lppm, phase_system=phase_system)
    if first.is_zero or second.is_zero:
        return ExactReal.zero()
    spec = TripleIntegralSpec(
        Fraction(ndp - 2, 2), Fraction(nprime - 2, 2),
        [Fraction(2 * b + ndp - 2, 2) for b in lppm],
        [Fraction(2 * a + nprime - 2, 2) for a in lpm],
        ks)
    integral = triple_jacobi_integral(spec)
    if integral.is_zero:
        return ExactReal.zero()
    pref = (first * second / top
            * beta_half(Fraction(nprime, 2), Fraction(ndp, 2)).sqrt())
    for l, a, b in zip(ls, lpm, lppm):
        pref = pref * _tree_norm(n, nprime, ndp, l, a, b)
        pref = pref * ExactReal.sqrt_rational(
            Fraction(so_dim(nprime, a) * so_dim(ndp, b), so_dim(n, l)))
    return pref * integral


def cg_isofactor_semicanonical(n: int, nprime: int, ls, lprimes, ldprimes,
                               phase_system: str = "PSI_J") -> ExactReal:
    """Isoscalar factor of the Clebsch-Gordan coefficient for the tree
    restriction SO(n) > SO(n') x SO(n'').

    The third-column SO(2) weights follow the coupling convention
    (first two summing to the third); the underlying 3j isofactor sees
    the third weight reflected.  PSI_J needs no extra phase; the
    GT_CONSISTENT phase depends on the branch sizes through the third
    column's weights and labels.
    """
    _check_phase_system(phase_system)
    n = int(n)
    nprime = int(nprime)
    ndp = _split_branches(n, nprime)
    ls = tuple(int(x) for x in ls)
    lprimes = tuple(int(x) for x in lprimes)
    ldprimes = tuple(int(x) for x in ldprimes)
    if nprime == 2 and lprimes[0] + lprimes[1] != lprimes[2]:
        return ExactReal.zero()
    if ndp == 2 and ldprimes[0] + ldprimes[1] != ldprimes[2]:
        return ExactReal.zero()
    lp3 = (lprimes[0], lprimes[1], -lprimes[2]) if nprime == 2 else lprimes
    lpp3 = (ldprimes[0], ldprimes[1], -ldprimes[2]) if ndp == 2 else ldprimes
    base = isofactor_semicanonical(n, nprime, ls, lp3, lpp3,
                                   phase_system=phase_system)
    if base.is_zero:
        return base
    scale = ExactReal.sqrt_rational(Fraction(
        so_dim(n, ls[2]),
        so_dim(nprime, abs(lprimes[2])) * so_dim(ndp, abs(ldprimes[2]))))
    if phase_system == "PSI_J":
        sign = 1
    else:
        sign = phase((ldprimes[2] if ndp == 2 else 0)
                     + (lprimes[2] if nprime == 2 else 0)
                     + (ldprimes[2] if ndp == 3 else 0)
                     + (lprimes[2] if nprime == 3 else 0))
    return sign * scale * base


# ---------------------------------------------------------------------------
# duplication identity


def duplication_isofactor(n: int, ls, lps) -> ExactReal:
    """Tree isofactor of SO(2n-2) > SO(n-1) x SO(n-1) with doubled top
    labels 2 l_a and equal branch labels l'_a, evaluated through the
    canonical SO(n) > SO(n-1) isofactor and extreme-weight 3j-symbols.

    Equals isofactor_semicanonical(2n-2, n-1, 2*ls, lps, lps) in the
    PSI_J system; both sides are computed by entirely different
    reductions, so their agreement exercises the whole assembly.  The
    identity is a statement in that phase system only, so no system
    selector is offered.
    """
    n = int(n)
    if n < 4:
        raise DomainError("duplication identity needs n >= 4")
    ls = tuple(int(x) for x in ls)
    lps = tuple(int(x) for x in lps)
    doubled = extreme_3j(2 * n - 2, *(2 * l for l in ls))
    if doubled.is_zero:
        return ExactReal.zero()
    val = (isofactor_canonical(n, ls, lps)
           * extreme_3j(n, *ls)
           * extreme_3j(n - 1, *lps)
           / doubled)
    for l, lp in zip(ls, lps):
        val = val * ExactReal.sqrt_rational(Fraction(
            so_dim(n, l) * so_dim(n - 1, lp), so_dim(2 * n - 2, 2 * l)))
    return val
