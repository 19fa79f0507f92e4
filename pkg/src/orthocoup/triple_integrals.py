"""Closed-form evaluation of weighted triple-product integrals of Jacobi
and Gegenbauer polynomials.

Two integral families are covered.  The Jacobi family is

    I = (1/2) Int_{-1}^{1} ((1+x)/2)^{(b1+b2+b3-b0)/2}
        ((1-x)/2)^{(a1+a2+a3-a0)/2}
        P_{k1}^{(a1,b1)}(x) P_{k2}^{(a2,b2)}(x) P_{k3}^{(a3,b3)}(x) dx

with every a_r - a0 and b_r - b0 an integer.  The Gegenbauer family is

    G = Int_0^pi (sin t)^{m1+m2+m3+n-2}
        C_{l1-m1}^{m1+n/2-1}(cos t) C_{l2-m2}^{m2+n/2-1}(cos t)
        C_{l3-m3}^{m3+n/2-1}(cos t) dt.

Both reduce to terminating sums of beta-function terms.  Several
inequivalent expansions exist for each; they are exposed through form
tags (SUM_B, SUM_C, SUM_D1..3, DOUBLE_RA, DOUBLE_RB, EQSUP_ST, EQSUP_SR
for the Jacobi family; GEG_A, GEG_C1..3, GEG_D, GEG_R for the
Gegenbauer one) so that callers can pit them against each other.  AUTO
picks the applicable form with the smallest a-priori term bound.

Every result is exact: a rational combination of integer powers of
sqrt(pi).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    DomainError,
    ExactReal,
    HalfInt,
    as_halfint,
    beta_half,
    binomial,
    factorial,
    gamma_half,
    gamma_signed,
    phase,
    pochhammer,
    pow2,
)

__all__ = [
    "FormResult",
    "GEGENBAUER_FORMS",
    "GegenbauerTripleSpec",
    "JACOBI_FORMS",
    "TripleIntegralSpec",
    "UnsupportedFormError",
    "negative_alpha_extension",
    "term_count_bound",
    "triple_gegenbauer_integral",
    "triple_gegenbauer_report",
    "triple_jacobi_integral",
    "triple_jacobi_report",
    "triple_jacobi_symmetry",
    "two_gegenbauer_integral",
    "vanishing_leg",
]

JACOBI_FORMS = (
    "SUM_B",
    "SUM_C",
    "SUM_D1",
    "SUM_D2",
    "SUM_D3",
    "DOUBLE_RA",
    "DOUBLE_RB",
    "EQSUP_ST",
    "EQSUP_SR",
)

GEGENBAUER_FORMS = ("GEG_A", "GEG_C1", "GEG_C2", "GEG_C3", "GEG_D", "GEG_R")

# AUTO preference among equal term bounds, most specialised first.
_AUTO_JACOBI = ("SUM_D3", "SUM_D2", "SUM_D1", "DOUBLE_RA", "DOUBLE_RB", "SUM_C", "SUM_B")
_AUTO_GEG = ("GEG_R", "GEG_C3", "GEG_C2", "GEG_C1", "GEG_A", "GEG_D")


class UnsupportedFormError(DomainError):
    """Requested expansion does not apply to the given parameter set."""


def _halve(x: HalfInt) -> HalfInt:
    if x.twice % 2:
        raise DomainError("quantity %s is not an even lattice point" % (x,))
    return HalfInt.from_twice(x.twice // 2)


def _others(i: int) -> tuple[int, int]:
    return tuple(a for a in range(3) if a != i)


@dataclass(frozen=True)
class FormResult:
    """Outcome of one expansion: exact value, form tag, nonzero terms summed."""

    value: ExactReal
    form: str
    terms: int


class TripleIntegralSpec:
    """Parameter set of a weighted triple-Jacobi integral.

    alpha0/beta0 fix the weight; each leg carries (alpha_a, beta_a, k_a).
    All alpha_a - alpha0 and beta_a - beta0 must be integers (they may be
    negative: see negative_alpha_extension).  The weight exponents
    (sum(alpha) - alpha0)/2 and (sum(beta) - beta0)/2 must exceed -1 or
    the integral diverges.
    """

    __slots__ = ("alpha0", "beta0", "alphas", "betas", "ks")

    def __init__(self, alpha0, beta0, alphas, betas, ks):
        self.alpha0 = as_halfint(alpha0)
        self.beta0 = as_halfint(beta0)
        self.alphas = tuple(as_halfint(a) for a in alphas)
        self.betas = tuple(as_halfint(b) for b in betas)
        self.ks = tuple(int(k) for k in ks)
        if len(self.alphas) != 3 or len(self.betas) != 3 or len(self.ks) != 3:
            raise DomainError("exactly three legs required")
        if any(k < 0 for k in self.ks):
            raise DomainError("polynomial degrees must be nonnegative")
        if not (self.alpha0 > -1 and self.beta0 > -1):
            raise DomainError("weight superscripts must exceed -1")
        for a in self.alphas:
            if not (a - self.alpha0).is_integer:
                raise DomainError("alpha_a - alpha0 must be an integer")
        for b in self.betas:
            if not (b - self.beta0).is_integer:
                raise DomainError("beta_a - beta0 must be an integer")
        if sum(self.alphas, -self.alpha0) <= -2 or sum(self.betas, -self.beta0) <= -2:
            raise DomainError("weight exponent at or below -1: integral diverges")

    def __repr__(self):
        return "TripleIntegralSpec(%s, %s, %s, %s, %s)" % (
            self.alpha0, self.beta0, self.alphas, self.betas, self.ks)

    def __eq__(self, other):
        if not isinstance(other, TripleIntegralSpec):
            return NotImplemented
        return (self.alpha0, self.beta0, self.alphas, self.betas, self.ks) == (
            other.alpha0, other.beta0, other.alphas, other.betas, other.ks)

    def __hash__(self):
        return hash((self.alpha0, self.beta0, self.alphas, self.betas, self.ks))

    # Per-leg triangle quantities.  For leg i with the other legs j, k:
    #   p_i'  = (beta_j + beta_k - beta_i - beta0) / 2
    #   p_i'' = (alpha_j + alpha_k - alpha_i - alpha0) / 2
    #   p_i   = k_j + k_k - k_i + p_i' + p_i''
    # All are half-integers; "triangular" demands nonnegative integers.

    def p_prime(self, i: int) -> HalfInt:
        j, k = _others(i)
        return _halve(self.betas[j] + self.betas[k] - self.betas[i] - self.beta0)

    def p_dprime(self, i: int) -> HalfInt:
        j, k = _others(i)
        return _halve(self.alphas[j] + self.alphas[k] - self.alphas[i] - self.alpha0)

    def p(self, i: int) -> HalfInt:
        j, k = _others(i)
        return self.p_prime(i) + self.p_dprime(i) + (self.ks[j] + self.ks[k] - self.ks[i])

    @property
    def is_triangular(self) -> bool:
        for i in range(3):
            for q in (self.p_prime(i), self.p_dprime(i), self.p(i)):
                if not q.is_integer or q < 0:
                    return False
        return True

    @property
    def has_standard_weights(self) -> bool:
        return all(a >= self.alpha0 for a in self.alphas) and all(
            b >= self.beta0 for b in self.betas)

    def swapped(self) -> "TripleIntegralSpec":
        return TripleIntegralSpec(self.beta0, self.alpha0, self.betas, self.alphas, self.ks)


def vanishing_leg(spec: TripleIntegralSpec):
    """Index of a leg certifying that the integral is exactly zero, else None.

    The integral vanishes precisely when some leg i has p_i' and p_i''
    nonnegative integers while p_i is a negative integer; legs failing
    the integrality or nonnegativity of p', p'' certify nothing.
    """
    for i in range(3):
        pp, pd = spec.p_prime(i), spec.p_dprime(i)
        if pp.is_integer and pd.is_integer and pp >= 0 and pd >= 0 and spec.p(i) < 0:
            return i
    return None


def triple_jacobi_symmetry(spec: TripleIntegralSpec) -> tuple[TripleIntegralSpec, int]:
    """Reflection x -> -x: returns the alpha/beta-swapped spec and the
    sign (-1)**(k1+k2+k3) relating the two integrals."""
    return spec.swapped(), phase(sum(spec.ks))


def negative_alpha_extension(spec: TripleIntegralSpec) -> tuple[TripleIntegralSpec, ExactReal]:
    """Rewrite a spec carrying one negative integer alpha_a (alpha0 = 0,
    k_a + alpha_a >= 0) as an equivalent standard spec plus a prefactor:
    the original integral equals prefactor * integral(new spec)."""
    if spec.alpha0 != 0:
        raise UnsupportedFormError("extension requires alpha0 = 0")
    negs = [a for a in range(3) if spec.alphas[a] < 0]
    if len(negs) != 1:
        raise UnsupportedFormError("exactly one negative alpha leg required")
    a = negs[0]
    al = spec.alphas[a]
    if not al.is_integer:
        raise UnsupportedFormError("negative alpha must be an integer")
    k = spec.ks[a]
    if k + al < 0:
        raise UnsupportedFormError("k_a + alpha_a must be nonnegative")
    be = spec.betas[a]
    pref = phase(al) * (
        gamma_half(k + al + 1) * gamma_half(k + be + 1)
        / (gamma_half(k + 1) * gamma_half(k + al + be + 1)))
    alphas = list(spec.alphas)
    ks = list(spec.ks)
    alphas[a] = -al
    ks[a] = (k + al).to_int()
    return TripleIntegralSpec(spec.alpha0, spec.beta0, alphas, spec.betas, ks), pref


# --- Jacobi expansions ------------------------------------------------

def _beta_args_bc(spec):
    # u0 = 1 + (sum beta - beta0)/2,  v0 = 1 + (sum alpha - alpha0)/2 + sum k
    u0 = _halve(sum(spec.betas, -spec.beta0)) + 1
    v0 = _halve(sum(spec.alphas, -spec.alpha0)) + 1 + sum(spec.ks)
    return u0, v0


def _leg_coeffs_b(k: int, al: HalfInt, be: HalfInt) -> list[Fraction]:
    a, b = al.as_fraction(), be.as_fraction()
    return [
        Fraction((-1) ** z)
        * pochhammer(-k - a, z) * pochhammer(-k - b, k - z)
        / (factorial(z) * factorial(k - z))
        for z in range(k + 1)
    ]


def _leg_coeffs_c(k: int, al: HalfInt, be: HalfInt) -> list[Fraction]:
    a, b = al.as_fraction(), be.as_fraction()
    return [
        pochhammer(-k - a, z) * pochhammer(k + a + b + 1, k - z)
        / (factorial(z) * factorial(k - z))
        for z in range(k + 1)
    ]


def _sum_over_s(spec, legs) -> tuple[dict[int, Fraction], int]:
    # Collapse the triple z-sum onto s = z1+z2+z3; count nonzero triples.
    by_s: dict[int, Fraction] = {}
    terms = 0
    c1, c2, c3 = legs
    for z1, f1 in enumerate(c1):
        if not f1:
            continue
        for z2, f2 in enumerate(c2):
            if not f2:
                continue
            f12 = f1 * f2
            for z3, f3 in enumerate(c3):
                if not f3:
                    continue
                s = z1 + z2 + z3
                by_s[s] = by_s.get(s, Fraction(0)) + f12 * f3
                terms += 1
    return by_s, terms


def _sum_b(spec) -> FormResult:
    u0, v0 = _beta_args_bc(spec)
    legs = [_leg_coeffs_b(spec.ks[a], spec.alphas[a], spec.betas[a]) for a in range(3)]
    by_s, terms = _sum_over_s(spec, legs)
    total = ExactReal.zero()
    for s, q in by_s.items():
        if q:
            total = total + beta_half(u0 + s, v0 - s) * q
    return FormResult(total, "SUM_B", terms)


def _sum_c(spec) -> FormResult:
    u0, v0 = _beta_args_bc(spec)
    legs = [_leg_coeffs_c(spec.ks[a], spec.alphas[a], spec.betas[a]) for a in range(3)]
    by_s, terms = _sum_over_s(spec, legs)
    sign = phase(sum(spec.ks))
    total = ExactReal.zero()
    for s, q in by_s.items():
        if q:
            total = total + beta_half(u0, v0 - s) * (sign * q)
    return FormResult(total, "SUM_C", terms)


def _require_leg_gate(spec, i: int, form: str) -> tuple[int, int]:
    pp, pd = spec.p_prime(i), spec.p_dprime(i)
    if not (pp.is_integer and pd.is_integer and pp >= 0 and pd >= 0):
        raise UnsupportedFormError(
            "%s needs nonnegative integers p'_%d and p''_%d" % (form, i + 1, i + 1))
    return pp.to_int(), pd.to_int()


def _sum_d(spec, i: int) -> FormResult:
    tag = "SUM_D%d" % (i + 1)
    _, q = _require_leg_gate(spec, i, tag)
    p = spec.p(i).to_int()
    if p < 0:
        return FormResult(ExactReal.zero(), tag, 0)
    j, k = _others(i)
    ki, ai, bi = spec.ks[i], spec.alphas[i].as_fraction(), spec.betas[i].as_fraction()
    # Spectator legs carry the beta-side coefficients (alpha/beta swap of C).
    legj = _leg_coeffs_c(spec.ks[j], spec.betas[j], spec.alphas[j])
    legk = _leg_coeffs_c(spec.ks[k], spec.betas[k], spec.alphas[k])
    # Leg-i ladder: (k_i+1)_z (k_i+b_i+1)_z / (z! (2k_i+a_i+b_i+2)_z)
    ladder = [Fraction(1)]
    for z in range(1, p + 1):
        ladder.append(
            ladder[-1] * (ki + z) * (ki + bi + z) / (z * (2 * ki + ai + bi + 1 + z)))
    acc = Fraction(0)
    terms = 0
    sign0 = phase(p - q)
    for zj, fj in enumerate(legj):
        if not fj:
            continue
        for zk, fk in enumerate(legk):
            if not fk:
                continue
            w0 = p - zj - zk
            if w0 < 0:
                continue
            fjk = fj * fk
            for zi in range(max(0, w0 - q), w0 + 1):
                c = binomial(q, w0 - zi)
                if not c:
                    continue
                t = fjk * c * ladder[zi]
                if not t:
                    continue
                if (zi + zj + zk) % 2:
                    t = -t
                acc += t
                terms += 1
    value = beta_half(ki + spec.alphas[i] + 1, ki + spec.betas[i] + 1) * (sign0 * acc)
    return FormResult(value, tag, terms)


def _resolve_ra_roles(spec):
    if spec.alpha0 != 0:
        return None
    for i in (2, 1, 0):
        j, k = _others(i)
        if spec.alphas[i] != spec.alphas[j] + spec.alphas[k]:
            continue
        pp = spec.p_prime(i)
        if pp.is_integer and pp >= 0:
            return i, j, k
    return None


def _double_ra(spec) -> FormResult:
    roles = _resolve_ra_roles(spec)
    if roles is None:
        raise UnsupportedFormError(
            "DOUBLE_RA needs alpha0 = 0, a stretched leg alpha_i = alpha_j + alpha_k "
            "and a nonnegative integer p'_i")
    i, j, k = roles
    p = spec.p(i).to_int()
    if p < 0:
        return FormResult(ExactReal.zero(), "DOUBLE_RA", 0)
    ki, ai, bi = spec.ks[i], spec.alphas[i].as_fraction(), spec.betas[i].as_fraction()
    legj = _leg_coeffs_c(spec.ks[j], spec.betas[j], spec.alphas[j])
    legk = _leg_coeffs_c(spec.ks[k], spec.betas[k], spec.alphas[k])
    ladder = [Fraction(1)]
    for z in range(1, p + 1):
        ladder.append(
            ladder[-1] * (ki + z) * (ki + bi + z) / (z * (2 * ki + ai + bi + 1 + z)))
    acc = Fraction(0)
    terms = 0
    for zj, fj in enumerate(legj):
        if not fj:
            continue
        for zk, fk in enumerate(legk):
            if not fk:
                continue
            w = p - zj - zk
            if w < 0:
                continue
            t = fj * fk * ladder[w]
            if t:
                acc += t
                terms += 1
    value = beta_half(ki + spec.alphas[i] + 1, ki + spec.betas[i] + 1) * acc
    return FormResult(value, "DOUBLE_RA", terms)


def _resolve_rb_roles(spec):
    if spec.alpha0 != 0:
        return None
    for s in (2, 1, 0):
        o1, o2 = _others(s)
        if spec.alphas[s] != spec.alphas[o1] + spec.alphas[o2]:
            continue
        for r1, r2 in ((o1, o2), (o2, o1)):
            pp = spec.p_prime(r1)
            if not (pp.is_integer and pp >= 0):
                continue
            if spec.alphas[r2] < 0:
                continue
            return r1, r2, s
    return None


def _double_rb(spec) -> FormResult:
    roles = _resolve_rb_roles(spec)
    if roles is None:
        raise UnsupportedFormError(
            "DOUBLE_RB needs alpha0 = 0, a stretched leg and a front leg "
            "with nonnegative integer p")
    r1, r2, r3 = roles
    p1 = spec.p(r1).to_int()
    if p1 < 0:
        return FormResult(ExactReal.zero(), "DOUBLE_RB", 0)
    k1, a1, b1 = spec.ks[r1], spec.alphas[r1].as_fraction(), spec.betas[r1].as_fraction()
    k2, a2, b2 = spec.ks[r2], spec.alphas[r2].to_int(), spec.betas[r2].as_fraction()
    k3, a3, b3 = spec.ks[r3], spec.alphas[r3].as_fraction(), spec.betas[r3].as_fraction()
    ladder = [Fraction(1)]
    for z in range(1, p1 + 1):
        ladder.append(
            ladder[-1] * (k1 + z) * (k1 + b1 + z) / (z * (2 * k1 + a1 + b1 + 1 + z)))
    leg3 = _leg_coeffs_c(k3, spec.betas[r3], spec.alphas[r3])
    acc = Fraction(0)
    terms = 0
    for z2 in range(0, min(k2 + a2, p1) + 1):
        c2 = (
            Fraction(binomial(k2 + a2, z2))
            * pochhammer(k2 + a2 + b2 + 1 - z2, k2) / factorial(k2))
        if (a2 - z2) % 2:
            c2 = -c2
        if not c2:
            continue
        for z3, f3 in enumerate(leg3):
            if not f3:
                continue
            w = p1 - z2 - z3
            if w < 0:
                continue
            t = c2 * f3 * ladder[w]
            if t:
                acc += t
                terms += 1
    value = beta_half(k1 + spec.alphas[r1] + 1, k1 + spec.betas[r1] + 1) * acc
    return FormResult(value, "DOUBLE_RB", terms)


def _equal_superscripts(spec) -> bool:
    return spec.alpha0 == spec.beta0 and all(
        spec.alphas[a] == spec.betas[a] for a in range(3))


def _eqsup_leg(spec):
    # Prefer the leg with the largest degree among those with a valid gate.
    best = None
    for i in sorted(range(3), key=lambda a: -spec.ks[a]):
        pp = spec.p_prime(i)
        if pp.is_integer and pp >= 0:
            best = i
            break
    return best


def _eqsup_st(spec) -> FormResult:
    if not _equal_superscripts(spec):
        raise UnsupportedFormError("EQSUP_ST needs alpha_a = beta_a and alpha0 = beta0")
    i = _eqsup_leg(spec)
    if i is None:
        raise UnsupportedFormError("EQSUP_ST needs a leg with nonnegative integer p'")
    j, k = _others(i)
    ks, als = spec.ks, spec.alphas
    d = [ks[a] % 2 for a in range(3)]
    p = spec.p(i).to_int()
    if p % 2:
        return FormResult(ExactReal.zero(), "EQSUP_ST", 0)
    q = (d[j] + d[k] - d[i]) // 2
    ai = als[i].as_fraction()
    # Front: 2 B(1/2, k_i+a_i+1) / (2^E (1/2)_{(k_j+d_j)/2} (1/2)_{(k_k+d_k)/2})
    e2 = sum(ks) + (sum(als, -spec.alpha0) + 2).to_int()
    front_q = Fraction(2) / (
        Fraction(2) ** e2
        * pochhammer(Fraction(1, 2), (ks[j] + d[j]) // 2)
        * pochhammer(Fraction(1, 2), (ks[k] + d[k]) // 2))
    front = beta_half(HalfInt.from_twice(1), ks[i] + als[i] + 1) * front_q
    sign0 = phase(spec.p_prime(i) + (ks[j] + d[j]) // 2 + (ks[k] + d[k]) // 2)
    legs = {}
    for a in (j, k):
        aa = als[a].as_fraction()
        legs[a] = [
            pochhammer(-ks[a] - aa, (ks[a] + d[a]) // 2 + z)
            * pochhammer(aa + Fraction(ks[a] + d[a] + 1, 2), (ks[a] - d[a]) // 2 - z)
            / (factorial(z) * factorial((ks[a] - d[a]) // 2 - z))
            for z in range((ks[a] - d[a]) // 2 + 1)
        ]
    hi = (ks[i] - d[i]) // 2
    acc = Fraction(0)
    terms = 0
    for zj, fj in enumerate(legs[j]):
        if not fj:
            continue
        for zk, fk in enumerate(legs[k]):
            if not fk:
                continue
            w0 = p // 2 - zj - zk
            if w0 < 0:
                continue
            fjk = fj * fk
            for zi in range(max(0, w0 - q), w0 + 1):
                c = binomial(q, w0 - zi)
                if not c:
                    continue
                t = (
                    fjk * c * binomial(hi + zi, zi)
                    * pochhammer(ai + hi + 1, zi)
                    / pochhammer(ai + ks[i] + Fraction(3, 2), zi))
                if not t:
                    continue
                if (zi + zj + zk) % 2:
                    t = -t
                acc += t
                terms += 1
    return FormResult(front * (sign0 * acc), "EQSUP_ST", terms)


def _eqsup_sr(spec) -> FormResult:
    if not _equal_superscripts(spec):
        raise UnsupportedFormError("EQSUP_SR needs alpha_a = beta_a and alpha0 = beta0")
    roles = None
    for b in (2, 1, 0):
        j, k = _others(b)
        if spec.alphas[b] == spec.alpha0 and spec.alphas[j] == spec.alphas[k]:
            roles = (j, k, b)
            break
    if roles is None:
        raise UnsupportedFormError(
            "EQSUP_SR needs two legs with equal superscripts and a third "
            "matching the weight")
    r1, r2, r3 = roles
    a0, a1 = spec.alpha0, spec.alphas[r1]
    if a1 < a0:
        raise UnsupportedFormError("EQSUP_SR needs the paired superscript >= alpha0")
    half = HalfInt.from_twice(1)
    k1, k2, k3 = spec.ks[r1], spec.ks[r2], spec.ks[r3]
    p1 = spec.p(r1)
    if not p1.is_integer:
        raise UnsupportedFormError("EQSUP_SR needs integer triangle quantities")
    if p1.to_int() % 2:
        return FormResult(ExactReal.zero(), "EQSUP_SR", 0)
    # p_1 even forces k1+k2+k3 and the remaining p_r even as well.
    m = (a1 - a0).to_int()
    sk2 = (k1 + k2 + k3) // 2
    try:
        front = (
            pow2((2 * a0 - 2).to_int()) * (2 * factorial(m))
            * gamma_half(a1 + half)
            / (gamma_half(half)
               * gamma_half(HalfInt.from_twice(k1 + k2 + k3) + a1 + half + 1)))
        for r in (r1, r2, r3):
            front = front * gamma_signed(_halve(spec.p(r)) + a0 + half)
        front = front * (
            gamma_half(a1 + 1 + k1) * gamma_half(a1 + 1 + k2) * gamma_half(a0 + 1 + k3)
            / (gamma_half(2 * a1 + 1 + k1) * gamma_half(2 * a1 + 1 + k2)
               * gamma_half(2 * a0 + 1 + k3)))
    except DomainError as exc:
        raise UnsupportedFormError("EQSUP_SR front factor is singular here") from exc
    h1 = p1.to_int() // 2
    h2 = spec.p(r2).to_int() // 2
    h3 = spec.p(r3).to_int() // 2
    two_a1 = (2 * a1).to_int()
    total = ExactReal.zero()
    terms = 0
    for u in range(max(0, m - h3), min(m, h1, h2, sk2 + two_a1) + 1):
        ga = a0 + half + u
        gb = a1 + half - u
        if (ga.is_integer and ga <= 0) or (gb.is_integer and gb <= 0):
            continue
        t = Fraction(
            factorial(sk2 + two_a1 - u),
            factorial(u) * factorial(m - u) * factorial(h1 - u) * factorial(h2 - u)
            * factorial(h3 - m + u))
        if u % 2:
            t = -t
        total = total + t / (gamma_signed(ga) * gamma_signed(gb))
        terms += 1
    return FormResult(front * total, "EQSUP_SR", terms)


_JACOBI_DISPATCH = {
    "SUM_B": _sum_b,
    "SUM_C": _sum_c,
    "SUM_D1": lambda s: _sum_d(s, 0),
    "SUM_D2": lambda s: _sum_d(s, 1),
    "SUM_D3": lambda s: _sum_d(s, 2),
    "DOUBLE_RA": _double_ra,
    "DOUBLE_RB": _double_rb,
    "EQSUP_ST": _eqsup_st,
    "EQSUP_SR": _eqsup_sr,
}


def _jacobi_applicable(spec, form: str) -> bool:
    if form in ("SUM_B", "SUM_C"):
        return True
    if form.startswith("SUM_D"):
        i = int(form[-1]) - 1
        pp, pd = spec.p_prime(i), spec.p_dprime(i)
        return pp.is_integer and pd.is_integer and pp >= 0 and pd >= 0
    if form == "DOUBLE_RA":
        return _resolve_ra_roles(spec) is not None
    if form == "DOUBLE_RB":
        return _resolve_rb_roles(spec) is not None
    if form == "EQSUP_ST":
        return _equal_superscripts(spec) and _eqsup_leg(spec) is not None
    if form == "EQSUP_SR":
        if not _equal_superscripts(spec):
            return False
        return any(
            spec.alphas[b] == spec.alpha0
            and spec.alphas[_others(b)[0]] == spec.alphas[_others(b)[1]]
            for b in range(3))
    raise UnsupportedFormError("unknown form tag %r" % (form,))


def term_count_bound(spec, form: str) -> int:
    """A-priori bound on the number of nonzero terms the form can sum."""
    if isinstance(spec, GegenbauerTripleSpec):
        return _geg_term_bound(spec, form)
    if form in ("SUM_B", "SUM_C"):
        return (spec.ks[0] + 1) * (spec.ks[1] + 1) * (spec.ks[2] + 1)
    if form.startswith("SUM_D"):
        i = int(form[-1]) - 1
        _, q = _require_leg_gate(spec, i, form)
        p = spec.p(i).to_int()
        if p < 0:
            return 0
        j, k = _others(i)
        return min(
            (p + 1) * (p + 2) * (p + 3) // 6,
            (q + 1) * (spec.ks[j] + 1) * (spec.ks[k] + 1),
            (q + 1) * (p + 1) * (p + 2) // 2)
    if form == "DOUBLE_RA":
        roles = _resolve_ra_roles(spec)
        if roles is None:
            raise UnsupportedFormError("DOUBLE_RA does not apply")
        i, j, k = roles
        p = spec.p(i).to_int()
        if p < 0:
            return 0
        return min((p + 1) * (p + 2) // 2, (spec.ks[j] + 1) * (spec.ks[k] + 1))
    if form == "DOUBLE_RB":
        roles = _resolve_rb_roles(spec)
        if roles is None:
            raise UnsupportedFormError("DOUBLE_RB does not apply")
        r1, r2, r3 = roles
        p1 = spec.p(r1).to_int()
        if p1 < 0:
            return 0
        width2 = spec.ks[r2] + spec.alphas[r2].to_int() + 1
        return min((p1 + 1) * (p1 + 2) // 2, width2 * (spec.ks[r3] + 1))
    if form == "EQSUP_ST":
        i = _eqsup_leg(spec)
        if i is None or not _equal_superscripts(spec):
            raise UnsupportedFormError("EQSUP_ST does not apply")
        j, k = _others(i)
        d = [spec.ks[a] % 2 for a in range(3)]
        q = (d[j] + d[k] - d[i]) // 2
        return (q + 1) * ((spec.ks[j] - d[j]) // 2 + 1) * ((spec.ks[k] - d[k]) // 2 + 1)
    if form == "EQSUP_SR":
        if not _jacobi_applicable(spec, "EQSUP_SR"):
            raise UnsupportedFormError("EQSUP_SR does not apply")
        for b in (2, 1, 0):
            j, k = _others(b)
            if spec.alphas[b] == spec.alpha0 and spec.alphas[j] == spec.alphas[k]:
                m = (spec.alphas[j] - spec.alpha0).to_int()
                p1, p2 = spec.p(j), spec.p(k)
                if not p1.is_integer or p1 < 0:
                    return 0
                return max(0, min(m, p1.to_int() // 2, p2.to_int() // 2) + 1)
    raise UnsupportedFormError("unknown form tag %r" % (form,))


def triple_jacobi_report(spec: TripleIntegralSpec, form: str = "AUTO") -> FormResult:
    """Evaluate the triple-Jacobi integral, reporting the form used and
    the number of nonzero terms summed."""
    if form != "AUTO":
        if form not in _JACOBI_DISPATCH:
            raise UnsupportedFormError("unknown form tag %r" % (form,))
        return _JACOBI_DISPATCH[form](spec)
    leg = vanishing_leg(spec)
    if leg is not None:
        return FormResult(ExactReal.zero(), "SUM_D%d" % (leg + 1), 0)
    best = None
    for tag in _AUTO_JACOBI:
        if not _jacobi_applicable(spec, tag):
            continue
        bound = term_count_bound(spec, tag)
        if best is None or bound < best[0]:
            best = (bound, tag)
    return _JACOBI_DISPATCH[best[1]](spec)


def triple_jacobi_integral(spec: TripleIntegralSpec, form: str = "AUTO") -> ExactReal:
    return triple_jacobi_report(spec, form).value


# --- Gegenbauer expansions --------------------------------------------

class GegenbauerTripleSpec:
    """Parameter set of a triple-Gegenbauer integral on [0, pi].

    Leg a carries degree l_a - lp_a and superscript lp_a + n/2 - 1; the
    weight is (sin t)^(lp1+lp2+lp3+n-2).  Requires n >= 3 and
    0 <= lp_a <= l_a.
    """

    __slots__ = ("n", "ls", "lps")

    def __init__(self, n, ls, lps):
        self.n = int(n)
        self.ls = tuple(int(l) for l in ls)
        self.lps = tuple(int(l) for l in lps)
        if self.n < 3:
            raise DomainError("dimension n must be at least 3")
        if len(self.ls) != 3 or len(self.lps) != 3:
            raise DomainError("exactly three legs required")
        for l, lp in zip(self.ls, self.lps):
            if not 0 <= lp <= l:
                raise DomainError("labels must satisfy 0 <= lp_a <= l_a")

    def __repr__(self):
        return "GegenbauerTripleSpec(%d, %s, %s)" % (self.n, self.ls, self.lps)

    def __eq__(self, other):
        if not isinstance(other, GegenbauerTripleSpec):
            return NotImplemented
        return (self.n, self.ls, self.lps) == (other.n, other.ls, other.lps)

    def __hash__(self):
        return hash((self.n, self.ls, self.lps))

    @property
    def deltas(self) -> tuple[int, int, int]:
        return tuple((l - lp) % 2 for l, lp in zip(self.ls, self.lps))

    @property
    def parity_allowed(self) -> bool:
        return sum(self.deltas) % 2 == 0

    def p(self, i: int) -> Fraction:
        j, k = _others(i)
        return Fraction(self.ls[j] + self.ls[k] - self.ls[i], 2)

    def p_prime(self, i: int) -> Fraction:
        j, k = _others(i)
        return Fraction(self.lps[j] + self.lps[k] - self.lps[i], 2)

    def to_jacobi_symmetric(self) -> tuple[TripleIntegralSpec, ExactReal]:
        """Equal-superscript Jacobi rewrite: returns (spec, scale) with
        integral(self) = scale * integral(spec)."""
        n = self.n
        a0 = HalfInt.from_twice(n - 3)
        alphas = [HalfInt.from_twice(2 * lp + n - 3) for lp in self.lps]
        ks = [l - lp for l, lp in zip(self.ls, self.lps)]
        jspec = TripleIntegralSpec(a0, a0, alphas, alphas, ks)
        scale = pow2(sum(self.lps) + n - 2)
        for l, lp in zip(self.ls, self.lps):
            scale = scale * (
                pochhammer(Fraction(2 * lp + n - 2), l - lp)
                / pochhammer(Fraction(2 * lp + n - 1, 2), l - lp))
        return jspec, scale

    def to_jacobi_quadratic(self) -> tuple[TripleIntegralSpec, ExactReal]:
        """Quadratic-argument Jacobi rewrite splitting off the degree
        parities: returns (spec, scale)."""
        n = self.n
        d = self.deltas
        half = HalfInt.from_twice(1)
        a0 = -half
        b0 = HalfInt.from_twice(n - 3)
        alphas = [HalfInt.from_twice(2 * dd - 1) for dd in d]
        betas = [HalfInt.from_twice(2 * lp + n - 3) for lp in self.lps]
        ks = [(l - lp - dd) // 2 for l, lp, dd in zip(self.ls, self.lps, d)]
        jspec = TripleIntegralSpec(a0, b0, alphas, betas, ks)
        scale = ExactReal.from_rational(phase(sum(ks)))
        for l, lp, dd in zip(self.ls, self.lps, d):
            h = (l - lp + dd) // 2
            scale = scale * (
                pochhammer(Fraction(2 * lp + n - 2, 2), h)
                / pochhammer(Fraction(1, 2), h))
        return jspec, scale


def _geg_zero(spec, tag: str) -> FormResult:
    return FormResult(ExactReal.zero(), tag, 0)


def _geg_a(spec) -> FormResult:
    if not spec.parity_allowed:
        return _geg_zero(spec, "GEG_A")
    n = spec.n
    u = HalfInt.from_twice(sum(spec.lps) + n - 1)
    legs = []
    for l, lp in zip(spec.ls, spec.lps):
        m = l - lp
        coeffs = []
        for z in range(m // 2 + 1):
            c = (
                Fraction(2) ** (m - 2 * z)
                * pochhammer(Fraction(2 * lp + n - 2, 2), m - z)
                / (factorial(z) * factorial(m - 2 * z)))
            coeffs.append(-c if z % 2 else c)
        legs.append(coeffs)
    total = ExactReal.zero()
    terms = 0
    m_all = sum(spec.ls) - sum(spec.lps)
    for z1, f1 in enumerate(legs[0]):
        if not f1:
            continue
        for z2, f2 in enumerate(legs[1]):
            if not f2:
                continue
            f12 = f1 * f2
            for z3, f3 in enumerate(legs[2]):
                if not f3:
                    continue
                # second argument is (1 + total x power)/2
                v = HalfInt.from_twice(1 + m_all - 2 * (z1 + z2 + z3))
                total = total + beta_half(u, v) * (f12 * f3)
                terms += 1
    return FormResult(total, "GEG_A", terms)


def _geg_ratio_factors(spec) -> ExactReal:
    n = spec.n
    out = ExactReal.one()
    for l, lp, dd in zip(spec.ls, spec.lps, spec.deltas):
        h = (l - lp + dd) // 2
        out = out * (
            pochhammer(Fraction(2 * lp + n - 2, 2), h) / pochhammer(Fraction(1, 2), h))
    return out


def _geg_c(spec, i: int) -> FormResult:
    tag = "GEG_C%d" % (i + 1)
    if not spec.parity_allowed:
        return _geg_zero(spec, tag)
    pp = spec.p_prime(i)
    if pp.denominator != 1 or pp < 0:
        raise UnsupportedFormError(
            "%s needs a nonnegative integer p'_%d" % (tag, i + 1))
    p = spec.p(i)
    if p.denominator != 1:
        raise UnsupportedFormError("%s needs integer triangle quantities" % (tag,))
    p = int(p)
    if p < 0:
        return _geg_zero(spec, tag)
    n = spec.n
    d = spec.deltas
    j, k = _others(i)
    q = (d[j] + d[k] - d[i]) // 2
    front = beta_half(
        HalfInt.from_twice(spec.ls[i] - spec.lps[i] + d[i] + 1),
        HalfInt.from_twice(spec.ls[i] + spec.lps[i] - d[i] + n - 1))
    legs = {}
    for a in (j, k):
        la, lpa, da = spec.ls[a], spec.lps[a], d[a]
        ha = (la - lpa - da) // 2
        legs[a] = [
            pochhammer(Fraction(-(la + lpa - da + n - 3), 2), z)
            * pochhammer(Fraction(la + lpa + da + n - 2, 2), ha - z)
            / (factorial(z) * factorial(ha - z))
            for z in range(ha + 1)
        ]
    li, lpi, di = spec.ls[i], spec.lps[i], d[i]
    hi = (li - lpi - di) // 2
    ladder = [Fraction(1)]
    for z in range(1, p + 1):
        ladder.append(
            ladder[-1]
            * (hi + z) * Fraction(li + lpi - di + n - 3 + 2 * z, 2)
            / (z * Fraction(2 * li + n - 2 + 2 * z, 2)))
    acc = Fraction(0)
    terms = 0
    for zj, fj in enumerate(legs[j]):
        if not fj:
            continue
        for zk, fk in enumerate(legs[k]):
            if not fk:
                continue
            w0 = p - zj - zk
            if w0 < 0:
                continue
            fjk = fj * fk
            for zi in range(max(0, w0 - q), w0 + 1):
                c = binomial(q, w0 - zi)
                if not c:
                    continue
                t = fjk * c * ladder[zi]
                if not t:
                    continue
                if (zi + zj + zk) % 2:
                    t = -t
                acc += t
                terms += 1
    sign0 = phase(pp)
    value = front * _geg_ratio_factors(spec) * (sign0 * acc)
    return FormResult(value, tag, terms)


def _geg_d(spec) -> FormResult:
    if not spec.parity_allowed:
        return _geg_zero(spec, "GEG_D")
    jspec, scale = spec.to_jacobi_symmetric()
    inner = _sum_b(jspec)
    return FormResult(scale * inner.value, "GEG_D", inner.terms)


def _resolve_geg_r(spec):
    for i in (2, 1, 0):
        j, k = _others(i)
        if spec.lps[i] == 0 and spec.lps[j] == spec.lps[k]:
            return i, j, k
    return None


def _geg_r(spec) -> FormResult:
    roles = _resolve_geg_r(spec)
    if roles is None:
        raise UnsupportedFormError(
            "GEG_R needs one zero subscript label and the other two equal")
    if not spec.parity_allowed:
        return _geg_zero(spec, "GEG_R")
    i3, i1, i2 = roles
    lp = spec.lps[i1]
    l1, l2, l3 = spec.ls[i1], spec.ls[i2], spec.ls[i3]
    n = spec.n
    if (l1 + l2 + l3) % 2:
        return _geg_zero(spec, "GEG_R")
    big_j = (l1 + l2 + l3) // 2
    if big_j < max(l1, l2, l3):
        return _geg_zero(spec, "GEG_R")
    front = ExactReal({2: Fraction(1)}) * factorial(lp)
    for la in (l1, l2, l3):
        front = front * gamma_half(HalfInt.from_twice(2 * (big_j - la) + n - 2))
    front = front / (
        pow2(2 * lp + n - 3)
        * gamma_half(HalfInt.from_twice(n - 2))
        * gamma_half(HalfInt.from_twice(2 * lp + n - 2))
        * gamma_half(HalfInt.from_twice(2 * big_j + n)))
    total = ExactReal.zero()
    terms = 0
    for u in range(max(0, lp + l3 - big_j), min(lp, big_j - l1, big_j - l2) + 1):
        t = Fraction(
            factorial(big_j + lp + n - 3 - u),
            factorial(u) * factorial(lp - u) * factorial(big_j - l1 - u)
            * factorial(big_j - l2 - u) * factorial(big_j - l3 - lp + u))
        if u % 2:
            t = -t
        term = t / (
            gamma_half(HalfInt.from_twice(n - 2 + 2 * u))
            * gamma_half(HalfInt.from_twice(2 * lp + n - 2 - 2 * u)))
        total = total + term
        terms += 1
    return FormResult(front * total, "GEG_R", terms)


def _nabla_sq(a: Fraction, b: Fraction, c: Fraction) -> ExactReal:
    # Gamma form of the squared triangle norm; arguments may sit off the
    # half-integer lattice individually as long as the combinations land on it.
    return (
        gamma_signed(as_halfint(a + b - c + 1))
        * gamma_signed(as_halfint(a - b + c + 1))
        * gamma_signed(as_halfint(a + b + c + 2))
        / gamma_signed(as_halfint(b + c - a + 1)))


def _geg_r_alt(spec) -> FormResult:
    """Recoupling-sum variant of GEG_R used for cross-checking."""
    roles = _resolve_geg_r(spec)
    if roles is None:
        raise UnsupportedFormError(
            "GEG_R needs one zero subscript label and the other two equal")
    if not spec.parity_allowed:
        return _geg_zero(spec, "GEG_R")
    i3, i1, i2 = roles
    lp = spec.lps[i1]
    l1, l2, l3 = spec.ls[i1], spec.ls[i2], spec.ls[i3]
    n = spec.n
    if (l1 + l2 + l3) % 2:
        return _geg_zero(spec, "GEG_R")
    glh = gamma_half(HalfInt.from_twice(2 * lp + n - 2))
    front = (
        ExactReal({2: Fraction(1)}) * factorial(lp)
        / (pow2(2 * lp + n - 3) * gamma_half(HalfInt.from_twice(n - 2))
           * glh * glh * glh))
    nq = Fraction(n, 4)
    total = ExactReal.zero()
    terms = 0
    for kk in range(abs(l1 - l2) + lp, l1 + l2 - lp + 1, 2):
        try:
            den1 = _nabla_sq(Fraction(lp, 2), Fraction(l3, 2) + nq - 1,
                             Fraction(kk, 2) + nq - 1)
        except DomainError:
            continue
        num = _nabla_sq(Fraction(l1 + lp + n, 2) - 2,
                        Fraction(l2, 2) + nq - 1, Fraction(kk, 2) + nq - 1)
        den2 = _nabla_sq(Fraction(l1 - lp, 2), Fraction(l2, 2) + nq - 1,
                         Fraction(kk, 2) + nq - 1)
        t = num / (den1 * den2) * Fraction(2 * kk + n - 2, 2)
        if ((l3 + lp - kk) // 2) % 2:
            t = -t
        total = total + t
        terms += 1
    return FormResult(front * total, "GEG_R", terms)


_GEG_DISPATCH = {
    "GEG_A": _geg_a,
    "GEG_C1": lambda s: _geg_c(s, 0),
    "GEG_C2": lambda s: _geg_c(s, 1),
    "GEG_C3": lambda s: _geg_c(s, 2),
    "GEG_D": _geg_d,
    "GEG_R": _geg_r,
}


def _geg_applicable(spec, form: str) -> bool:
    if form in ("GEG_A", "GEG_D"):
        return True
    if form.startswith("GEG_C"):
        i = int(form[-1]) - 1
        pp, p = spec.p_prime(i), spec.p(i)
        if not spec.parity_allowed:
            return True
        return pp.denominator == 1 and pp >= 0 and p.denominator == 1
    if form == "GEG_R":
        return _resolve_geg_r(spec) is not None
    raise UnsupportedFormError("unknown form tag %r" % (form,))


def _geg_term_bound(spec, form: str) -> int:
    if not spec.parity_allowed:
        return 0
    if form == "GEG_A":
        out = 1
        for l, lp, dd in zip(spec.ls, spec.lps, spec.deltas):
            out *= (l - lp - dd + 2) // 2
        return out
    if form == "GEG_D":
        out = 1
        for l, lp in zip(spec.ls, spec.lps):
            out *= l - lp + 1
        return out
    if form.startswith("GEG_C"):
        i = int(form[-1]) - 1
        if not _geg_applicable(spec, form):
            raise UnsupportedFormError("%s does not apply" % (form,))
        p = int(spec.p(i))
        if p < 0:
            return 0
        d = spec.deltas
        j, k = _others(i)
        q = (d[j] + d[k] - d[i]) // 2
        other = (spec.ls[j] - spec.lps[j] - d[j] + 2) * (
            spec.ls[k] - spec.lps[k] - d[k] + 2) // 4
        # (q+1)(p+1)(p-q+2) is even for q in {0, 1}, so divide last
        return min((q + 1) * (p + 1) * (p - q + 2) // 2, (q + 1) * other)
    if form == "GEG_R":
        roles = _resolve_geg_r(spec)
        if roles is None:
            raise UnsupportedFormError("GEG_R does not apply")
        i3, i1, i2 = roles
        if (sum(spec.ls)) % 2:
            return 0
        big_j = sum(spec.ls) // 2
        width = min(spec.lps[i1], big_j - spec.ls[i1], big_j - spec.ls[i2],
                    big_j - spec.ls[i3]) + 1
        return max(0, width)
    raise UnsupportedFormError("unknown form tag %r" % (form,))


def triple_gegenbauer_report(spec: GegenbauerTripleSpec, form: str = "AUTO") -> FormResult:
    """Evaluate the triple-Gegenbauer integral, reporting the form used
    and the number of nonzero terms summed."""
    if form != "AUTO":
        if form not in _GEG_DISPATCH:
            raise UnsupportedFormError("unknown form tag %r" % (form,))
        return _GEG_DISPATCH[form](spec)
    if not spec.parity_allowed:
        return _geg_zero(spec, "GEG_A")
    best = None
    for tag in _AUTO_GEG:
        if not _geg_applicable(spec, tag):
            continue
        bound = _geg_term_bound(spec, tag)
        if best is None or bound < best[0]:
            best = (bound, tag)
    return _GEG_DISPATCH[best[1]](spec)


def triple_gegenbauer_integral(spec: GegenbauerTripleSpec, form: str = "AUTO") -> ExactReal:
    return triple_gegenbauer_report(spec, form).value


def two_gegenbauer_integral(n: int, l1: int, lp: int, l3: int) -> ExactReal:
    """Integral over [0, pi] of (sin t)^(2 lp + n - 2)
    C_{l1-lp}^{lp+n/2-1}(cos t) C_{l3}^{n/2-1}(cos t) dt, in closed form."""
    n, l1, lp, l3 = int(n), int(l1), int(lp), int(l3)
    if n < 3:
        raise DomainError("dimension n must be at least 3")
    if not 0 <= lp <= l1 or l3 < 0:
        raise DomainError("labels must satisfy 0 <= lp <= l1 and l3 >= 0")
    if (l1 + lp + l3) % 2:
        return ExactReal.zero()
    jp = (l1 + lp + l3) // 2
    if jp - l1 < 0 or jp - l3 < 0:
        return ExactReal.zero()
    value = (
        ExactReal({2: Fraction(1)})
        * Fraction(factorial(lp) * factorial(l1 + lp + n - 3),
                   factorial(l1 - lp) * factorial(jp - l1) * factorial(jp - l3))
        * gamma_half(HalfInt.from_twice(2 * (jp - lp) + n - 2))
        / (pow2(2 * lp + n - 3)
           * gamma_half(HalfInt.from_twice(n - 2))
           * gamma_half(HalfInt.from_twice(2 * lp + n - 2))
           * gamma_half(HalfInt.from_twice(2 * jp + n))))
    if (jp - l1) % 2:
        value = -value
    return value
