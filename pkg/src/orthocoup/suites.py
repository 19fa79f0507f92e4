"""Seeded verification suites behind the command-line ``verify`` subcommand.

Each suite replays a deterministic stream of random queries and checks one
computational route against an independent one: the series forms against
each other, exact values against high-precision quadrature, integrals
against Racah-formula couplings, coefficient rows against orthonormality.
A fixed (count, seed) pair always reproduces the same stream, so published
pass/fail counts are repeatable.  The generators and the two cross-route
helpers are exported for reuse by the test bed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .exact import (DEFAULT_PREC, DomainError, ExactReal, HalfInt, factorial,
                    phase, pochhammer)
from .oracle import (quad_triple_gegenbauer, quad_triple_jacobi,
                     regge_equivalence_check)
from .son import duplication_isofactor, extreme_3j, isofactor_semicanonical
from .sp4 import Sp4Irrep, Sp4SumArray, eleven_j, s_tilde, semistretched_isofactor
from .su2 import su2_6j, su2_cg, wigner_3j
from .triple_integrals import (GEGENBAUER_FORMS, GegenbauerTripleSpec,
                               TripleIntegralSpec, UnsupportedFormError,
                               term_count_bound, triple_gegenbauer_report,
                               triple_jacobi_report, vanishing_leg)
from .un import su3_isofactor, un_dim, un_extreme_3j_norm, un_reduced_mel

__all__ = [
    "SUITES",
    "SuiteReport",
    "gegenbauer_recoupling_route",
    "random_gegenbauer_spec",
    "random_sp4_labels",
    "random_triangular_spec",
    "random_violating_spec",
    "run_suite",
    "sp4_array_of",
    "su2_coupling_product",
]

_JACOBI_CORE_FORMS = ("SUM_B", "SUM_C", "SUM_D1", "SUM_D2", "SUM_D3")
_HALF_MENU = tuple(HalfInt(x) for x in
                   ("0", "1/2", "1", "3/2", "2", "5/2", "3", "-1/2"))


@dataclass
class SuiteReport:
    """Pass/fail tally of one suite run, with the first few failure labels."""

    name: str
    passed: int = 0
    failed: int = 0
    notes: list[str] = field(default_factory=list)

    def check(self, ok: bool, label: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.notes) < 8:
                self.notes.append(label)

    @property
    def ok(self) -> bool:
        return self.failed == 0


# ---------------------------------------------------------------------------
# seeded generators

def random_triangular_spec(rng: random.Random, max_k: int = 6,
                           allow_half: bool = True,
                           cap: Fraction = Fraction(15, 2)) -> TripleIntegralSpec:
    """Random spec with k_a <= max_k, parameters <= cap, all legs allowed."""
    menu = _HALF_MENU if allow_half else (HalfInt(0), HalfInt(1))
    while True:
        a0 = rng.choice(menu)
        b0 = rng.choice(menu)
        alphas = [a0 + rng.randint(0, 4) for _ in range(3)]
        betas = [b0 + rng.randint(0, 4) for _ in range(3)]
        if max(a.as_fraction() for a in alphas) > cap:
            continue
        if max(b.as_fraction() for b in betas) > cap:
            continue
        ks = [rng.randint(0, max_k) for _ in range(3)]
        spec = TripleIntegralSpec(a0, b0, alphas, betas, ks)
        if spec.is_triangular:
            return spec


def random_violating_spec(rng: random.Random,
                          max_k: int = 5) -> TripleIntegralSpec:
    """Random spec with one degree pushed past its triangle gate."""
    while True:
        base = random_triangular_spec(rng, max_k=max_k)
        i = rng.randrange(3)
        ks = list(base.ks)
        lift = (base.p_prime(i) + base.p_dprime(i)).to_int()
        ks[i] = ks[(i + 1) % 3] + ks[(i + 2) % 3] + lift + rng.randint(1, 3)
        spec = TripleIntegralSpec(base.alpha0, base.beta0, base.alphas,
                                  base.betas, ks)
        if vanishing_leg(spec) is not None:
            return spec


def random_gegenbauer_spec(rng: random.Random, n_lo: int = 3, n_hi: int = 7,
                           max_l: int = 4) -> GegenbauerTripleSpec:
    while True:
        n = rng.randint(n_lo, n_hi)
        lps = [rng.randint(0, 3) for _ in range(3)]
        ls = [lp + rng.randint(0, 4) for lp in lps]
        if max(ls) <= max_l:
            return GegenbauerTripleSpec(n, ls, lps)


def _su2_triangle(a: HalfInt, b: HalfInt, c: HalfInt) -> bool:
    for combo in (a + b - c, a - b + c, b + c - a):
        if not combo.is_integer or combo.twice < 0:
            return False
    return True


def random_sp4_labels(rng: random.Random, max_twice_k: int = 4):
    """Random coupled irrep pair with a compatible (I, J) row triple.

    Returns (irrep1, irrep2, coupled, (I1, J1), (I2, J2), (I, J)) where the
    coupled label has K = K1 + K2 and all rows sit in the irrep contents.
    """
    while True:
        k1 = rng.randrange(0, max_twice_k + 1)
        l1 = rng.randrange(k1 % 2, k1 + 1, 2)
        k2 = rng.randrange(0, max_twice_k + 1)
        l2 = rng.randrange(k2 % 2, k2 + 1, 2)
        ir1 = Sp4Irrep(HalfInt.from_twice(k1), HalfInt.from_twice(l1))
        ir2 = Sp4Irrep(HalfInt.from_twice(k2), HalfInt.from_twice(l2))
        I1, J1 = rng.choice(ir1.su2_content())
        I2, J2 = rng.choice(ir2.su2_content())
        lt = rng.randrange(abs(l1 - l2), l1 + l2 + 1, 2)
        ir = Sp4Irrep(ir1.K + ir2.K, HalfInt.from_twice(lt))
        rows = [(I, J) for (I, J) in ir.su2_content()
                if _su2_triangle(I1, I2, I) and _su2_triangle(J1, J2, J)]
        if rows:
            return ir1, ir2, ir, (I1, J1), (I2, J2), rng.choice(rows)


def sp4_array_of(ir1, ir2, ir, IJ1, IJ2, IJ) -> Sp4SumArray:
    return Sp4SumArray((ir1.K, IJ1[0], IJ1[1], ir1.Lambda),
                       (ir2.K, IJ2[0], IJ2[1], ir2.Lambda),
                       (ir.K, IJ[0], IJ[1], ir.Lambda))


# ---------------------------------------------------------------------------
# cross-route helpers

def su2_coupling_product(spec: TripleIntegralSpec) -> ExactReal:
    """Clebsch-Gordan product equal to the integral when both superscript
    families are additive.

    Needs alpha0 = beta0 = 0, nonnegative integer parameters with
    alpha3 = alpha1 + alpha2 and beta3 = beta1 + beta2.  Writing
    l_a = k_a + (alpha_a + beta_a)/2, the integral factorizes into a
    squared-norm ratio times two coupling coefficients taken at the
    weights (alpha_a + beta_a)/2 and (beta_a - alpha_a)/2.
    """
    if not (spec.alpha0.twice == 0 and spec.beta0.twice == 0):
        raise DomainError("plain endpoint weights required")
    al = [a.as_fraction() for a in spec.alphas]
    be = [b.as_fraction() for b in spec.betas]
    if any(x.denominator != 1 or x < 0 for x in al + be):
        raise DomainError("nonnegative integer parameters required")
    if al[2] != al[0] + al[1] or be[2] != be[0] + be[1]:
        raise DomainError("third parameters must be the sums of the first two")
    ls, ms, ns = [], [], []
    norm = Fraction(1)
    for a, b, k in zip(al, be, spec.ks):
        a, b = int(a), int(b)
        ls.append(HalfInt(Fraction(2 * k + a + b, 2)))
        ms.append(HalfInt(Fraction(a + b, 2)))
        ns.append(HalfInt(Fraction(b - a, 2)))
        norm *= Fraction(factorial(k + a) * factorial(k + b),
                         factorial(k) * factorial(k + a + b))
    norm /= ls[2].twice + 1
    return (ExactReal.sqrt_rational(norm)
            * su2_cg(ls[0], ms[0], ls[1], ms[1], ls[2], ms[2])
            * su2_cg(ls[0], ns[0], ls[1], ns[1], ls[2], ns[2]))


def _tri_norm_sq(x: Fraction, y: Fraction, z: Fraction) -> Fraction:
    parts = (x + y - z, x - y + z, -x + y + z)
    num = 1
    for p in parts:
        if p.denominator != 1 or p < 0:
            raise DomainError(f"triangle ({x}, {y}, {z}) is not coupled")
    for p in parts:
        num *= factorial(int(p))
    return Fraction(num, factorial(int(x + y + z) + 1))


def gegenbauer_recoupling_route(n: int, ls, lprime: int) -> ExactReal:
    """Recoupling-coefficient value of the triple integral whose first two
    legs share the superscript lprime and whose third is superscript-free.

    Even n only: the value is a prefactor times a single 6j symbol divided
    by its four triangle norms.  Requires the degree triangle, an even
    degree sum, and lprime <= min(l1, l2).
    """
    l1, l2, l3 = (int(l) for l in ls)
    if n % 2:
        raise DomainError("recoupling route needs an even dimension label")
    if (l1 + l2 + l3) % 2 or not (abs(l1 - l2) <= l3 <= l1 + l2):
        raise DomainError("degrees must couple with an even sum")
    if not 0 <= lprime <= min(l1, l2):
        raise DomainError("shared superscript exceeds a degree")
    half = Fraction(1, 2)
    j = (l1 + l2 + l3) // 2
    a = Fraction(lprime) + half * n - 2
    b = half * (l1 + n) - 2
    c = half * l1
    d = half * l3 + Fraction(n, 4) - 1
    e = half * l2 + Fraction(n, 4) - 1
    num = factorial(lprime)
    for l in (l1, l2, l3):
        num *= factorial(j - l + n // 2 - 2)
    den = (2 ** (2 * lprime + n - 3) * factorial(n // 2 - 2)
           * factorial(lprime + n // 2 - 2) * factorial(j + n // 2 - 1))
    pref = ExactReal({2: Fraction(num, den)})
    norms = (_tri_norm_sq(a, b, c) * _tri_norm_sq(a, e, e)
             * _tri_norm_sq(d, b, e) * _tri_norm_sq(d, e, c))
    six = su2_6j(HalfInt(a), HalfInt(b), HalfInt(c),
                 HalfInt(d), HalfInt(e), HalfInt(e))
    return (phase(j + lprime + n) * pref * six
            * ExactReal.sqrt_rational(1 / norms))


# ---------------------------------------------------------------------------
# suites

def _rel_close(a, b, tol) -> bool:
    d = abs(a - b)
    m = max(abs(a), abs(b))
    return d <= tol if m < tol else d <= tol * m


def suite_cross_form(count: int, seed: int,
                     prec: int = DEFAULT_PREC) -> SuiteReport:
    """All five series forms and AUTO agree exactly; term counts obey bounds."""
    rng = random.Random(seed)
    rep = SuiteReport("cross-form")
    for _ in range(count):
        spec = random_triangular_spec(rng)
        vals = {}
        bounds_ok = True
        for form in _JACOBI_CORE_FORMS:
            res = triple_jacobi_report(spec, form)
            vals[form] = res.value
            bounds_ok &= res.terms <= term_count_bound(spec, form)
        first = vals["SUM_B"]
        auto = triple_jacobi_report(spec, "AUTO")
        rep.check(all(v == first for v in vals.values())
                  and auto.value == first and bounds_ok,
                  f"form disagreement on {spec}")
    return rep


def suite_quadrature(count: int, seed: int,
                     prec: int = DEFAULT_PREC) -> SuiteReport:
    """Closed form versus Gauss-Jacobi; gate-violating specs versus zero."""
    rng = random.Random(seed)
    rep = SuiteReport("quadrature")
    tol = mpmath.mpf(10) ** -25
    for trial in range(count):
        with mpmath.workprec(prec):
            if trial % 5 == 4:
                spec = random_violating_spec(rng)
                res = triple_jacobi_report(spec, "AUTO")
                quad = quad_triple_jacobi(spec, prec=prec)
                rep.check(res.value.is_zero and abs(quad) <= tol,
                          f"nonzero on gate-violating {spec}")
            else:
                spec = random_triangular_spec(rng)
                quad = quad_triple_jacobi(spec, prec=prec)
                val = triple_jacobi_report(spec, "AUTO").value.to_mpf(prec)
                rep.check(_rel_close(val, quad, tol),
                          f"quadrature mismatch on {spec}")
    return rep


def suite_su2_factor(count: int, seed: int,
                     prec: int = DEFAULT_PREC) -> SuiteReport:
    """Additive-superscript integrals equal their coupling-product route."""
    rng = random.Random(seed)
    rep = SuiteReport("su2-factor")
    for _ in range(count):
        al = [rng.randint(0, 4), rng.randint(0, 4)]
        be = [rng.randint(0, 4), rng.randint(0, 4)]
        spec = TripleIntegralSpec(
            0, 0, al + [al[0] + al[1]], be + [be[0] + be[1]],
            [rng.randint(0, 4) for _ in range(3)])
        lhs = triple_jacobi_report(spec, "AUTO").value
        rhs = su2_coupling_product(spec)
        rep.check(lhs == rhs, f"coupling-product mismatch on {spec}")
    return rep


def suite_gegenbauer(count: int, seed: int,
                     prec: int = DEFAULT_PREC) -> SuiteReport:
    """Angular forms agree, match quadrature, and reduce to one 6j symbol
    on the two-equal-superscripts family in even dimensions."""
    rng = random.Random(seed)
    rep = SuiteReport("gegenbauer")
    tol = mpmath.mpf(10) ** -25
    for trial in range(count):
        if trial % 4 == 3:
            n = rng.choice((4, 6))
            lp = rng.randint(0, 3)
            l1 = lp + rng.randint(0, 3)
            l2 = lp + rng.randint(0, 3)
            menu = [l3 for l3 in range(abs(l1 - l2), l1 + l2 + 1, 2)]
            l3 = rng.choice(menu)
            spec = GegenbauerTripleSpec(n, (l1, l2, l3), (lp, lp, 0))
            val = triple_gegenbauer_report(spec, "AUTO").value
            want = gegenbauer_recoupling_route(n, (l1, l2, l3), lp)
            rep.check(val == want, f"recoupling-route mismatch on {spec}")
            continue
        spec = random_gegenbauer_spec(rng)
        vals = []
        for form in GEGENBAUER_FORMS:
            try:
                vals.append(triple_gegenbauer_report(spec, form).value)
            except UnsupportedFormError:
                continue
        ok = bool(vals) and all(v == vals[0] for v in vals[1:])
        if ok:
            with mpmath.workprec(prec):
                quad = quad_triple_gegenbauer(spec.n, spec.ls, spec.lps,
                                              prec=prec)
                ok = _rel_close(vals[0].to_mpf(prec), quad, tol)
        rep.check(ok, f"angular-form mismatch on {spec}")
    return rep


def suite_sp4(count: int, seed: int, prec: int = DEFAULT_PREC) -> SuiteReport:
    """Triple-sum forms agree; 11j invariances hold; isofactor rows are unit."""
    rng = random.Random(seed)
    rep = SuiteReport("sp4")
    for _ in range(count):
        ir1, ir2, ir, ij1, ij2, ij = random_sp4_labels(rng)
        arr = sp4_array_of(ir1, ir2, ir, ij1, ij2, ij)
        va = s_tilde(arr, "A")
        rep.check(va == s_tilde(arr, "B") and va == s_tilde(arr, "C"),
                  f"triple-sum form mismatch on {arr}")

        r1 = (ir1.Lambda, ij1[0], ij1[1])
        r2 = (ir2.Lambda, ij2[0], ij2[1])
        r3 = (ir.Lambda, ij[0], ij[1])
        base = eleven_j(ir1.K, ir2.K, r1, r2, r3)
        perm = rng.choice(list(itertools.permutations(range(3)))[1:])
        permuted = eleven_j(ir1.K, ir2.K,
                            tuple(r1[i] for i in perm),
                            tuple(r2[i] for i in perm),
                            tuple(r3[i] for i in perm))
        rep.check(permuted == base, f"column permutation changed 11j on {arr}")
        swap = eleven_j(ir2.K, ir1.K, r2, r1, r3)
        sign = phase(ij1[0] + ij2[0] - ij[0] + ij1[1] + ij2[1] - ij[1]
                     + ir1.Lambda + ir2.Lambda - ir.Lambda)
        rep.check(swap == base * sign, f"row-swap phase wrong on {arr}")

        if ir1.K <= HalfInt(2) and ir2.K <= HalfInt(2):
            total = ExactReal.zero()
            for c1 in ir1.su2_content():
                for c2 in ir2.su2_content():
                    if _su2_triangle(c1[0], c2[0], ij[0]) and \
                       _su2_triangle(c1[1], c2[1], ij[1]):
                        v = semistretched_isofactor(ir1, ir2, ir, c1, c2, ij)
                        total = total + v * v
            rep.check(total == ExactReal.one(),
                      f"isofactor row not unit for {ir1}x{ir2}->{ir} at {ij}")
    return rep


def suite_son(count: int, seed: int, prec: int = DEFAULT_PREC) -> SuiteReport:
    """Extreme couplings match the Racah 3j; duplication identity is exact."""
    rng = random.Random(seed)
    rep = SuiteReport("son")
    for trial in range(count):
        l1, l2 = rng.randint(0, 6), rng.randint(0, 6)
        l3 = rng.randint(abs(l1 - l2), min(l1 + l2, 6))
        lhs = extreme_3j(3, l1, l2, l3)
        rhs = wigner_3j(l1, 0, l2, 0, l3, 0)
        rep.check(lhs == rhs, f"extreme 3j mismatch at l = {(l1, l2, l3)}")
        if trial % 3 == 2:
            n = rng.choice((4, 5))
            ls = [rng.randint(0, 2) for _ in range(3)]
            lps = [rng.randint(0, l) for l in ls]
            lhs = isofactor_semicanonical(2 * n - 2, n - 1,
                                          tuple(2 * l for l in ls), lps, lps)
            rhs = duplication_isofactor(n, ls, lps)
            rep.check(lhs == rhs,
                      f"duplication mismatch at n={n} ls={ls} lps={lps}")
    return rep


def _weyl_dim(n: int, p: int, q: int) -> int:
    lam = [p + q] + [q] * (n - 2) + [0]
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def suite_un(count: int, seed: int, prec: int = DEFAULT_PREC) -> SuiteReport:
    """Dimensions match the Weyl product; matrix elements conjugate
    correctly; extreme couplings match quadrature; isofactor rows are unit."""
    rng = random.Random(seed)
    rep = SuiteReport("un")
    tol = mpmath.mpf(10) ** -25
    for trial in range(count):
        n, p, q = rng.randint(2, 5), rng.randint(0, 4), rng.randint(0, 4)
        rep.check(un_dim(n, p, q) == _weyl_dim(n, p, q),
                  f"dimension mismatch at {(n, p, q)}")

        r, pv, qv = rng.randint(2, 3), rng.randint(0, 3), rng.randint(0, 3)
        pp = rng.randint(0, pv)
        qp = rng.randint(0, qv)
        if r == 2 and min(pp, qp):
            qp = 0
        theta = mpmath.mpf(rng.randint(1, 14)) / 10
        with mpmath.workprec(prec):
            mel = un_reduced_mel(r, pv, qv, pp, qp, theta, prec=prec)
            conj = un_reduced_mel(r, qv, pv, qp, pp, theta, prec=prec)
            rep.check(abs(mpmath.conj(mel) - conj) <= tol,
                      f"conjugation mismatch at {(r, pv, qv, pp, qp)}")

        if trial % 3 == 2:
            n = rng.randint(2, 4)
            pqs = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(2)]
            swing = sum(p - q for p, q in pqs)
            p3 = rng.randint(0, 3)
            q3 = p3 + swing
            if not 0 <= q3 <= 3:
                rep.check(True, "")
                continue
            pqs.append((p3, q3))
            norm = un_extreme_3j_norm(n, pqs)
            mins = [min(p, q) for p, q in pqs]
            spec = TripleIntegralSpec(0, n - 2, [abs(p - q) for p, q in pqs],
                                      [n - 2] * 3, mins)
            ok = not norm.to_mpf(prec) < 0
            if ok and not norm.is_zero:
                scale = Fraction(factorial(n - 1) * factorial(n - 2) ** 2)
                for m in mins:
                    scale /= pochhammer(Fraction(m + 1), n - 2)
                with mpmath.workprec(prec):
                    quad = quad_triple_jacobi(spec, prec=prec)
                    model = (phase(sum(mins)) * quad * scale.numerator
                             / scale.denominator)
                    ok = _rel_close(norm.to_mpf(prec), model, tol)
            rep.check(ok, f"extreme norm mismatch at n={n} {pqs}")

        if trial % 4 == 3:
            a1, b1 = rng.randint(0, 2), rng.randint(0, 2)
            a2, b2 = rng.randint(0, 2), rng.randint(0, 2)
            diff = a1 + a2 - b1 - b2
            targets = [(a, b) for a in range(a1 + a2 + 1)
                       for b in range(b1 + b2 + 1) if a - b == diff
                       and not un_extreme_3j_norm(
                           3, [(a1, b1), (a2, b2), (b, a)]).is_zero]
            if not targets:
                rep.check(True, "")
                continue
            a, b = rng.choice(targets)
            p2 = rng.randint(0, a)
            q2 = rng.randint(0, b)
            i3, z3 = Fraction(p2 + q2, 2), Fraction(q2 - p2, 2)
            total = ExactReal.zero()
            for i1, z1 in ((Fraction(p2 + q2, 2), Fraction(q2 - p2, 2))
                           for p2 in range(a1 + 1) for q2 in range(b1 + 1)):
                for i2, z2 in ((Fraction(p2 + q2, 2), Fraction(q2 - p2, 2))
                               for p2 in range(a2 + 1)
                               for q2 in range(b2 + 1)):
                    if z1 + z2 != z3:
                        continue
                    v = su3_isofactor(a1, b1, a2, b2, a, b,
                                      i1, z1, i2, z2, i3, z3)
                    total = total + v * v
            rep.check(total == ExactReal.one(),
                      f"isofactor row not unit for {(a1, b1, a2, b2, a, b, iz)}")
    return rep


def suite_regge(count: int, seed: int,
                prec: int = DEFAULT_PREC) -> SuiteReport:
    """Leg sums re-index into equivalent, Racah-matching coupling symbols."""
    rng = random.Random(seed)
    rep = SuiteReport("regge")
    for _ in range(count):
        spec = random_triangular_spec(rng, max_k=4, allow_half=False)
        ok = regge_equivalence_check(spec)
        rep.check(ok, f"re-indexing equivalence failed on {spec}")
    return rep


SUITES = {
    "cross-form": suite_cross_form,
    "quadrature": suite_quadrature,
    "su2-factor": suite_su2_factor,
    "gegenbauer": suite_gegenbauer,
    "sp4": suite_sp4,
    "son": suite_son,
    "un": suite_un,
    "regge": suite_regge,
}


def run_suite(name: str, count: int, seed: int,
              prec: int = DEFAULT_PREC) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}; choose from "
                          + ", ".join(sorted(SUITES))) from None
    return fn(count, seed, prec=prec)
