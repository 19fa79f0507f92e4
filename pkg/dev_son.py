"""Development checks for son.py.  Run: python3 dev_son.py"""

from fractions import Fraction
import itertools
import time

import mpmath

from orthocoup.exact import ExactReal, LatticeError, beta_half
from orthocoup.oracle import gauss_jacobi_rule, quad_group_3j
from orthocoup.orthopoly import (
    GegenbauerSpec, JacobiSpec, gegenbauer_eval, jacobi_eval)
from orthocoup.son import (
    cg_isofactor_canonical, cg_isofactor_semicanonical, duplication_isofactor,
    extreme_3j, isofactor_canonical, isofactor_semicanonical,
    reduced_mel_prefactor, so_dim, tree_mel_prefactor)
from orthocoup.su2 import wigner_3j

PREC = 220
TOL = mpmath.mpf(10) ** -45


def exact_eq(a: ExactReal, b: ExactReal) -> bool:
    try:
        return (a - b).is_zero
    except LatticeError:
        return False


def check(label, cond):
    if not cond:
        raise SystemExit(f"FAIL: {label}")
    print(f"ok: {label}")


# 1. dimensions: spot values and branching sums
spot = {(3, 2): 5, (4, 2): 9, (5, 2): 14, (6, 3): 50, (7, 1): 7, (2, 5): 1}
check("dim spot values", all(so_dim(n, l) == v for (n, l), v in spot.items()))
ok = True
for n in range(4, 9):
    for l in range(0, 7):
        if so_dim(n, l) != sum(so_dim(n - 1, lp) for lp in range(l + 1)):
            ok = False
for l in range(0, 7):
    # SO(3) branches to signed SO(2) weights, 2l+1 of them
    if so_dim(3, l) != 2 * l + 1:
        ok = False
check("dim branching sums", ok)

# 2. extreme_3j at n=3 equals the all-zero-weight SU(2) 3j, sign included
ok = True
cnt = 0
for l1 in range(7):
    for l2 in range(7):
        for l3 in range(7):
            a = extreme_3j(3, l1, l2, l3)
            b = wigner_3j(l1, 0, l2, 0, l3, 0)
            if not exact_eq(a, b):
                ok = False
            cnt += 1
check(f"extreme_3j(3) == su2 3j over {cnt} label sets", ok)
v = extreme_3j(3, 1, 1, 0)
check("extreme_3j(3,1,1,0) = -1/sqrt(3)",
      exact_eq(v * v, ExactReal.from_rational(Fraction(1, 3)))
      and v.to_mpf(64) < 0)

# 2b. phase systems: same magnitude, controlled sign
ok = True
for n in (4, 5, 6):
    for ls in itertools.product(range(4), repeat=3):
        a = extreme_3j(n, *ls, phase_system="PSI_J")
        b = extreme_3j(n, *ls, phase_system="GT_CONSISTENT")
        if a.is_zero != b.is_zero:
            ok = False
        elif not a.is_zero:
            J = sum(ls) // 2
            if not exact_eq(a, (b if J % 2 == 0 else -b)):
                ok = False
            if b.to_mpf(64) <= 0:
                ok = False  # GT extreme symbols are positive
check("extreme_3j phase systems agree up to (-1)^J", ok)

# 3. canonical reduced elements: orthonormal in the top label at fixed
# subgroup label, norm d'/d
t0 = time.time()
ok = True
for n in range(3, 8):
    binv = beta_half(Fraction(n - 1, 2), Fraction(1, 2)).inverse().to_mpf(PREC)
    for lp in range(0, 5):
        for l in range(lp, lp + 5):
            for lbar in range(lp, lp + 5):
                exp = Fraction(n - 3 + 2 * lp, 2)
                deg = l + lbar - 2 * lp
                nodes, wts = gauss_jacobi_rule(deg // 2 + 1, exp, exp, PREC)
                with mpmath.workprec(PREC + 32):
                    tot = mpmath.mpf(0)
                    s1 = GegenbauerSpec(l - lp, Fraction(2 * lp + n - 2, 2))
                    s2 = GegenbauerSpec(lbar - lp, Fraction(2 * lp + n - 2, 2))
                    for x, w in zip(nodes, wts):
                        tot += (w * gegenbauer_eval(s1, x, prec=PREC + 32)
                                * gegenbauer_eval(s2, x, prec=PREC + 32))
                    tot *= (reduced_mel_prefactor(n, l, lp).to_mpf(PREC + 32)
                            * reduced_mel_prefactor(n, lbar, lp).to_mpf(PREC + 32)
                            * binv)
                    want = (mpmath.mpf(so_dim(n - 1, lp)) / so_dim(n, l)
                            if l == lbar else mpmath.mpf(0))
                    if abs(tot - want) > TOL:
                        ok = False
                        print("mel ortho mismatch", n, l, lbar, lp, tot, want)
check(f"canonical reduced-element orthonormality ({time.time() - t0:.1f}s)", ok)

# 4. tree reduced elements: orthonormal in the top label at fixed branch
# labels, norm d'd''/d
t0 = time.time()
ok = True
for npr, ndp in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 3)]:
    n = npr + ndp
    binv2 = (beta_half(Fraction(npr, 2), Fraction(ndp, 2)).inverse() * 2
             ).to_mpf(PREC)
    for a in range(0, 3):
        for b in range(0, 3):
            al = Fraction(2 * b + ndp - 2, 2)
            be = Fraction(2 * a + npr - 2, 2)
            tops = [a + b + 2 * k for k in range(4)]
            for l in tops:
                for lbar in tops:
                    k1 = (l - a - b) // 2
                    k2 = (lbar - a - b) // 2
                    nodes, wts = gauss_jacobi_rule(
                        (k1 + k2) // 2 + 1, al, be, PREC)
                    with mpmath.workprec(PREC + 32):
                        tot = mpmath.mpf(0)
                        s1 = JacobiSpec(k1, al, be)
                        s2 = JacobiSpec(k2, al, be)
                        for x, w in zip(nodes, wts):
                            tot += (w * jacobi_eval(s1, x, prec=PREC + 32)
                                    * jacobi_eval(s2, x, prec=PREC + 32))
                        fr = -al - be
                        scale = mpmath.mpf(2) ** (
                            mpmath.mpf(fr.numerator) / fr.denominator)
                        tot *= (tree_mel_prefactor(n, npr, l, a, b)
                                .to_mpf(PREC + 32)
                                * tree_mel_prefactor(n, npr, lbar, a, b)
                                .to_mpf(PREC + 32)
                                * binv2 * scale / 4)
                        want = mpmath.mpf(0)
                        if l == lbar:
                            want = (mpmath.mpf(so_dim(npr, a) * so_dim(ndp, b))
                                    / so_dim(n, l))
                        if abs(tot - want) > TOL:
                            ok = False
                            print("tree ortho mismatch", n, npr,
                                  (a, b), l, lbar, tot, want)
check(f"tree reduced-element orthonormality ({time.time() - t0:.1f}s)", ok)

# 5. group-integral cross-check of the canonical isofactor, n = 4
t0 = time.time()
QPREC = 192
QTOL = mpmath.mpf(10) ** -40
ok = True
cnt = 0
for ls in itertools.product(range(3), repeat=3):
    e3 = extreme_3j(4, *ls)
    if e3.is_zero:
        continue
    for lps in itertools.product(*(range(l + 1) for l in ls)):
        isf = isofactor_canonical(4, ls, lps)
        for ms in itertools.product(*(range(-lp, lp + 1) for lp in lps)):
            if sum(ms) != 0:
                continue
            quad = quad_group_3j(4, ls, lps, ms, prec=QPREC)
            w3 = wigner_3j(lps[0], ms[0], lps[1], ms[1], lps[2], ms[2])
            model = (e3 * isf * w3).to_mpf(QPREC)
            if abs(quad - model) > QTOL:
                ok = False
                print("group-integral mismatch", ls, lps, ms, quad, model)
            cnt += 1
check(f"n=4 group-integral factorization, {cnt} weight sets"
      f" ({time.time() - t0:.1f}s)", ok)

# 5b. same for n = 5 on a smaller grid
t0 = time.time()
ok = True
cnt = 0
for ls in [(1, 1, 2), (1, 2, 1), (2, 2, 2), (2, 1, 1), (2, 2, 0)]:
    e3 = extreme_3j(5, *ls)
    if e3.is_zero:
        continue
    for l4s in itertools.product(*(range(l + 1) for l in ls)):
        isf5 = isofactor_canonical(5, ls, l4s)
        if isf5.is_zero:
            continue
        for l3s in itertools.product(*(range(l + 1) for l in l4s)):
            isf4 = isofactor_canonical(4, l4s, l3s)
            for ms in itertools.product(*(range(-lp, lp + 1) for lp in l3s)):
                if sum(ms) != 0:
                    continue
                quad = quad_group_3j(5, ls, tuple(zip(l4s, l3s)), ms,
                                     prec=QPREC)
                w3 = wigner_3j(l3s[0], ms[0], l3s[1], ms[1], l3s[2], ms[2])
                model = (e3 * isf5 * isf4 * w3).to_mpf(QPREC)
                if abs(quad - model) > QTOL:
                    ok = False
                    print("n=5 mismatch", ls, l4s, l3s, ms, quad, model)
                cnt += 1
check(f"n=5 group-integral factorization, {cnt} weight sets"
      f" ({time.time() - t0:.1f}s)", ok)

# 6. canonical CG-isofactor orthonormality, both phase systems
t0 = time.time()


def canon_rows(n, l1, l2, lp3):
    return [l3 for l3 in range(abs(l1 - l2), l1 + l2 + 1)
            if (l1 + l2 + l3) % 2 == 0 and l3 >= lp3]


ok = True
pairs_checked = 0
for n in (4, 5, 6):
    for ps in ("PSI_J", "GT_CONSISTENT"):
        for l1 in range(4):
            for l2 in range(4):
                for lp3 in range(4):
                    rows = canon_rows(n, l1, l2, lp3)
                    if not rows:
                        continue
                    cols = [(a, b) for a in range(l1 + 1)
                            for b in range(l2 + 1)
                            if abs(a - b) <= lp3 <= a + b
                            and (a + b + lp3) % 2 == 0]
                    vals = {}
                    for l3 in rows:
                        for c in cols:
                            vals[l3, c] = cg_isofactor_canonical(
                                n, (l1, l2, l3), (c[0], c[1], lp3),
                                phase_system=ps)
                    for i, r1 in enumerate(rows):
                        for r2 in rows[i:]:
                            with mpmath.workprec(PREC):
                                s = mpmath.mpf(0)
                                for c in cols:
                                    s += (vals[r1, c].to_mpf(PREC)
                                          * vals[r2, c].to_mpf(PREC))
                                want = mpmath.mpf(1 if r1 == r2 else 0)
                                if abs(s - want) > TOL:
                                    ok = False
                                    print("canon CG ortho", n, ps,
                                          (l1, l2, lp3), r1, r2, s)
                            pairs_checked += 1
check(f"canonical CG orthonormality, {pairs_checked} row pairs"
      f" ({time.time() - t0:.1f}s)", ok)

# 7. semicanonical CG-isofactor orthonormality, both phase systems
t0 = time.time()


def branch_cols(size, l):
    # admissible branch labels under one leg of top label l
    if size == 2:
        return [(m,) for m in range(-l, l + 1)]
    return [(x,) for x in range(0, l + 1)]


ok = True
pairs_checked = 0
for npr, ndp in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2)]:
    n = npr + ndp
    if n > 6:
        continue
    for ps in ("PSI_J", "GT_CONSISTENT"):
        for l1 in range(3):
            for l2 in range(3):
                for x3 in branch_cols(npr, 2):
                    for y3 in branch_cols(ndp, 2):
                        xm3, ym3 = abs(x3[0]), abs(y3[0])
                        rows = [l3 for l3 in range(abs(l1 - l2), l1 + l2 + 1)
                                if (l1 + l2 + l3) % 2 == 0
                                and l3 - xm3 - ym3 >= 0
                                and (l3 - xm3 - ym3) % 2 == 0]
                        if not rows:
                            continue
                        cols = []
                        for x1 in branch_cols(npr, l1):
                            for y1 in branch_cols(ndp, l1):
                                if (l1 - abs(x1[0]) - abs(y1[0])) < 0 or \
                                   (l1 - abs(x1[0]) - abs(y1[0])) % 2:
                                    continue
                                for x2 in branch_cols(npr, l2):
                                    if npr == 2 and x1[0] + x2[0] != x3[0]:
                                        continue
                                    for y2 in branch_cols(ndp, l2):
                                        if ndp == 2 and y1[0] + y2[0] != y3[0]:
                                            continue
                                        if (l2 - abs(x2[0]) - abs(y2[0])) < 0 or \
                                           (l2 - abs(x2[0]) - abs(y2[0])) % 2:
                                            continue
                                        cols.append((x1[0], x2[0], y1[0], y2[0]))
                        vals = {}
                        for l3 in rows:
                            for c in cols:
                                vals[l3, c] = cg_isofactor_semicanonical(
                                    n, npr, (l1, l2, l3),
                                    (c[0], c[1], x3[0]), (c[2], c[3], y3[0]),
                                    phase_system=ps)
                        for i, r1 in enumerate(rows):
                            for r2 in rows[i:]:
                                with mpmath.workprec(PREC):
                                    s = mpmath.mpf(0)
                                    for c in cols:
                                        s += (vals[r1, c].to_mpf(PREC)
                                              * vals[r2, c].to_mpf(PREC))
                                    want = mpmath.mpf(1 if r1 == r2 else 0)
                                    if abs(s - want) > TOL:
                                        ok = False
                                        print("semi CG ortho", n, npr, ps,
                                              (l1, l2), (x3, y3), r1, r2, s)
                                pairs_checked += 1
check(f"semicanonical CG orthonormality, {pairs_checked} row pairs"
      f" ({time.time() - t0:.1f}s)", ok)

# 8. duplication identity, exact (a PSI_J-frame statement)
t0 = time.time()
ok = True
cnt = 0
for n in (4, 5):
    for ls in itertools.product(range(3), repeat=3):
        for lps in itertools.product(*(range(l + 1) for l in ls)):
            lhs = isofactor_semicanonical(
                2 * n - 2, n - 1, tuple(2 * l for l in ls), lps, lps)
            rhs = duplication_isofactor(n, ls, lps)
            if not exact_eq(lhs, rhs):
                ok = False
                print("duplication mismatch", n, ls, lps,
                      lhs.to_mpf(64), rhs.to_mpf(64))
            cnt += 1
check(f"duplication identity exact, {cnt} cases ({time.time() - t0:.1f}s)", ok)

# 9. stretched isofactors are positive in both systems
ok = True
for n in (4, 5, 6):
    for ps in ("PSI_J", "GT_CONSISTENT"):
        for ls in itertools.product(range(1, 4), repeat=3):
            v = isofactor_canonical(n, ls, ls, phase_system=ps)
            if not v.is_zero and v.to_mpf(64) <= 0:
                ok = False
                print("stretched not positive", n, ps, ls)
check("stretched canonical isofactors positive", ok)

# 9b. the GT system differs from PSI_J by the documented CG multiplier,
# and by bare magnitude agreement everywhere
ok = True
for n in (4, 5):
    for ls in itertools.product(range(3), repeat=3):
        for lps in itertools.product(*(range(l + 1) for l in ls)):
            a = cg_isofactor_canonical(n, ls, lps, phase_system="PSI_J")
            b = cg_isofactor_canonical(n, ls, lps,
                                       phase_system="GT_CONSISTENT")
            if a.is_zero != b.is_zero:
                ok = False
                continue
            if a.is_zero:
                continue
            e = (ls[0] + ls[1] - ls[2] - lps[0] - lps[1] + lps[2])
            if e % 2:
                ok = False
                continue
            flip = 1 if (e // 2) % 2 == 0 else -1
            if not exact_eq(b, flip * a):
                ok = False
                print("GT multiplier mismatch", n, ls, lps)
check("GT canonical CG = PSI_J CG times documented sign", ok)

ok = True
for args in [(4, 2, (1, 1, 2), (1, -1, 0), (0, 0, 0)),
             (5, 2, (1, 1, 2), (1, -1, 0), (0, 0, 2)),
             (5, 3, (2, 1, 1), (1, 1, 0), (1, 0, 1)),
             (6, 3, (2, 2, 2), (1, 1, 2), (1, 1, 0))]:
    a = isofactor_semicanonical(*args, phase_system="PSI_J")
    b = isofactor_semicanonical(*args, phase_system="GT_CONSISTENT")
    if a.is_zero != b.is_zero or (
            not a.is_zero and not (exact_eq(a, b) or exact_eq(a, -b))):
        ok = False
        print("semicanonical |PSI_J| != |GT|", args)
check("semicanonical phase systems agree in magnitude", ok)

# 10. frozen samples for the test suite
print("\nsamples:")
for tag, val in [
    ("extreme_3j(4,1,1,2)", extreme_3j(4, 1, 1, 2)),
    ("extreme_3j(5,2,2,2)", extreme_3j(5, 2, 2, 2)),
    ("extreme_3j(6,1,2,3)", extreme_3j(6, 1, 2, 3)),
    ("isf_can(4,(1,1,2),(1,1,2))", isofactor_canonical(4, (1, 1, 2), (1, 1, 2))),
    ("isf_can(4,(1,1,2),(1,1,0))", isofactor_canonical(4, (1, 1, 2), (1, 1, 0))),
    ("isf_can(4,(2,2,2),(1,1,2))", isofactor_canonical(4, (2, 2, 2), (1, 1, 2))),
    ("isf_can(5,(1,1,2),(1,1,2))", isofactor_canonical(5, (1, 1, 2), (1, 1, 2))),
    ("isf_can(6,(2,2,2),(2,1,1))", isofactor_canonical(6, (2, 2, 2), (2, 1, 1))),
    ("isf_semi(4,2,(1,1,2),(1,-1,0),(0,0,0))",
     isofactor_semicanonical(4, 2, (1, 1, 2), (1, -1, 0), (0, 0, 0))),
    ("isf_semi(5,2,(1,1,2),(1,-1,0),(0,0,0))",
     isofactor_semicanonical(5, 2, (1, 1, 2), (1, -1, 0), (0, 0, 0))),
    ("isf_semi(6,3,(2,2,2),(1,1,2),(1,1,0))",
     isofactor_semicanonical(6, 3, (2, 2, 2), (1, 1, 2), (1, 1, 0))),
    ("dup(4,(1,1,2),(1,1,2))", duplication_isofactor(4, (1, 1, 2), (1, 1, 2))),
    ("dup(5,(1,1,2),(1,1,0))", duplication_isofactor(5, (1, 1, 2), (1, 1, 0))),
    ("cg_can(4,(2,2,2),(2,2,2))",
     cg_isofactor_canonical(4, (2, 2, 2), (2, 2, 2))),
]:
    print(f"  {tag} = {val}  ~ {mpmath.nstr(val.to_mpf(120), 25)}")

print("\nALL SON DEV CHECKS PASSED")
