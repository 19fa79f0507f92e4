"""Dev validation for the U(n) class-two machinery (not shipped)."""

import itertools
import time
from fractions import Fraction

import mpmath

from orthocoup.exact import ExactReal, LatticeError
from orthocoup.oracle import quad_triple_jacobi
from orthocoup.son import isofactor_semicanonical
from orthocoup.triple_integrals import TripleIntegralSpec, triple_jacobi_integral
from orthocoup.un import (
    UnChainLabel,
    UnMixedIrrep,
    su3_isofactor,
    un_3j_step,
    un_dim,
    un_extreme_3j_norm,
    un_reduced_mel,
)

PREC = 180
TOL = mpmath.mpf("1e-30")

t0 = time.time()


def exact_eq(a, b):
    try:
        return (a - b).is_zero
    except LatticeError:
        return False


def weyl_dim(n, lam):
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


# 1. dimensions vs the Weyl product formula over [p+q, q^(n-2), 0]
assert un_dim(3, 1, 1) == 8
assert un_dim(4, 1, 0) == 4
for n in range(2, 6):
    for p in range(5):
        for q in range(5):
            lam = [p + q] + [q] * (n - 2) + [0]
            assert un_dim(n, p, q) == weyl_dim(n, lam), (n, p, q)
    assert un_dim(n, 0, 0) == 1
print("1. un_dim matches the Weyl formula, n<=5 p,q<=4")

# 1b. chain label validation and weights
lab = UnChainLabel(UnMixedIrrep(4, 2, 1), ((2, 1), (1, 0)), 0)
assert sum(lab.weights) == lab.irrep.p - lab.irrep.q
ok = False
try:
    UnChainLabel(UnMixedIrrep(3, 1, 1), ((1, 0),), -2)
except Exception:
    ok = True
assert ok
print("1b. chain labels validate; weights sum to p-q")

# 2. reduced elements: trivial value and the conjugation law
mpmath.mp.prec = PREC
for r in (2, 3, 4):
    v = un_reduced_mel(r, 0, 0, 0, 0, mpmath.mpf("0.7"), prec=PREC)
    assert abs(v - 1) < TOL, (r, v)

thetas = [mpmath.mpf(s) / 10 for s in (3, 7, 11, 14)]
cnt = 0
for r in (2, 3):
    for p, q, pp, qp in itertools.product(range(4), repeat=4):
        if pp > p or qp > q:
            continue
        if r == 2 and min(pp, qp) != 0:
            continue
        for th in thetas:
            lhs = mpmath.conj(un_reduced_mel(r, p, q, pp, qp, th, prec=PREC))
            rhs = (-1) ** (pp + qp) * un_reduced_mel(r, q, p, qp, pp, th,
                                                     prec=PREC)
            assert abs(lhs - rhs) < TOL, (r, p, q, pp, qp)
            cnt += 1
print(f"2. conjugation law holds pointwise ({cnt} checks)")


# 3. orthonormality in the top labels under the group measure slice
def mel_overlap(r, top1, top2, pp, qp):
    def f(th):
        t1 = un_reduced_mel(r, top1[0], top1[1], pp, qp, th, prec=PREC)
        t2 = un_reduced_mel(r, top2[0], top2[1], pp, qp, th, prec=PREC)
        meas = (2 * r - 2) * mpmath.sin(th) ** (2 * r - 3) * mpmath.cos(th)
        return t1 * mpmath.conj(t2) * meas
    return mpmath.quad(f, [0, mpmath.pi / 2], maxdegree=8)


cnt = 0
for r in (2, 3, 4):
    for pp, qp in [(0, 0), (1, 0), (1, 1), (0, 2)]:
        if r == 2 and min(pp, qp) != 0:
            continue
        subdim = 1 if r == 2 else un_dim(r - 1, pp, qp)
        tops = [(pp + d, qp + d) for d in range(3)]  # same M, varying K
        for t1, t2 in itertools.product(tops, repeat=2):
            got = mel_overlap(r, t1, t2, pp, qp)
            want = mpmath.mpf(subdim) / un_dim(r, *t1) if t1 == t2 else 0
            assert abs(got - want) < TOL, (r, t1, t2, pp, qp, got)
            cnt += 1
print(f"3. reduced elements orthonormal in the top labels ({cnt} overlaps)")

# 4. extreme 3j norm: gate, sign, quadrature
assert un_extreme_3j_norm(3, [(1, 0), (1, 0), (1, 0)]).is_zero
pos = zero = 0
for n in (2, 3, 4):
    rng = range(4)
    for pqs in itertools.product(itertools.product(rng, rng), repeat=3):
        if sum(p for p, _ in pqs) != sum(q for _, q in pqs):
            assert un_extreme_3j_norm(n, pqs).is_zero
            continue
        val = un_extreme_3j_norm(n, pqs)
        fval = val.to_mpf(256)
        assert fval >= -mpmath.mpf("1e-50"), (n, pqs, fval)
        if val.is_zero:
            zero += 1
        else:
            pos += 1
        spec = TripleIntegralSpec(0, n - 2, [abs(p - q) for p, q in pqs],
                                  [n - 2] * 3, [min(p, q) for p, q in pqs])
        qv = quad_triple_jacobi(spec, prec=256)
        iv = triple_jacobi_integral(spec).to_mpf(256)
        err = abs(qv - iv) / max(abs(iv), mpmath.mpf("1e-30"))
        assert err < mpmath.mpf("1e-25"), (n, pqs, err)
print(f"4. extreme norms nonnegative, quadrature-consistent "
      f"({pos} positive, {zero} structurally zero)")

# 5. with scalar subgroup labels the 3j step reproduces the extreme norm
cnt = 0
for n in (2, 3, 4):
    rng = range(3)
    for pqs in itertools.product(itertools.product(rng, rng), repeat=3):
        if sum(p for p, _ in pqs) != sum(q for _, q in pqs):
            continue
        a = un_3j_step(n, pqs, [(0, 0)] * 3)
        b = un_extreme_3j_norm(n, pqs)
        assert exact_eq(a, b), (n, pqs, a, b)
        cnt += 1
print(f"5. 3j step with scalar sublabels == extreme norm ({cnt} exact)")

# 6. 3j step against direct quadrature of the triple mel product
cases = [
    (3, [(1, 0), (0, 1), (1, 1)], [(0, 0), (0, 0), (0, 0)]),
    (3, [(1, 0), (0, 1), (1, 1)], [(1, 0), (0, 1), (0, 0)]),
    (3, [(1, 0), (0, 1), (1, 1)], [(1, 0), (0, 0), (0, 1)]),
    (3, [(1, 1), (1, 1), (1, 1)], [(1, 0), (0, 1), (0, 0)]),
    (3, [(1, 1), (1, 1), (1, 1)], [(1, 1), (1, 1), (1, 1)]),
    (3, [(2, 1), (1, 2), (2, 2)], [(1, 1), (1, 2), (2, 1)]),
    (3, [(2, 1), (1, 2), (2, 2)], [(1, 0), (0, 1), (1, 1)]),
    (4, [(1, 0), (0, 1), (1, 1)], [(1, 0), (0, 1), (0, 0)]),
    (4, [(1, 1), (1, 1), (2, 2)], [(1, 1), (1, 0), (0, 1)]),
    (4, [(2, 0), (0, 2), (2, 2)], [(1, 0), (0, 2), (1, 0)]),
]


def step_quad(n, pqs, subs):
    def f(th):
        out = mpmath.mpc((2 * n - 2) * mpmath.sin(th) ** (2 * n - 3)
                         * mpmath.cos(th))
        for (p, q), (pp, qp) in zip(pqs, subs):
            out *= un_reduced_mel(n, p, q, pp, qp, th, prec=PREC)
        return out
    return mpmath.quad(f, [0, mpmath.pi / 2], maxdegree=8)


for n, pqs, subs in cases:
    got = step_quad(n, pqs, subs)
    want = un_3j_step(n, pqs, subs).to_mpf(PREC)
    assert abs(mpmath.im(got)) < TOL, (n, pqs, subs)
    assert abs(mpmath.re(got) - want) < TOL, \
        (n, pqs, subs, mpmath.re(got), want)
print(f"6. 3j step == group-measure quadrature of mel triples ({len(cases)})")

assert un_3j_step(3, [(1, 0), (0, 1), (1, 1)], [(1, 0), (0, 0), (0, 0)]).is_zero
assert un_3j_step(3, [(1, 0), (1, 0), (1, 0)], [(0, 0), (0, 0), (0, 0)]).is_zero

# 7. lattice sanity of the step against the orthogonal-group semicanonical
#    isofactor sharing its integral: U(n) (p,q) -> SO(2n) l=p+q over
#    SO(2n-2) L'=p'+q', SO(2) M
cnt = 0
for n, pqs, subs in cases:
    step = un_3j_step(n, pqs, subs)
    ls = tuple(p + q for p, q in pqs)
    lps = tuple(pp + qp for pp, qp in subs)
    ms = tuple((p - q) - (pp - qp) for (p, q), (pp, qp) in zip(pqs, subs))
    try:
        iso = isofactor_semicanonical(2 * n, 2 * n - 2, ls, lps, ms)
    except Exception:
        continue
    if step.is_zero or iso.is_zero:
        continue
    ratio = (step / iso) * (step / iso)
    assert ratio.is_rational, (n, pqs, subs, ratio)
    cnt += 1
print(f"7. step/semicanonical-isofactor squared ratio rational ({cnt} cases)")

# 8. SU(3) isofactors: scalar case, row orthonormality, positivity convention
Fr = lambda twice: Fraction(twice, 2)
one = su3_isofactor(0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
assert exact_eq(one, ExactReal.one()), one


def u2_labels(a, b):
    return [(p2 + q2, q2 - p2)  # (2i, 2z)
            for p2 in range(a + 1) for q2 in range(b + 1)]


# rows are the coupled labels: normalization within one target irrep, and
# orthogonality across different target irreps at the same (z, i)
pairs_checked = rows_checked = cross_checked = 0
for (a1, b1), (a2, b2) in itertools.product(
        itertools.product(range(3), range(3)), repeat=2):
    cols = [(t1, t2) for t1 in u2_labels(a1, b1) for t2 in u2_labels(a2, b2)]
    diff = (a1 + a2) - (b1 + b2)
    targets = [(a, b) for a in range(a1 + a2 + 1) for b in range(b1 + b2 + 1)
               if a - b == diff and not un_extreme_3j_norm(
                   3, [(a1, b1), (a2, b2), (b, a)]).is_zero]
    if not targets:
        continue
    pairs_checked += 1
    vals = {}
    for a, b in targets:
        for (ti, tz) in u2_labels(a, b):
            for ci, (c1, c2) in enumerate(cols):
                if c1[1] + c2[1] != tz:
                    continue
                vals[(a, b), (ti, tz), ci] = su3_isofactor(
                    a1, b1, a2, b2, a, b, Fr(c1[0]), Fr(c1[1]),
                    Fr(c2[0]), Fr(c2[1]), Fr(ti), Fr(tz))
    for a, b in targets:
        for row in u2_labels(a, b):
            diag = ExactReal.zero()
            for ci in range(len(cols)):
                v = vals.get(((a, b), row, ci))
                if v is not None:
                    diag = diag + v * v
            assert exact_eq(diag, ExactReal.one()), \
                ((a1, b1), (a2, b2), (a, b), row, diag)
            rows_checked += 1
    for i1, t1 in enumerate(targets):
        for t2 in targets[i1 + 1:]:
            shared = set(u2_labels(*t1)) & set(u2_labels(*t2))
            for row in shared:
                acc = mpmath.mpf(0)
                for ci in range(len(cols)):
                    v1 = vals.get((t1, row, ci))
                    v2 = vals.get((t2, row, ci))
                    if v1 is not None and v2 is not None:
                        acc += (v1 * v2).to_mpf(PREC)
                assert abs(acc) < TOL, ((a1, b1), (a2, b2), t1, t2, row, acc)
                cross_checked += 1
print(f"8. SU(3) isofactor rows orthonormal ({pairs_checked} products, "
      f"{rows_checked} rows, {cross_checked} cross-irrep pairs)")

# 8b. positivity convention spot checks on stretched couplings
samples = [
    (1, 0, 0, 1, 0, 0, Fr(1), Fr(-1), Fr(1), Fr(1), Fr(0), Fr(0)),
    (1, 0, 0, 1, 1, 1, Fr(1), Fr(-1), Fr(1), Fr(1), Fr(2), Fr(0)),
    (1, 1, 1, 1, 2, 2, Fr(2), Fr(0), Fr(2), Fr(0), Fr(4), Fr(0)),
]
for args in samples:
    v = su3_isofactor(*args)
    print("   sample", args[:6], [str(x) for x in args[6:]], "->", v)

# 9. frozen sample values for the test suite
print("samples:")
print("  un_dim(3,2,1) =", un_dim(3, 2, 1))
print("  un_dim(5,3,2) =", un_dim(5, 3, 2))
print("  norm(3,[(1,0),(0,1),(1,1)]) =",
      un_extreme_3j_norm(3, [(1, 0), (0, 1), (1, 1)]))
print("  norm(4,[(1,1),(1,1),(2,2)]) =",
      un_extreme_3j_norm(4, [(1, 1), (1, 1), (2, 2)]))
print("  step(3,[(1,1)x3],[(1,0),(0,1),(0,0)]) =",
      un_3j_step(3, [(1, 1), (1, 1), (1, 1)], [(1, 0), (0, 1), (0, 0)]))
print("  step(4,[(1,1),(1,1),(2,2)],[(1,1),(1,0),(0,1)]) =",
      un_3j_step(4, [(1, 1), (1, 1), (2, 2)], [(1, 1), (1, 0), (0, 1)]))
print("  su3((1,0)(0,1)->(1,1); i'=1/2,z'=-1/2, i''=1/2,z''=1/2 -> i=1,z=0) =",
      su3_isofactor(1, 0, 0, 1, 1, 1, Fr(1), Fr(-1), Fr(1), Fr(1),
                    Fr(2), Fr(0)))
print("  su3((1,1)(1,1)->(1,1); i'=1,z'=0, i''=1/2,z''=1/2 -> i=1/2,z=1/2) =",
      su3_isofactor(1, 1, 1, 1, 1, 1, Fr(2), Fr(0), Fr(1), Fr(1),
                    Fr(1), Fr(1)))

print(f"elapsed {time.time() - t0:.1f}s")
print("ALL UN DEV CHECKS PASSED")
