"""Dev checks for sp4.py (not part of the test suite)."""
import random
import time
from fractions import Fraction

from orthocoup.exact import ExactReal, HalfInt, binomial, factorial, phase
from orthocoup.sp4 import (
    Sp4Irrep, Sp4SumArray, array_from_script, eleven_j, equal_rows_s_tilde,
    s_script, s_script_report, s_tilde, s_tilde_report, semistretched_isofactor,
)
from orthocoup.triple_integrals import UnsupportedFormError

rng = random.Random(20260815)


def tri(a, b, c):
    for combo in (a + b - c, a - b + c, b + c - a):
        if not combo.is_integer or combo.twice < 0:
            return False
    return True


def rand_labels(kmax_twice=4):
    while True:
        k1 = rng.randrange(0, kmax_twice + 1)
        l1 = rng.randrange(k1 % 2, k1 + 1, 2)
        k2 = rng.randrange(0, kmax_twice + 1)
        l2 = rng.randrange(k2 % 2, k2 + 1, 2)
        ir1 = Sp4Irrep(HalfInt.from_twice(k1), HalfInt.from_twice(l1))
        ir2 = Sp4Irrep(HalfInt.from_twice(k2), HalfInt.from_twice(l2))
        I1, J1 = rng.choice(ir1.su2_content())
        I2, J2 = rng.choice(ir2.su2_content())
        lt = rng.randrange(abs(l1 - l2), l1 + l2 + 1, 2)
        ir = Sp4Irrep(ir1.K + ir2.K, HalfInt.from_twice(lt))
        cand = [(I, J) for (I, J) in ir.su2_content()
                if tri(I1, I2, I) and tri(J1, J2, J)]
        if not cand:
            continue
        I, J = rng.choice(cand)
        return ir1, ir2, ir, (I1, J1), (I2, J2), (I, J)


def arr_of(ir1, ir2, ir, IJ1, IJ2, IJ):
    return Sp4SumArray((ir1.K, IJ1[0], IJ1[1], ir1.Lambda),
                       (ir2.K, IJ2[0], IJ2[1], ir2.Lambda),
                       (ir.K, IJ[0], IJ[1], ir.Lambda))


# 1. fully stretched columns: single term
for trial in range(200):
    rows1 = [HalfInt.from_twice(rng.randrange(0, 7)) for _ in range(3)]
    rows2 = [HalfInt.from_twice(rng.randrange(0, 7)) for _ in range(3)]
    tots = [a + b for a, b in zip(rows1, rows2)]
    s1 = rows1[0] + rows1[1] + rows1[2]
    s2 = rows2[0] + rows2[1] + rows2[2]
    k1c = [HalfInt.from_twice(t) for t in range(s1.twice % 2, s1.twice + 1, 2)]
    k2c = [HalfInt.from_twice(t) for t in range(s2.twice % 2, s2.twice + 1, 2)]
    K1 = rng.choice(k1c)
    K2 = rng.choice(k2c)
    arr = Sp4SumArray((K1, *rows1), (K2, *rows2), (K1 + K2, *tots))
    upper = (tots[0] + tots[1] + tots[2] - K1 - K2).to_int()
    low = (s1 - K1).to_int()
    want = binomial(upper, low)
    for x in rows1 + rows2:
        want *= factorial(x.twice)
    r = s_tilde_report(arr, "A")
    assert r.value == ExactReal.from_rational(want), (arr, want, r.value)
    assert r.terms <= 1
print("fully stretched arrays -> single-term binomial value  OK")

# 2. A = B = C on content-derived arrays
t0 = time.time()
nz = 0
for trial in range(300):
    labels = rand_labels()
    arr = arr_of(*labels)
    va = s_tilde(arr, "A")
    vb = s_tilde(arr, "B")
    vc = s_tilde(arr, "C")
    assert va == vb, (arr, "B")
    assert va == vc, (arr, "C")
    if not va.is_zero:
        nz += 1
print(f"s_tilde A=B=C on 300 content arrays ({nz} nonzero)  OK  "
      f"({time.time()-t0:.2f}s)")

# 3. shifted parametrization: correspondence + PA = PB(i)
t0 = time.time()
npb = 0
for trial in range(300):
    ir1, ir2, ir, IJ1, IJ2, IJ = rand_labels()
    arr = arr_of(ir1, ir2, ir, IJ1, IJ2, IJ)
    a0 = -ir2.K.twice - 1
    b0 = -ir1.K.twice - 1
    al = [-x.twice - 1 for x in arr.j2]
    be = [-x.twice - 1 for x in arr.j1]
    ks = [(arr.j1[a] + arr.j2[a] - arr.j[a]).to_int() for a in range(3)]
    va = s_script(a0, b0, al, be, ks, "PA")
    den = Fraction(1)
    for a in range(3):
        den *= (factorial(arr.j[a] - arr.j1[a] + arr.j2[a])
                * factorial(arr.j[a] + arr.j1[a] - arr.j2[a]))
    st = s_tilde(arr, "A")
    assert va * den == st, (arr, "PA correspondence")
    back = array_from_script(a0, b0, al, be, ks)
    assert back == arr
    for i in range(3):
        jx, kx = [a for a in range(3) if a != i]
        pp2 = be[jx] + be[kx] - be[i] - b0
        pd2 = al[jx] + al[kx] - al[i] - a0
        p = ks[jx] + ks[kx] - ks[i] + (pp2 + pd2) // 2
        if pp2 < 0 or pd2 < 0 or p < 0:
            continue
        vb = s_script(a0, b0, al, be, ks, f"PB{i+1}")
        assert vb == va, (arr, f"PB{i+1}")
        npb += 1
print(f"s_script PA == s_tilde/factorials on 300 specs, PB legs checked {npb}x"
      f"  OK  ({time.time()-t0:.2f}s)")

# 4. eleven_j invariances
t0 = time.time()
import itertools
for trial in range(60):
    ir1, ir2, ir, IJ1, IJ2, IJ = rand_labels()
    r1 = (ir1.Lambda, IJ1[0], IJ1[1])
    r2 = (ir2.Lambda, IJ2[0], IJ2[1])
    r3 = (ir.Lambda, IJ[0], IJ[1])
    base = eleven_j(ir1.K, ir2.K, r1, r2, r3)
    for perm in itertools.permutations(range(3)):
        v = eleven_j(ir1.K, ir2.K,
                     tuple(r1[a] for a in perm),
                     tuple(r2[a] for a in perm),
                     tuple(r3[a] for a in perm))
        assert v == base, (r1, r2, r3, perm)
    swap = eleven_j(ir2.K, ir1.K, r2, r1, r3)
    e = (IJ1[0] + IJ2[0] - IJ[0] + IJ1[1] + IJ2[1] - IJ[1]
         + ir1.Lambda + ir2.Lambda - ir.Lambda)
    assert swap == phase(e) * base, (r1, r2, r3, "row swap")
    vb = eleven_j(ir1.K, ir2.K, r1, r2, r3, form="B")
    vc = eleven_j(ir1.K, ir2.K, r1, r2, r3, form="C")
    assert vb == base and vc == base
print(f"eleven_j column-permutation invariance + row-swap phase on 60 specs  OK"
      f"  ({time.time()-t0:.2f}s)")

# 5. semistretched isofactor: <00> coupling and orthonormality
for trial in range(40):
    k1 = rng.randrange(0, 5)
    l1 = rng.randrange(k1 % 2, k1 + 1, 2)
    ir1 = Sp4Irrep(HalfInt.from_twice(k1), HalfInt.from_twice(l1))
    I1, J1 = rng.choice(ir1.su2_content())
    v = semistretched_isofactor(ir1, (0, 0), ir1, (I1, J1), (0, 0), (I1, J1))
    assert v * v == ExactReal.one(), (ir1, I1, J1, v)
print("coupling with <0 0> has unit magnitude  OK")

t0 = time.time()
checked = 0
irreps = []
for kt in range(0, 4):
    for lt in range(kt % 2, kt + 1, 2):
        irreps.append(Sp4Irrep(HalfInt.from_twice(kt), HalfInt.from_twice(lt)))
for ir1 in irreps:
    for ir2 in irreps:
        for lt in range(abs(ir1.Lambda.twice - ir2.Lambda.twice),
                        ir1.Lambda.twice + ir2.Lambda.twice + 1, 2):
            ir = Sp4Irrep(ir1.K + ir2.K, HalfInt.from_twice(lt))
            for I, J in ir.su2_content():
                tot = ExactReal.zero()
                for I1, J1 in ir1.su2_content():
                    for I2, J2 in ir2.su2_content():
                        if not (tri(I1, I2, I) and tri(J1, J2, J)):
                            continue
                        v = semistretched_isofactor(
                            ir1, ir2, ir, (I1, J1), (I2, J2), (I, J))
                        tot = tot + v * v
                assert tot == ExactReal.one(), (ir1, ir2, ir, I, J, tot)
                checked += 1
print(f"isofactor rows orthonormal for K_a <= 3/2 ({checked} rows)  OK"
      f"  ({time.time()-t0:.2f}s)")

# 6. equal-rows closed forms
t0 = time.time()
ngen = 0
for trial in range(300):
    K1 = HalfInt.from_twice(rng.randrange(0, 7))
    js = [HalfInt.from_twice(rng.randrange(0, 7)) for _ in range(3)]
    if not (js[0] + js[1] + js[2] - K1).is_integer:
        continue
    g = [HalfInt.from_twice(rng.randrange(0, 2 * x.twice + 1, 2)) for x in js]
    if (g[0] + g[1] + g[2] - K1 - K1).to_int() < 0:
        continue
    arr = Sp4SumArray((K1, *js), (K1, *js), (K1 + K1, *g))
    try:
        vg = equal_rows_s_tilde(arr, "GENERAL")
    except UnsupportedFormError:
        continue
    va = s_tilde(arr, "A")
    assert vg == va, (arr, vg, va)
    ngen += 1
print(f"equal-rows GENERAL == form A on {ngen} arrays  OK  ({time.time()-t0:.2f}s)")

t0 = time.time()
nsp = 0
for trial in range(300):
    b1 = HalfInt.from_twice(rng.randrange(0, 6))
    b3 = HalfInt.from_twice(rng.randrange(0, 7))
    if b3 < b1:
        continue
    js = (b1, b1, b3)
    K1 = b3
    if not (js[0] + js[1] + js[2] - K1).is_integer:
        continue
    g = [HalfInt.from_twice(rng.randrange(0, 2 * x.twice + 1, 2)) for x in js]
    if (g[0] + g[1] + g[2] - K1 - K1).to_int() < 0:
        continue
    arr = Sp4SumArray((K1, *js), (K1, *js), (K1 + K1, *g))
    vs = equal_rows_s_tilde(arr, "SPECIAL")
    va = s_tilde(arr, "A")
    assert vs == va, (arr, vs, va)
    try:
        vg = equal_rows_s_tilde(arr, "GENERAL")
        assert vg == va
    except UnsupportedFormError:
        pass
    nsp += 1
print(f"equal-rows SPECIAL == form A on {nsp} arrays  OK  ({time.time()-t0:.2f}s)")

# 7. values to freeze into tests
samples = [
    ((1, 1), (1, 0), (2, 1), ("1/2", "1/2"), ("1/2", "1/2"), (1, 1)),
    ((1, 1), (1, 1), (2, 1), (1, 1), ("1/2", "1/2"), ("3/2", "1/2")),
    (("3/2", "1/2"), (1, 1), ("5/2", "3/2"), ("3/2", "1/2"), (1, 1),
     ("5/2", "3/2")),
    ((2, 1), ("3/2", "3/2"), ("7/2", "3/2"), (1, 2), ("3/2", "3/2"), ("3/2", "5/2")),
]
for ir1, ir2, ir, a, b, c in samples:
    v = semistretched_isofactor(ir1, ir2, ir, a, b, c)
    print("  isf", ir1, ir2, ir, a, b, c, "=", v, "=", v.to_mpf(80))

arrs = [
    Sp4SumArray((1, 1, 1, 1), (1, 1, 1, 1), (2, 1, 1, 2)),
    Sp4SumArray(("3/2", 1, "1/2", 2), (1, "1/2", "1/2", 1),
                ("5/2", "3/2", 1, 3)),
    Sp4SumArray((2, "3/2", 1, "3/2"), ("3/2", 1, "1/2", 1),
                ("7/2", "3/2", "3/2", "5/2")),
]
for arr in arrs:
    print("  s_tilde", arr, "=", s_tilde(arr, "A"))

print("ALL SP4 DEV CHECKS PASSED")
