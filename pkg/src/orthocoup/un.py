"""Class-two (mixed tensor) representation machinery of U(n).

The irreps [p, 0, ..., 0, -q] are the ones containing a scalar of the
subgroup U(n-1); their canonical chain states carry nested pairs
(p_(r), q_(r)).  Provided here: dimensions, the complex reduced matrix
elements of the elementary two-plane transformations, the rho-summed
squared norm of the extreme-weight 3j-symbols, the one-level
factorization step of the chain 3j-symbol, and the isoscalar factors of
the special SU(3) Clebsch-Gordan coefficients built from them.

Couplings of class-two irreps are generally multiplicity-bearing; only
rho-summed or rho-extreme quantities are closed-form here, so every
operation documents which of the two it returns.
"""

from __future__ import annotations

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
    phase,
    pochhammer,
)
from .orthopoly import JacobiSpec, jacobi_eval
from .su2 import su2_cg
from .triple_integrals import TripleIntegralSpec, triple_jacobi_integral

__all__ = [
    "UnChainLabel",
    "UnMixedIrrep",
    "su3_isofactor",
    "un_3j_step",
    "un_dim",
    "un_extreme_3j_norm",
    "un_reduced_mel",
    "un_reduced_mel_norm",
]


@dataclass(frozen=True)
class UnMixedIrrep:
    """Mixed tensor irrep [p, 0, ..., 0, -q] of U(n)."""

    n: int
    p: int
    q: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"group label n must be at least 2, got {self.n}")
        if self.p < 0 or self.q < 0:
            raise DomainError("mixed tensor labels p, q must be nonnegative")

    @property
    def dim(self) -> int:
        return un_dim(self.n, self.p, self.q)


@dataclass(frozen=True)
class UnChainLabel:
    """Canonical chain state of a class-two irrep: the nested pairs
    (p_(r), q_(r)) for r = n-1 .. 2 and the bottom label p_(1).

    The two ladders must descend; additionally p_(2) >= p_(1) >= -q_(2).
    The U(1) weights M_(r) = p_(r) - q_(r) - p_(r-1) + q_(r-1) are
    derived, with M_(1) = p_(1).
    """

    irrep: UnMixedIrrep
    pairs: tuple
    p1: int

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(pairs) != self.irrep.n - 2:
            raise DomainError(
                f"U({self.irrep.n}) chain needs {self.irrep.n - 2} nested pairs")
        ps = [self.irrep.p, *(a for a, _ in pairs)]
        qs = [self.irrep.q, *(b for _, b in pairs)]
        for name, seq in (("p", ps), ("q", qs)):
            for hi, lo in zip(seq, seq[1:]):
                if not hi >= lo >= 0:
                    raise DomainError(f"{name}-ladder must descend to 0")
        p2, q2 = pairs[-1] if pairs else (self.irrep.p, self.irrep.q)
        if not p2 >= self.p1 >= -q2:
            raise DomainError("bottom label must lie between p_(2) and -q_(2)")

    @property
    def weights(self) -> tuple:
        """U(1) weights (M_(1), ..., M_(n))."""
        ps = [*reversed([a for a, _ in self.pairs]), self.irrep.p]
        qs = [*reversed([b for _, b in self.pairs]), self.irrep.q]
        out = [self.p1]
        prev_p, prev_q = self.p1, 0
        for p, q in zip(ps, qs):
            out.append(p - q - prev_p + prev_q)
            prev_p, prev_q = p, q
        return tuple(out)


def un_dim(n: int, p: int, q: int) -> int:
    """Dimension of the mixed tensor irrep [p, 0, ..., 0, -q] of U(n)."""
    irrep = UnMixedIrrep(int(n), int(p), int(q))
    n, p, q = irrep.n, irrep.p, irrep.q
    val = ((p + q + n - 1) * pochhammer(p + 1, n - 2) * pochhammer(q + 1, n - 2)
           / (factorial(n - 1) * factorial(n - 2)))
    return int(val)


def _subgroup_dim(r: int, p: int, q: int) -> int:
    # U(1) sits at the chain bottom with a single signed weight, written
    # here as a pair with one member zero
    if r == 1:
        if p < 0 or q < 0 or min(p, q) != 0:
            raise DomainError(f"[{p}, -{q}] is not a U(1) label")
        return 1
    return un_dim(r, p, q)


def _mel_params(p: int, q: int, pprime: int, qprime: int):
    if not (0 <= pprime <= p and 0 <= qprime <= q):
        raise DomainError(
            f"subgroup labels need 0 <= {pprime} <= {p} and 0 <= {qprime} <= {q}")
    K = min(p - pprime, q - qprime)
    M = p - q - pprime + qprime
    Lp = pprime + qprime
    return K, M, Lp


def un_reduced_mel_norm(r: int, p: int, q: int, pprime: int,
                        qprime: int) -> ExactReal:
    """Exact positive factor of the reduced element: the combinatorial
    normalization times the dimension bracket [d'/((r-1) d)]^(1/2)."""
    r = int(r)
    if r < 2:
        raise DomainError(f"level must be at least 2, got {r}")
    K, M, Lp = _mel_params(p, q, pprime, qprime)
    norm = Fraction(
        (p + q + r - 1) * factorial(K) * factorial(p + q + r - 2 - K),
        factorial(abs(M) + K) * factorial(p + q + r - 2 - abs(M) - K))
    dims = Fraction(_subgroup_dim(r - 1, pprime, qprime),
                    (r - 1) * un_dim(r, p, q))
    return ExactReal.sqrt_rational(norm * dims)


def un_reduced_mel(r: int, p: int, q: int, pprime: int, qprime: int,
                   theta_r, prec: int = DEFAULT_PREC):
    """Reduced matrix element of the elementary U(r) transformation with
    angle theta_r between class-two chain labels; complex through the
    factor (i sin theta)^(p'+q'), which enforces the conjugation law
    conj(mel(p,q,p',q')) = (-1)^(p'+q') mel(q,p,q',p')."""
    K, M, Lp = _mel_params(p, q, pprime, qprime)
    pref = un_reduced_mel_norm(r, p, q, pprime, qprime)
    with mpmath.workprec(prec + 16):
        th = +mpmath.mpf(theta_r)
        jac = jacobi_eval(JacobiSpec(K, Lp + r - 2, abs(M)),
                          mpmath.cos(2 * th), prec=prec + 16)
        val = (pref.to_mpf(prec + 16) * mpmath.sin(th) ** Lp
               * mpmath.cos(th) ** abs(M) * jac)
        out = mpmath.mpc(val) * mpmath.mpc(0, 1) ** (Lp % 4)
    with mpmath.workprec(prec):
        return +out


def _pq_triple(pqs):
    pqs = tuple((int(p), int(q)) for p, q in pqs)
    if len(pqs) != 3:
        raise DomainError("three irreps required")
    for p, q in pqs:
        if p < 0 or q < 0:
            raise DomainError("mixed tensor labels must be nonnegative")
    return pqs


def un_extreme_3j_norm(n: int, pqs) -> ExactReal:
    """Sum over the multiplicity label of the squared extreme-weight
    3j-symbols of three class-two U(n) irreps; always nonnegative, and
    exactly zero unless p1+p2+p3 = q1+q2+q3.

    Only this rho-sum is closed-form; the individual symbols are not
    separately determined except in multiplicity-free cases.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"group label n must be at least 2, got {n}")
    pqs = _pq_triple(pqs)
    if sum(p for p, _ in pqs) != sum(q for _, q in pqs):
        return ExactReal.zero()
    mins = [min(p, q) for p, q in pqs]
    spec = TripleIntegralSpec(
        0, n - 2, [abs(p - q) for p, q in pqs], [n - 2] * 3, mins)
    val = triple_jacobi_integral(spec)
    scale = Fraction(factorial(n - 1) * factorial(n - 2) ** 2)
    for m in mins:
        scale /= pochhammer(m + 1, n - 2)
    return phase(sum(mins)) * scale * val


def un_3j_step(n: int, pqs, sub_pqs) -> ExactReal:
    """One-level factor of the chain 3j-symbol of three class-two U(n)
    irreps: what multiplies the U(n-1) symbol of the subgroup labels
    after the top level is integrated out.

    Exact zero unless both weight ladders conserve, i.e. p1+p2+p3 =
    q1+q2+q3 at the top and again among the subgroup labels.  With all
    subgroup labels zero this reproduces un_extreme_3j_norm.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"group label n must be at least 2, got {n}")
    pqs = _pq_triple(pqs)
    subs = _pq_triple(sub_pqs)
    if sum(p for p, _ in pqs) != sum(q for _, q in pqs):
        return ExactReal.zero()
    if sum(p for p, _ in subs) != sum(q for _, q in subs):
        return ExactReal.zero()
    params = [_mel_params(p, q, pp, qp)
              for (p, q), (pp, qp) in zip(pqs, subs)]
    spec = TripleIntegralSpec(
        0, n - 2, [abs(M) for _, M, _ in params],
        [Lp + n - 2 for _, _, Lp in params], [K for K, _, _ in params])
    val = triple_jacobi_integral(spec)
    pref = ExactReal.sqrt_rational(Fraction(1, n - 1))
    sign = sum(pp for pp, _ in subs) + sum(K for K, _, _ in params)
    for (p, q), (pp, qp), (K, M, _) in zip(pqs, subs, params):
        norm = Fraction(
            (p + q + n - 1) * factorial(K) * factorial(p + q + n - 2 - K),
            factorial(abs(M) + K) * factorial(p + q + n - 2 - abs(M) - K))
        pref = pref * ExactReal.sqrt_rational(
            norm * Fraction(_subgroup_dim(n - 1, pp, qp), un_dim(n, p, q)))
    return phase(sign) * pref * val


def su3_isofactor(aprime: int, bprime: int, adprime: int, bdprime: int,
                  a: int, b: int, iprime, zprime, idprime, zdprime,
                  i, z) -> ExactReal:
    """Isoscalar factor of the special SU(3) Clebsch-Gordan coefficient
    coupling (a'b') x (a''b'') to the multiplicity-extreme component of
    (ab), between isospin-z basis labels.

    The pair (i, z) fixes the U(2) labels p_(2) = i - z, q_(2) = i + z;
    both must come out nonnegative integers within their ladders.  Exact
    zero unless a' + a'' - a = b' + b'' - b and the isospin projections
    z' + z'' = z couple.
    """
    tops = _pq_triple([(aprime, bprime), (adprime, bdprime), (a, b)])
    (aprime, bprime), (adprime, bdprime), (a, b) = tops
    if aprime + adprime - a != bprime + bdprime - b:
        return ExactReal.zero()
    iz = [(as_halfint(iprime), as_halfint(zprime)),
          (as_halfint(idprime), as_halfint(zdprime)),
          (as_halfint(i), as_halfint(z))]
    pairs = []
    for (av, bv), (iv, zv) in zip(tops, iz):
        pp, qp = iv - zv, iv + zv
        if not (pp.is_integer and qp.is_integer):
            raise DomainError(f"isospin pair ({iv}, {zv}) is not a U(2) label")
        pp, qp = pp.to_int(), qp.to_int()
        if not (0 <= pp <= av and 0 <= qp <= bv):
            raise DomainError(
                f"isospin pair ({iv}, {zv}) outside the irrep ({av} {bv})")
        pairs.append((pp, qp))
    # rho-sum norm of the underlying 3j triple: the coupled irrep enters
    # conjugated, i.e. as (b, a)
    norm = un_extreme_3j_norm(3, [tops[0], tops[1], (b, a)])
    if norm.is_zero:
        return ExactReal.zero()
    cg = su2_cg(iz[0][0], iz[0][1], iz[1][0], iz[1][1], iz[2][0], iz[2][1])
    if cg.is_zero:
        return ExactReal.zero()
    params = [_mel_params(av, bv, pp, qp)
              for (av, bv), (pp, qp) in zip(tops, pairs)]
    spec = TripleIntegralSpec(
        0, 1, [abs(M) for _, M, _ in params],
        [Lp + 1 for _, _, Lp in params], [K for K, _, _ in params])
    val = triple_jacobi_integral(spec)
    if val.is_zero:
        return ExactReal.zero()
    twoi = [(2 * iv).to_int() for iv, _ in iz]
    bracket = ExactReal.sqrt_rational(Fraction(
        (twoi[0] + 1) * (twoi[1] + 1),
        (twoi[2] + 1) * un_dim(3, aprime, bprime) * un_dim(3, adprime, bdprime)))
    # the rho-sum norm of the auxiliary extreme symbols enters inverted;
    # un_extreme_3j_norm carries an extra (n-1)! = 2 relative to the
    # braced factor, hence the sqrt(2)
    denom = (norm / 2).sqrt().inverse()
    sign = ((iz[0][0] + iz[1][0] - iz[2][0]).to_int()
            + params[0][0] + params[1][0] - params[2][0])
    pref = ExactReal.from_rational(Fraction(1, 2)) * bracket * denom
    for (av, bv), (K, M, _) in zip(tops, params):
        norm_a = Fraction(
            (av + bv + 2) * factorial(K) * factorial(av + bv + 1 - K),
            factorial(abs(M) + K) * factorial(av + bv + 1 - abs(M) - K))
        pref = pref * ExactReal.sqrt_rational(norm_a)
    return phase(sign) * pref * cg * val
