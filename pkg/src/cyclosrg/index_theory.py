"""Arithmetic side of the construction: no field is ever enumerated here.

Given p, p1 and m this module computes the index profile (f, w, the
Stickelberger exponent r, s = f - 2r), decides strong regularity of
Cay(F_q, D) from the two arithmetic conditions, predicts the restricted
eigenvalues and srg parameters, and searches Z/p1Z for the cyclic
difference set that accompanies every positive instance.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np
from sympy import isprime, n_order, totient

from .cyclotomy import coset_decomposition
from .errors import (
    InconsistentSpectrumError,
    NoneFoundError,
    NotCoprimeError,
    ParityViolationError,
)


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise NotCoprimeError(f"gcd({a}, {n}) != 1")
    if n == 1:
        return 1
    return int(n_order(a, n))


def _phi_prime_power(p1: int, m: int) -> int:
    return (p1 - 1) * p1 ** (m - 1)


@dataclass(frozen=True)
class HypothesisCheck:
    passed: bool
    reasons: tuple[str, ...] = ()
    f: int | None = None
    w: int | None = None
    f_tilde: int | None = None


def check_hypotheses(p: int, p1: int, m: int) -> HypothesisCheck:
    """Standing assumptions: gcd(p(p-1), N) = 1, -1 not in <p> mod N, w | p1 - 1."""
    reasons = []
    if not isprime(p):
        reasons.append(f"p = {p} is not prime")
    if not isprime(p1) or p1 == 2:
        reasons.append(f"p1 = {p1} is not an odd prime")
    if m < 1:
        reasons.append("m must be >= 1")
    if p == p1:
        reasons.append("p must differ from p1")
    if reasons:
        return HypothesisCheck(False, tuple(reasons))

    N = p1**m
    if gcd(p * (p - 1), N) != 1:
        return HypothesisCheck(False, (f"gcd(p(p-1), N) = gcd({p * (p - 1)}, {N}) != 1",))
    f = multiplicative_order(p, N)
    w = _phi_prime_power(p1, m) // f
    f_tilde = multiplicative_order(p, p1)
    # (Z/NZ)^* is cyclic with -1 its only involution: -1 in <p> iff f is even
    # and p^(f/2) = -1.
    if f % 2 == 0 and pow(p, f // 2, N) == N - 1:
        reasons.append(f"-1 lies in <{p}> mod {N}")
    if (p1 - 1) % w:
        reasons.append(f"w = {w} does not divide p1 - 1 = {p1 - 1}")
    if reasons:
        return HypothesisCheck(False, tuple(reasons), f, w, f_tilde)
    if w % 2:
        raise AssertionError(f"internal: odd index w = {w} although -1 is not in <p>")
    return HypothesisCheck(True, (), f, w, f_tilde)


def stickelberger_b(p: int, p1: int) -> tuple[list[int], int]:
    """b_j = (sum of the least positive residues in coset j) / p1, and b = min b_j."""
    dec = coset_decomposition(p, p1)
    b_list = []
    for cs in dec.cosets:
        total = sum(cs)
        if total % p1:
            raise ArithmeticError(f"coset sum {total} not divisible by {p1}")
        b_list.append(total // p1)
    return b_list, min(b_list)


@dataclass(frozen=True)
class IndexParameters:
    p: int
    p1: int
    m: int
    N: int
    f: int
    w: int
    f_tilde: int
    b_list: tuple[int, ...]
    b: int
    r: int
    s: int

    @property
    def q(self) -> int:
        return self.p**self.f


def compute_r(f: int, f_tilde: int, b: int) -> tuple[int, int]:
    if (f - f_tilde) % 2:
        raise ParityViolationError(f"f - f_tilde = {f - f_tilde} is odd")
    r = (f - f_tilde) // 2 + b
    return r, f - 2 * r


def index_parameters(p: int, p1: int, m: int) -> IndexParameters:
    hyp = check_hypotheses(p, p1, m)
    if not hyp.passed:
        raise ValueError("; ".join(hyp.reasons))
    b_list, b = stickelberger_b(p, p1)
    r, s = compute_r(hyp.f, hyp.f_tilde, b)
    if s < 0:
        raise ArithmeticError(f"negative s = {s}")
    return IndexParameters(p, p1, m, p1**m, hyp.f, hyp.w, hyp.f_tilde, tuple(b_list), b, r, s)


def check_cond2(p: int, p1: int, w: int, s: int) -> list[int]:
    """All 1 <= ell <= w-1 with p^s = (ell/w)(p1 - (p1-1) ell / w), exactly."""
    target = Fraction(p**s)
    return [
        ell
        for ell in range(1, w)
        if Fraction(ell, w) * (p1 - Fraction((p1 - 1) * ell, w)) == target
    ]


def congruence_sign(p: int, p1: int, w: int, exponent: int, ell: int) -> int | None:
    """Sign eps with p^exponent (1-p1) ell / w = eps (mod p1), or None."""
    val = (1 - p1) // w * pow(p, exponent, p1) * ell % p1
    if val == 1:
        return 1
    if val == p1 - 1:
        return -1
    return None


def check_cond3(p: int, p1: int, w: int, b: int, ell: int) -> int | None:
    """The congruence with exponent b; m-free, sign only meaningful up to +-."""
    return congruence_sign(p, p1, w, b, ell)


def check_cond1(p: int, p1: int, w: int, r: int, ell: int) -> int | None:
    """The congruence with exponent r; fixes the sign epsilon."""
    return congruence_sign(p, p1, w, r, ell)


def spectrum_multiplicities(v: int, k: int, theta1: int, theta2: int) -> tuple[int, int]:
    """Multiplicities of theta1, theta2 from trace(A) = 0 and trace(A^2) = vk."""
    if theta1 == theta2:
        raise InconsistentSpectrumError("eigenvalues must be distinct")
    num = -k - (v - 1) * theta2
    den = theta1 - theta2
    if num % den:
        raise InconsistentSpectrumError(f"multiplicity {num}/{den} is not integral")
    m1 = num // den
    m2 = v - 1 - m1
    if m1 < 0 or m2 < 0:
        raise InconsistentSpectrumError(f"negative multiplicity ({m1}, {m2})")
    if k * k + m1 * theta1 * theta1 + m2 * theta2 * theta2 != v * k:
        raise InconsistentSpectrumError("trace(A^2) != vk")
    return m1, m2


def srg_params_from_spectrum(v: int, k: int, theta1: int, theta2: int) -> tuple[int, int]:
    spectrum_multiplicities(v, k, theta1, theta2)
    lam = k + theta1 + theta2 + theta1 * theta2
    mu = k + theta1 * theta2
    return lam, mu


def is_imprimitive(v: int, k: int, lam: int, mu: int) -> bool:
    """Disjoint union of cliques (mu = 0) or its complement (mu = k)."""
    return mu == 0 or mu == k


class Verdict(str, enum.Enum):
    SRG = "srg"
    NOT_SRG = "not_srg"
    HYPOTHESIS_FAILED = "hypothesis_failed"


@dataclass(frozen=True)
class SrgPrediction:
    p: int
    p1: int
    m: int
    verdict: Verdict
    params: IndexParameters | None = None
    ell: int | None = None
    epsilon: int | None = None
    eigenvalue_base: int | None = None
    eigenvalues: tuple[int, int] | None = None
    srg_params: tuple[int, int, int, int] | None = None
    imprimitive: bool = False
    candidate_ells: tuple[int, ...] = ()
    failure_reason: str | None = None
    hypothesis: HypothesisCheck | None = field(default=None, compare=False)

    @property
    def ell_unique(self) -> bool:
        return len(self.candidate_ells) <= 1


def predict(p: int, p1: int, m: int) -> SrgPrediction:
    hyp = check_hypotheses(p, p1, m)
    if not hyp.passed:
        return SrgPrediction(
            p, p1, m, Verdict.HYPOTHESIS_FAILED,
            failure_reason="; ".join(hyp.reasons), hypothesis=hyp,
        )
    ip = index_parameters(p, p1, m)
    ells = check_cond2(p, p1, ip.w, ip.s)
    if not ells:
        return SrgPrediction(
            p, p1, m, Verdict.NOT_SRG, params=ip,
            failure_reason=f"no ell in [1, {ip.w - 1}] satisfies p^s = (ell/w)(p1 - (p1-1)ell/w)",
            hypothesis=hyp,
        )
    passing = [(ell, eps) for ell in ells if (eps := check_cond1(p, p1, ip.w, ip.r, ell))]
    if not passing:
        return SrgPrediction(
            p, p1, m, Verdict.NOT_SRG, params=ip, candidate_ells=tuple(ells),
            failure_reason=f"congruence p^r(1-p1)ell/w = +-1 (mod p1) fails for ell in {ells}",
            hypothesis=hyp,
        )
    ell, eps = passing[0]
    pr = p**ip.r
    numer = -1 + (1 - p1) // ip.w * pr * ell * eps
    if numer % p1:
        raise AssertionError(f"internal: eigenvalue numerator {numer} not divisible by {p1}")
    x = numer // p1
    theta = (x, x + eps * pr)
    v = ip.q
    k = (v - 1) // p1
    lam, mu = srg_params_from_spectrum(v, k, *theta)
    return SrgPrediction(
        p, p1, m, Verdict.SRG, params=ip, ell=ell, epsilon=eps, eigenvalue_base=x,
        eigenvalues=theta, srg_params=(v, k, lam, mu),
        imprimitive=is_imprimitive(v, k, lam, mu),
        candidate_ells=tuple(e for e, _ in passing), hypothesis=hyp,
    )


# -- difference sets in Z/p1Z --------------------------------------------------

@dataclass(frozen=True)
class DifferenceSetCheck:
    is_difference_set: bool
    v: int
    k: int
    lam: int | None


def _difference_histogram(p1: int, elems: np.ndarray) -> np.ndarray:
    diffs = (elems[:, None] - elems[None, :]) % p1
    return np.bincount(diffs.ravel(), minlength=p1)


def difference_set_check(p1: int, subset) -> DifferenceSetCheck:
    """Brute force: every nonzero residue must occur equally often as a difference."""
    elems = np.array(sorted({int(a) % p1 for a in subset}), dtype=np.int64)
    if elems.size == 0 or elems.size >= p1:
        raise ValueError("subset must be nonempty and proper")
    hist = _difference_histogram(p1, elems)[1:]
    ok = bool((hist == hist[0]).all())
    return DifferenceSetCheck(ok, p1, int(elems.size), int(hist[0]) if ok else None)


def find_difference_set_cosets(p: int, p1: int, ell: int) -> tuple[tuple[int, ...], DifferenceSetCheck]:
    """Lexicographically first ell-subset I of coset indices whose union is a
    (p1, (p1-1)ell/w, (p1-1)ell/w - p^s) difference set."""
    dec = coset_decomposition(p, p1)
    _, b = stickelberger_b(p, p1)
    s = multiplicative_order(p, p1) - 2 * b
    k = (p1 - 1) * ell // dec.w
    lam = k - p**s
    cosets = [np.array(cs, dtype=np.int64) for cs in dec.cosets]
    for idx in itertools.combinations(range(dec.w), ell):
        elems = np.concatenate([cosets[i] for i in idx])
        hist = _difference_histogram(p1, elems)[1:]
        if hist[0] == lam and (hist == lam).all():
            return idx, DifferenceSetCheck(True, p1, k, lam)
    raise NoneFoundError(f"no {ell}-coset union is a ({p1}, {k}, {lam}) difference set")


# -- sporadic table ------------------------------------------------------------

@dataclass(frozen=True)
class CatalogRow:
    N: int
    p: int
    f: int
    index: int


SPORADIC_CATALOG: tuple[CatalogRow, ...] = (
    CatalogRow(11, 3, 5, 2),
    CatalogRow(19, 5, 9, 2),
    CatalogRow(35, 3, 12, 2),
    CatalogRow(37, 7, 9, 4),
    CatalogRow(43, 11, 7, 6),
    CatalogRow(67, 17, 33, 2),
    CatalogRow(107, 3, 53, 2),
    CatalogRow(133, 5, 18, 6),
    CatalogRow(163, 41, 81, 2),
    CatalogRow(323, 3, 144, 2),
    CatalogRow(499, 5, 249, 2),
)


def recompute_catalog_row(row: CatalogRow) -> tuple[int, int]:
    """(ord_N(p), phi(N) / ord_N(p))."""
    f = multiplicative_order(row.p, row.N)
    return f, int(totient(row.N)) // f
