"""Exact arithmetic in Z[xi_n], Gauss periods, connection sets and Gauss sums.

A :class:`CyclotomicInteger` stores coordinates in the power basis
1, xi, ..., xi^(n-2); the relation xi^(n-1) = -(1 + ... + xi^(n-2)) is
applied eagerly so equality is coordinate equality.  Only prime
conductors are used here.

Gauss sums of a character of order p1 live in Z[xi_p1, xi_p]; they are held
as a :class:`CompositeCyclotomic`, an integer matrix over the products
xi_p1^u xi_p^c with both indices reduced the same way.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import primitive_root

from .errors import (
    CapExceededError,
    NotDivisorError,
    NotInKError,
    NotInPeriodBasisError,
    NotRationalError,
    UnsupportedMError,
)
from .ffield import ExtensionField, class_trace_counts


def _canonical(full: Sequence[int]) -> tuple[int, ...]:
    last = full[-1]
    return tuple(int(a) - last for a in full[:-1])


@dataclass(frozen=True)
class CyclotomicInteger:
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n - 1:
            raise ValueError(f"Z[xi_{self.n}] needs {self.n - 1} coordinates")

    @classmethod
    def from_exponents(cls, n: int, exps: Mapping[int, int] | Iterable[int]) -> "CyclotomicInteger":
        """Sum of c * xi^e over a mapping e -> c, or of xi^e over an iterable."""
        full = [0] * n
        items = exps.items() if isinstance(exps, Mapping) else ((e, 1) for e in exps)
        for e, c in items:
            full[e % n] += c
        return cls(n, _canonical(full))

    @classmethod
    def constant(cls, n: int, c: int) -> "CyclotomicInteger":
        return cls(n, (c,) + (0,) * (n - 2))

    def full(self) -> list[int]:
        """Length-n exponent vector with a zero last entry."""
        return list(self.coeffs) + [0]

    def __add__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        self._same_ring(other)
        return CyclotomicInteger(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        self._same_ring(other)
        return CyclotomicInteger(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInteger":
        return CyclotomicInteger(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.n, tuple(other * a for a in self.coeffs))
        self._same_ring(other)
        n = self.n
        full = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % n] += a * b
        return CyclotomicInteger(n, _canonical(full))

    __rmul__ = __mul__

    def galois(self, a: int) -> "CyclotomicInteger":
        """Image under xi -> xi^a, gcd(a, n) = 1."""
        out: dict[int, int] = {}
        for e, c in enumerate(self.coeffs):
            if c:
                out[e * a % self.n] = out.get(e * a % self.n, 0) + c
        return CyclotomicInteger.from_exponents(self.n, out)

    def conjugate(self) -> "CyclotomicInteger":
        return self.galois(-1)

    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])

    def constant_value(self) -> int:
        if not self.is_constant():
            raise NotRationalError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def _same_ring(self, other):
        if self.n != other.n:
            raise ValueError(f"conductor mismatch: {self.n} vs {other.n}")


@dataclass(frozen=True)
class CompositeCyclotomic:
    """Element of Z[xi_n1, xi_n2] for coprime prime conductors.

    ``matrix[u][c]`` is the coordinate of xi_n1^u xi_n2^c, u < n1-1, c < n2-1.
    """

    n1: int
    n2: int
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_counts(cls, counts: np.ndarray) -> "CompositeCyclotomic":
        """Reduce an (n1 x n2) array of raw exponent counts."""
        n1, n2 = counts.shape
        m = [[int(x) for x in row] for row in counts]
        m = [[row[c] - row[n2 - 1] for c in range(n2 - 1)] for row in m]
        last = m[n1 - 1]
        m = [tuple(row[c] - last[c] for c in range(n2 - 1)) for row in m[: n1 - 1]]
        return cls(n1, n2, tuple(m))

    def __mul__(self, other: "CompositeCyclotomic") -> "CompositeCyclotomic":
        n1, n2 = self.n1, self.n2
        a = [(u, c, x) for u, row in enumerate(self.matrix) for c, x in enumerate(row) if x]
        b = [(u, c, x) for u, row in enumerate(other.matrix) for c, x in enumerate(row) if x]
        raw = np.zeros((n1, n2), dtype=object)
        raw[:, :] = 0
        for u1, c1, x1 in a:
            for u2, c2, x2 in b:
                raw[(u1 + u2) % n1, (c1 + c2) % n2] += x1 * x2
        return CompositeCyclotomic.from_counts(raw)

    def conjugate(self) -> "CompositeCyclotomic":
        raw = np.zeros((self.n1, self.n2), dtype=object)
        raw[:, :] = 0
        for u, row in enumerate(self.matrix):
            for c, x in enumerate(row):
                raw[(-u) % self.n1, (-c) % self.n2] += x
        return CompositeCyclotomic.from_counts(raw)

    def is_constant(self) -> bool:
        return all(x == 0 for u, row in enumerate(self.matrix) for c, x in enumerate(row) if (u, c) != (0, 0))

    def constant_value(self) -> int:
        if not self.is_constant():
            raise NotRationalError("composite element is not a rational integer")
        return self.matrix[0][0]

    def norm(self) -> int:
        """g * conj(g), required to be a rational integer."""
        return (self * self.conjugate()).constant_value()

    def first_factor(self) -> CyclotomicInteger:
        """Project to Z[xi_n1] when there is no xi_n2 dependence."""
        if any(x for row in self.matrix for x in row[1:]):
            raise NotInKError("xi_p dependence survives reduction")
        return CyclotomicInteger(self.n1, tuple(row[0] for row in self.matrix))


# -- cosets and periods --------------------------------------------------------

@dataclass(frozen=True)
class CosetDecomposition:
    p1: int
    p: int
    w: int
    g: int
    cosets: tuple[tuple[int, ...], ...]

    def coset_of(self, a: int) -> int:
        a %= self.p1
        for j, cs in enumerate(self.cosets):
            if a in cs:
                return j
        raise ValueError(f"{a} is not a unit mod {self.p1}")


def coset_decomposition(p: int, p1: int) -> CosetDecomposition:
    """Cosets g^j <p> of the subgroup generated by p in (Z/p1Z)^*."""
    if p % p1 == 0:
        raise ValueError(f"{p} is not a unit mod {p1}")
    sub, x = [], 1
    while True:
        sub.append(x)
        x = x * p % p1
        if x == 1:
            break
    w = (p1 - 1) // len(sub)
    g = int(primitive_root(p1))
    cosets = tuple(tuple(sorted(pow(g, j, p1) * h % p1 for h in sub)) for j in range(w))
    return CosetDecomposition(p1, p, w, g, cosets)


@dataclass(frozen=True)
class GaussPeriodSet:
    dec: CosetDecomposition
    etas: tuple[CyclotomicInteger, ...]


def gauss_periods(dec: CosetDecomposition) -> GaussPeriodSet:
    return GaussPeriodSet(
        dec, tuple(CyclotomicInteger.from_exponents(dec.p1, cs) for cs in dec.cosets)
    )


def period_products(ps: GaussPeriodSet) -> list[int]:
    """K_t = sum_z eta_z * eta_{z+t mod w}, evaluated exactly."""
    w = len(ps.etas)
    out = []
    for t in range(w):
        acc = CyclotomicInteger.constant(ps.dec.p1, 0)
        for z in range(w):
            acc = acc + ps.etas[z] * ps.etas[(z + t) % w]
        out.append(acc.constant_value())
    return out


def period_products_closed_form(p1: int, w: int) -> list[int]:
    half = (1 + (w - 1) * p1) // w
    other = (1 - p1) // w
    return [half if t == w // 2 else other for t in range(w)]


# -- connection set ------------------------------------------------------------

@dataclass(frozen=True)
class ConnectionSet:
    """Union of the classes C_0, ..., C_{p1^(m-1)-1} of index N = p1^m."""

    field: ExtensionField
    p1: int
    m: int

    @property
    def N(self) -> int:
        return self.p1**self.m

    @property
    def n_classes(self) -> int:
        return self.p1 ** (self.m - 1)

    @property
    def size(self) -> int:
        return self.n_classes * self.field.order // self.N

    def contains_class(self, i: int) -> bool:
        return i % self.N < self.n_classes

    def contains_exponent(self, k: int) -> bool:
        return self.contains_class(k % self.N)

    def codes(self, cap: int | None = None) -> set[int]:
        """Integer codes of the elements of D, via explicit enumeration."""
        fld = self.field
        if cap is not None and fld.order > cap:
            raise CapExceededError(fld.order, cap)
        out, x = set(), fld.one
        for k in range(fld.order):
            if self.contains_exponent(k):
                out.add(fld.to_int(x))
            x = fld.mul_gamma(x)
        return out


def build_connection_set(fld: ExtensionField, p1: int, m: int) -> ConnectionSet:
    if m < 1:
        raise ValueError("m must be >= 1")
    if fld.order % p1**m:
        raise NotDivisorError(f"{p1}^{m} does not divide q - 1 = {fld.order}")
    return ConnectionSet(fld, p1, m)


# -- Gauss sums ----------------------------------------------------------------

def gauss_sum_exact(
    fld: ExtensionField,
    dec: CosetDecomposition,
    m: int = 1,
    d: int = 1,
    cap: int | None = None,
    counts: np.ndarray | None = None,
) -> CompositeCyclotomic:
    """g(theta_bar^d) where theta(gamma) = xi_p1; d = 0 gives the trivial character.

    ``counts`` may carry a precomputed index-p1 trace histogram of ``fld``.
    """
    if m != 1:
        raise UnsupportedMError("exact Gauss sums are only computed for m = 1")
    p1, p = dec.p1, fld.p
    if fld.order % p1:
        raise NotDivisorError(f"{p1} does not divide q - 1")
    if counts is None:
        if cap is not None and fld.order > cap:
            raise CapExceededError(fld.order, cap)
        counts = class_trace_counts(fld, p1)
    raw = np.zeros((p1, p), dtype=object)
    raw[:, :] = 0
    for i in range(p1):
        raw[(-d * i) % p1] += counts[i].astype(object)
    return CompositeCyclotomic.from_counts(raw)


@dataclass(frozen=True)
class GaussSumDecomposition:
    """g = p^r * sum_i coefficients[i] * eta_i with r maximal."""

    p: int
    r: int
    coefficients: tuple[int, ...]

    @property
    def M0(self) -> int:
        return sum(self.coefficients)

    def reconstruct(self, ps: GaussPeriodSet) -> CyclotomicInteger:
        acc = CyclotomicInteger.constant(ps.dec.p1, 0)
        for c, eta in zip(self.coefficients, ps.etas):
            acc = acc + eta * c
        return acc * self.p**self.r

    def srg_signature(self) -> int | None:
        """epsilon if every coefficient lies in {0, epsilon} for epsilon = +-1."""
        nonzero = {c for c in self.coefficients if c}
        if len(nonzero) == 1 and nonzero <= {1, -1}:
            return nonzero.pop()
        return None


def decompose_gauss_sum(gs: CompositeCyclotomic, ps: GaussPeriodSet, p: int) -> GaussSumDecomposition:
    single = gs.first_factor()
    full = single.full()
    base = full[0]
    coeffs = []
    for j, cs in enumerate(ps.dec.cosets):
        vals = {full[a] - base for a in cs}
        if len(vals) != 1:
            raise NotInPeriodBasisError(f"coordinates are not constant on coset {j}")
        coeffs.append(vals.pop())
    nonzero = [c for c in coeffs if c]
    if not nonzero:
        raise NotInPeriodBasisError("Gauss sum vanished")
    r = 0
    while all(c % p**(r + 1) == 0 for c in nonzero):
        r += 1
    return GaussSumDecomposition(p, r, tuple(c // p**r for c in coeffs))
