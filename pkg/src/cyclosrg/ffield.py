"""Finite fields F_{p^f} in a power basis of a primitive element.

Elements are dense coefficient vectors over F_p in the basis
1, gamma, ..., gamma^(f-1), where gamma is the class of the polynomial
variable modulo a primitive modulus.  The modulus is found by a
deterministic lexicographic search, so ``build_field(p, f)`` always
returns the same field.

Bulk enumeration of F_q^* in discrete-log order is done block-wise:
the sequence Tr(gamma^k) satisfies the linear recurrence given by the
modulus, so the traces of gamma^(k0), ..., gamma^(k0+B-1) are one
row-times-Hankel-matrix product.  This keeps the hot loop in numpy.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np
from sympy import factorint, isprime, primitive_root

from .errors import CapExceededError, DegreeTooLargeError, NonPrimeError, NotDivisorError

# Largest group order for which p^f - 1 is factored during construction.
MAX_BUILD_ORDER = 2**80

_BLOCK = 8192
_CHUNK_ELEMENTS = 1 << 21


# -- polynomials over F_p, ascending coefficient lists ------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    f = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(f):
                prod[k - f + i] -= c * mod[i]
        prod[k] = 0
    out = [x % p for x in prod[:f]]
    return out + [0] * (f - len(out))


def _poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    f = len(mod) - 1
    result = [1] + [0] * (f - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, mod, p)
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bi) % p
            _trim(a)
        a, b = b, a
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    f = len(modulus) - 1
    if f == 1:
        return True
    x = [0, 1] + [0] * (f - 2)

    def frob(k):
        return _poly_powmod(x, p**k, modulus, p)

    if frob(f) != x:
        return False
    for ell in factorint(f):
        h = frob(f // ell)
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(h, modulus, p)) > 1:
            return False
    return True


def _has_full_order(x: Sequence[int], modulus: Sequence[int], p: int, order: int, factors) -> bool:
    f = len(modulus) - 1
    one = [1] + [0] * (f - 1)
    if _poly_powmod(x, order, modulus, p) != one:
        return False
    return all(_poly_powmod(x, order // ell, modulus, p) != one for ell in factors)


# -- field ---------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class ExtensionField:
    """F_{p^f} with a designated primitive element ``gamma``.

    ``modulus`` is ascending (c_0, ..., c_{f-1}, 1).
    """

    p: int
    f: int
    modulus: tuple[int, ...]
    trace_of_basis: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.f

    @property
    def order(self) -> int:
        return self.p**self.f - 1

    @cached_property
    def gamma(self) -> FieldElement:
        if self.f == 1:
            return FieldElement(((-self.modulus[0]) % self.p,))
        return FieldElement((0, 1) + (0,) * (self.f - 2))

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.f - 1))

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.f)

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) != self.f:
            raise ValueError(f"expected {self.f} coefficients, got {len(coeffs)}")
        return FieldElement(tuple(int(c) % self.p for c in coeffs))

    def from_int(self, code: int) -> FieldElement:
        """Inverse of :meth:`to_int` (base-p digits, least significant first)."""
        digits = []
        for _ in range(self.f):
            code, d = divmod(code, self.p)
            digits.append(d)
        return FieldElement(tuple(digits))

    def to_int(self, x: FieldElement) -> int:
        return sum(c * self.p**i for i, c in enumerate(x.coeffs))

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple((a + b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(tuple((a - b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def neg(self, x: FieldElement) -> FieldElement:
        return FieldElement(tuple((-a) % self.p for a in x.coeffs))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if self.f == 1:
            return FieldElement((x.coeffs[0] * y.coeffs[0] % self.p,))
        return FieldElement(tuple(_poly_mulmod(x.coeffs, y.coeffs, self.modulus, self.p)))

    def mul_gamma(self, x: FieldElement) -> FieldElement:
        """Shift-and-reduce multiplication by gamma, O(f)."""
        p, c = self.p, self.coeffs_gamma_shift
        top = x.coeffs[-1]
        if self.f == 1:
            return FieldElement((top * c[0] % p,))
        shifted = (0,) + x.coeffs[:-1]
        return FieldElement(tuple((s - top * m) % p for s, m in zip(shifted, self.modulus)))

    @cached_property
    def coeffs_gamma_shift(self) -> tuple[int, ...]:
        return self.gamma.coeffs

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        if e < 0:
            raise ValueError("negative exponents are not supported")
        if self.f == 1:
            return FieldElement((pow(x.coeffs[0], e, self.p),))
        return FieldElement(tuple(_poly_powmod(x.coeffs, e, self.modulus, self.p)))

    def gamma_pow(self, k: int) -> FieldElement:
        return self.pow(self.gamma, k % self.order)

    def trace(self, x: FieldElement) -> int:
        return sum(c * t for c, t in zip(x.coeffs, self.trace_of_basis)) % self.p

    def trace_direct(self, x: FieldElement) -> int:
        """Tr(x) = x + x^p + ... + x^(p^(f-1)), used as a cross-check."""
        acc, y = self.zero, x
        for _ in range(self.f):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        if any(acc.coeffs[1:]):
            raise ArithmeticError("trace did not land in the prime field")
        return acc.coeffs[0]


def _primitive_roots(p: int) -> set[int]:
    if p == 2:
        return {1}
    factors = list(factorint(p - 1))
    return {g for g in range(1, p) if all(pow(g, (p - 1) // ell, p) != 1 for ell in factors)}


def _newton_power_sums(modulus: Sequence[int], p: int) -> tuple[int, ...]:
    f = len(modulus) - 1
    c = modulus
    s = [f % p]
    for k in range(1, f):
        acc = k * c[f - k]
        for j in range(1, k):
            acc += c[f - j] * s[k - j]
        s.append((-acc) % p)
    return tuple(s)


def build_field(p: int, f: int, max_order: int = MAX_BUILD_ORDER) -> ExtensionField:
    """Construct F_{p^f} with a deterministic primitive modulus.

    For f = 1 the modulus is x - g with g the smallest primitive root.
    Otherwise monic degree-f polynomials are scanned in lexicographic order
    of (c_0, ..., c_{f-1}) and the first irreducible one whose root is
    primitive is taken.
    """
    if not isprime(p):
        raise NonPrimeError(f"{p} is not prime")
    if f < 1:
        raise ValueError("degree must be >= 1")
    order = p**f - 1
    if order > max_order:
        raise DegreeTooLargeError(f"p^f - 1 = {p}^{f} - 1 exceeds the construction limit")

    if f == 1:
        g = int(primitive_root(p)) if p > 2 else 1
        modulus = ((-g) % p, 1)
    else:
        factors = list(factorint(order))
        x = [0, 1] + [0] * (f - 2)
        # The norm (-1)^f c_0 of a primitive element generates F_p^*.
        prim_mod_p = _primitive_roots(p)
        for tail in itertools.product(range(p), repeat=f):
            if (-1) ** f * tail[0] % p not in prim_mod_p:
                continue
            cand = tail + (1,)
            if _has_full_order(x, cand, p, order, factors) and is_irreducible(cand, p):
                modulus = cand
                break
        else:  # pragma: no cover - a primitive polynomial always exists
            raise ArithmeticError(f"no primitive polynomial found for ({p}, {f})")
    return ExtensionField(p, f, tuple(modulus), _newton_power_sums(modulus, p))


# -- enumeration ---------------------------------------------------------------

def _check_cap(fld: ExtensionField, cap: int | None) -> None:
    if cap is not None and fld.order > cap:
        raise CapExceededError(fld.order, cap)


def enumerate_classes(
    fld: ExtensionField, N: int, cap: int | None = None
) -> Iterator[tuple[int, int]]:
    """Yield (k mod N, Tr(gamma^k)) for k = 0 .. q-2, one element at a time."""
    if fld.order % N:
        raise NotDivisorError(f"{N} does not divide {fld.order}")
    _check_cap(fld, cap)
    x = fld.one
    for k in range(fld.order):
        yield k % N, fld.trace(x)
        x = fld.mul_gamma(x)


def iter_powers(fld: ExtensionField, start: int = 0, stop: int | None = None) -> Iterator[FieldElement]:
    stop = fld.order if stop is None else stop
    x = fld.gamma_pow(start)
    for _ in range(start, stop):
        yield x
        x = fld.mul_gamma(x)


def trace_sequence(fld: ExtensionField, length: int) -> np.ndarray:
    """Tr(gamma^k) for k < length, via the recurrence of the modulus."""
    p, f = fld.p, fld.f
    seq = list(fld.trace_of_basis[:length])
    if f == 1:
        g = fld.gamma.coeffs[0]
        while len(seq) < length:
            seq.append(seq[-1] * g % p)
        return np.asarray(seq, dtype=np.int64)
    c = fld.modulus
    for k in range(f, length):
        seq.append(-sum(c[i] * seq[k - f + i] for i in range(f)) % p)
    return np.asarray(seq, dtype=np.int64)


def _trace_blocks(fld: ExtensionField, start: int, stop: int, block: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (k0, traces of gamma^k0 .. ) covering [start, stop) in order."""
    p, f = fld.p, fld.f
    seq = trace_sequence(fld, block + f - 1).astype(np.float64)
    hankel = np.lib.stride_tricks.sliding_window_view(seq, block)  # (f, block)
    step = np.array([fld.gamma_pow(u + block).coeffs for u in range(f)], dtype=np.int64)
    rows_per_chunk = max(1, _CHUNK_ELEMENTS // block)

    state = np.array(fld.gamma_pow(start).coeffs, dtype=np.int64)
    k = start
    while k < stop:
        nrows = min(rows_per_chunk, -(-(stop - k) // block))
        states = np.empty((nrows, f), dtype=np.int64)
        for i in range(nrows):
            states[i] = state
            state = (state @ step) % p
        # float64 products are exact: entries stay below f * p^2.
        tr = np.rint(states.astype(np.float64) @ hankel).astype(np.int64) % p
        tr = tr.ravel()[: stop - k]
        yield k, tr
        k += tr.size


def class_trace_counts(
    fld: ExtensionField,
    N: int,
    start: int = 0,
    stop: int | None = None,
    block: int = _BLOCK,
) -> np.ndarray:
    """counts[i, c] = #{k in [start, stop) : k = i mod N, Tr(gamma^k) = c}."""
    if fld.order % N:
        raise NotDivisorError(f"{N} does not divide {fld.order}")
    stop = fld.order if stop is None else stop
    p = fld.p
    counts = np.zeros(N * p, dtype=np.int64)
    for k0, tr in _trace_blocks(fld, start, stop, block):
        cls = np.arange(k0, k0 + tr.size, dtype=np.int64) % N
        counts += np.bincount(cls * p + tr, minlength=N * p)
    return counts.reshape(N, p)


def partition_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    edges = [total * i // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b > a] or [(0, 0)]
