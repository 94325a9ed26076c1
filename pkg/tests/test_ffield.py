from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclosrg.errors import CapExceededError, DegreeTooLargeError, NonPrimeError, NotDivisorError
from cyclosrg.ffield import (
    build_field,
    class_trace_counts,
    enumerate_classes,
    is_irreducible,
    iter_powers,
    partition_range,
    trace_sequence,
)

from .conftest import field


def test_prime_field_uses_smallest_primitive_root():
    F = build_field(3, 1)
    assert F.gamma.coeffs == (2,)
    assert build_field(7, 1).gamma.coeffs == (3,)


def test_f243_gamma_order_exhaustive(F243):
    # walk gamma^k until 1 recurs
    x, k = F243.gamma, 1
    while x != F243.one:
        x = F243.mul_gamma(x)
        k += 1
    assert k == 242
    assert F243.gamma_pow(121) != F243.one
    assert F243.gamma_pow(22) != F243.one


def test_f_11_7_order_by_prime_subgroups():
    F = field(11, 7)
    assert F.q == 19487171
    order = F.q - 1
    assert F.gamma_pow(order) == F.one
    for ell in (2, 5, 43, 45319):
        assert order % ell == 0
        assert F.gamma_pow(order // ell) != F.one
    assert 2 * 5 * 43 * 45319 == order


@pytest.mark.parametrize("p,f", [(2, 4), (3, 3), (5, 2), (3, 5), (2, 7), (7, 3)])
def test_modulus_irreducible_and_primitive(p, f):
    F = field(p, f)
    assert is_irreducible(F.modulus, p)
    assert F.trace_of_basis[0] == f % p
    seen = {F.to_int(x) for x in iter_powers(F)}
    assert len(seen) == F.order and 0 not in seen


def test_irreducibility_rejects_products():
    # (x + 1)(x^2 + x + 2) over F_3 = x^3 + 2x^2 + 0x + 2
    assert not is_irreducible((2, 0, 2, 1), 3)
    assert is_irreducible((1, 2, 0, 1), 3)  # x^3 + 2x + 1


def test_build_is_deterministic():
    assert build_field(5, 4) == build_field(5, 4)


def test_errors():
    with pytest.raises(NonPrimeError):
        build_field(9, 2)
    with pytest.raises(DegreeTooLargeError):
        build_field(3, 200)


def test_trace_examples(F243):
    assert F243.trace(F243.one) == 2
    assert F243.trace(F243.zero) == 0
    c_top = F243.modulus[-2]
    assert F243.trace(F243.gamma) == (-c_top) % 3


def test_trace_matches_power_sum_definition(F243):
    for x in iter_powers(F243, 0, 60):
        assert F243.trace(x) == F243.trace_direct(x)


def test_trace_sequence_matches_elementwise():
    F = field(5, 3)
    seq = trace_sequence(F, F.order)
    assert list(seq) == [F.trace(x) for x in iter_powers(F)]


@given(st.data())
def test_trace_linear_and_frobenius_invariant(data):
    F = field(5, 4)
    coeffs = st.lists(st.integers(0, 4), min_size=4, max_size=4)
    x = F.element(data.draw(coeffs))
    y = F.element(data.draw(coeffs))
    assert F.trace(F.add(x, y)) == (F.trace(x) + F.trace(y)) % 5
    xp = F.one
    for _ in range(5):
        xp = F.mul(xp, x)
    assert F.trace(xp) == F.trace(x)


@given(st.integers(0, 5**4 - 1), st.integers(0, 5**4 - 1))
def test_mul_gamma_agrees_with_mul(a, b):
    F = field(5, 4)
    x = F.from_int(a)
    assert F.mul_gamma(x) == F.mul(x, F.gamma)
    assert F.to_int(F.from_int(b)) == b


def test_enumerate_classes_f9():
    F = field(3, 2)
    pairs = list(enumerate_classes(F, 2))
    assert len(pairs) == 8
    assert Counter(i for i, _ in pairs) == {0: 4, 1: 4}


def test_enumerate_classes_f243(F243):
    pairs = list(enumerate_classes(F243, 11))
    classes = Counter(i for i, _ in pairs)
    assert classes[0] == 22 and set(classes.values()) == {22}
    hist = Counter(t for i, t in pairs if i == 0)
    assert hist[1] == hist[2]


def test_enumerate_classes_errors(F243):
    with pytest.raises(NotDivisorError):
        list(enumerate_classes(F243, 7))
    with pytest.raises(CapExceededError):
        list(enumerate_classes(F243, 11, cap=100))


@pytest.mark.parametrize("p,f,N", [(3, 5, 11), (2, 7, 127), (5, 3, 31), (3, 4, 5)])
def test_block_counts_match_streaming(p, f, N):
    F = field(p, f)
    expected = np.zeros((N, p), dtype=np.int64)
    for i, t in enumerate_classes(F, N):
        expected[i, t] += 1
    for block in (1, 7, 64, 8192):
        assert np.array_equal(class_trace_counts(F, N, block=block), expected)


def test_partitioned_counts_sum_to_whole():
    F = field(3, 7)
    whole = class_trace_counts(F, 1093)
    parts = partition_range(F.order, 5)
    assert parts[0][0] == 0 and parts[-1][1] == F.order
    assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))
    split = sum(class_trace_counts(F, 1093, a, b) for a, b in parts)
    assert np.array_equal(whole, split)
