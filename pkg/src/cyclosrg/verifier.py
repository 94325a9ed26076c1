"""Empirical side: exact restricted eigenvalues of Cay(F_q, D) by enumeration.

For a union D of cyclotomic classes, psi(gamma^a D) = sum_c n_c xi_p^c where
n_c counts x in gamma^a D with Tr(x) = c.  When n_1 = ... = n_{p-1} this is
the integer n_0 - n_1; equality is asserted, never assumed, so everything
here is integer arithmetic.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cyclotomy import ConnectionSet
from .errors import CapExceededError, InconsistentSpectrumError, NonIntegralPeriodError
from .ffield import ExtensionField, class_trace_counts, partition_range
from .index_theory import SrgPrediction, Verdict, is_imprimitive, srg_params_from_spectrum


@dataclass(frozen=True)
class TraceCountMatrix:
    """counts[i, c] = #{x in C_i : Tr(x) = c}."""

    counts: np.ndarray

    @property
    def N(self) -> int:
        return self.counts.shape[0]

    @property
    def p(self) -> int:
        return self.counts.shape[1]

    def check(self, q: int) -> None:
        if int(self.counts.sum()) != q - 1:
            raise AssertionError("trace counts do not cover F_q^*")
        if not (self.counts.sum(axis=1) == (q - 1) // self.N).all():
            raise AssertionError("class sizes are not (q-1)/N")


def trace_count_matrix(
    fld: ExtensionField, N: int, workers: int = 1, cap: int | None = None
) -> TraceCountMatrix:
    """One pass over F_q^*, optionally split into exponent ranges.

    Partial matrices are merged by integer addition, so the result does not
    depend on the partitioning.
    """
    if cap is not None and fld.order > cap:
        raise CapExceededError(fld.order, cap)
    parts = partition_range(fld.order, workers)
    if len(parts) == 1:
        counts = class_trace_counts(fld, N)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda ab: class_trace_counts(fld, N, *ab), parts))
        counts = sum(partials[1:], partials[0])
    tcm = TraceCountMatrix(counts)
    tcm.check(fld.q)
    return tcm


@dataclass(frozen=True)
class SpectrumProfile:
    """values[a] = psi(gamma^a D) for a in [0, N)."""

    values: tuple[int, ...]
    class_size: int
    integrality_ok: bool = True

    @property
    def distinct(self) -> dict[int, int]:
        """Distinct restricted eigenvalues with the number of a attaining each."""
        return dict(sorted(Counter(self.values).items()))


def profile_from_counts(tcm: TraceCountMatrix, n_classes: int) -> SpectrumProfile:
    N, p = tcm.counts.shape
    window = np.zeros_like(tcm.counts)
    for j in range(n_classes):
        window += np.roll(tcm.counts, -j, axis=0)
    nonzero = window[:, 1:]
    if not (nonzero == nonzero[:, :1]).all():
        bad = int(np.nonzero((nonzero != nonzero[:, :1]).any(axis=1))[0][0])
        raise NonIntegralPeriodError(f"nonzero-trace counts differ for a = {bad}")
    values = tuple(int(v) for v in window[:, 0] - window[:, 1])
    return SpectrumProfile(values, int(tcm.counts[0].sum()))


def profile_spectrum(
    fld: ExtensionField, D: ConnectionSet, workers: int = 1, cap: int | None = None
) -> SpectrumProfile:
    tcm = trace_count_matrix(fld, D.N, workers=workers, cap=cap)
    return profile_from_counts(tcm, D.n_classes)


@dataclass(frozen=True)
class SrgDecision:
    is_srg: bool
    v: int
    k: int
    eigenvalues: tuple[int, ...]
    lam: int | None = None
    mu: int | None = None
    imprimitive: bool = False
    reason: str | None = None

    @property
    def params(self) -> tuple[int, int, int, int] | None:
        return (self.v, self.k, self.lam, self.mu) if self.is_srg else None


def srg_decision(profile: SpectrumProfile, v: int, k: int) -> SrgDecision:
    eig = tuple(sorted(profile.distinct))
    if k == 0 or k == v - 1:
        return SrgDecision(False, v, k, eig, reason="complete or edgeless graph")
    if len(eig) != 2:
        return SrgDecision(False, v, k, eig, reason=f"{len(eig)} distinct restricted eigenvalues")
    try:
        lam, mu = srg_params_from_spectrum(v, k, eig[1], eig[0])
    except InconsistentSpectrumError as exc:
        return SrgDecision(False, v, k, eig, reason=str(exc))
    return SrgDecision(True, v, k, eig, lam, mu, is_imprimitive(v, k, lam, mu))


@dataclass(frozen=True)
class OracleResult:
    is_srg: bool
    v: int
    k: int
    lam: int | None = None
    mu: int | None = None
    reason: str | None = None

    @property
    def params(self) -> tuple[int, int, int, int] | None:
        return (self.v, self.k, self.lam, self.mu) if self.is_srg else None


def adjacency_matrix(fld: ExtensionField, D: ConnectionSet) -> np.ndarray:
    """Dense 0/1 adjacency matrix, vertices indexed by base-p digit codes."""
    q, p = fld.q, fld.p
    member = np.zeros(q, dtype=bool)
    member[list(D.codes())] = True
    codes = np.arange(q, dtype=np.int32)
    diff = np.zeros((q, q), dtype=np.int32)
    for i in range(fld.f):
        digit = (codes // p**i) % p
        diff += ((digit[:, None] - digit[None, :]) % p) * p**i
    return member[diff].astype(np.uint8)


def adjacency_oracle(fld: ExtensionField, D: ConnectionSet, cap: int = 4096) -> OracleResult:
    """Check A^2 = (lam - mu) A + (k - mu) I + mu J entrywise."""
    q = fld.q
    if q > cap:
        raise CapExceededError(q, cap, "dense adjacency oracle")
    A = adjacency_matrix(fld, D)
    if not (A == A.T).all() or A.diagonal().any():
        return OracleResult(False, q, int(A[0].sum()), reason="not a simple undirected graph")
    degrees = A.sum(axis=1)
    k = int(degrees[0])
    if not (degrees == k).all():
        return OracleResult(False, q, k, reason="not regular")
    if k == 0 or k == q - 1:
        return OracleResult(False, q, k, reason="complete or edgeless graph")
    # float32 is exact here: every partial sum is an integer <= q < 2^24.
    Af = A.astype(np.float32)
    A2 = np.rint(Af @ Af).astype(np.int64)
    adj = A.astype(bool)
    off = ~adj & ~np.eye(q, dtype=bool)
    lam = int(A2[adj][0])
    mu = int(A2[off][0])
    expected = (lam - mu) * A.astype(np.int64) + mu
    expected[np.diag_indices(q)] += k - mu
    if not np.array_equal(A2, expected):
        return OracleResult(False, q, k, reason="A^2 is not in span{A, I, J}")
    return OracleResult(True, q, k, lam, mu)


@dataclass(frozen=True)
class CrossCheckReport:
    agree: bool
    prediction: SrgPrediction
    decision: SrgDecision
    profile: SpectrumProfile
    mismatches: tuple[str, ...] = field(default=())


def cross_check(
    prediction: SrgPrediction,
    fld: ExtensionField,
    D: ConnectionSet,
    workers: int = 1,
    cap: int | None = None,
    profile: SpectrumProfile | None = None,
) -> CrossCheckReport:
    if profile is None:
        profile = profile_spectrum(fld, D, workers=workers, cap=cap)
    decision = srg_decision(profile, fld.q, D.size)
    problems = []
    predicted_srg = prediction.verdict is Verdict.SRG
    if predicted_srg != decision.is_srg:
        problems.append(
            f"verdict: predicted {prediction.verdict.value}, observed "
            f"{'srg' if decision.is_srg else 'not_srg'} ({decision.reason})"
        )
    elif predicted_srg:
        if set(prediction.eigenvalues) != set(decision.eigenvalues):
            problems.append(
                f"eigenvalues: predicted {sorted(prediction.eigenvalues)}, observed {list(decision.eigenvalues)}"
            )
        if prediction.srg_params != decision.params:
            problems.append(f"parameters: predicted {prediction.srg_params}, observed {decision.params}")
    return CrossCheckReport(not problems, prediction, decision, profile, tuple(problems))
