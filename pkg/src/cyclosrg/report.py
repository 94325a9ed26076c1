"""Machine-readable instance records (JSON / CSV / text)."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

from .index_theory import SrgPrediction

STATUSES = ("predicted-only", "verified", "mismatch", "cap-exceeded")

# Serialized as decimal strings so that p^f with huge f survives any JSON reader.
_BIG_FIELDS = ("N", "f", "b", "r", "s", "eigenvalue_base", "v", "k", "lam", "mu")
_BIG_LIST_FIELDS = ("eigenvalues", "observed_eigenvalues")

CSV_COLUMNS = (
    "p", "p1", "m", "N", "f", "w", "f_tilde", "b", "r", "s", "verdict", "ell", "epsilon",
    "eigenvalues", "v", "k", "lam", "mu", "imprimitive", "status",
)


@dataclass(frozen=True)
class ReportRecord:
    p: int
    p1: int
    m: int
    verdict: str
    status: str = "predicted-only"
    N: int | None = None
    f: int | None = None
    w: int | None = None
    f_tilde: int | None = None
    b: int | None = None
    r: int | None = None
    s: int | None = None
    ell: int | None = None
    epsilon: int | None = None
    eigenvalue_base: int | None = None
    eigenvalues: tuple[int, ...] | None = None
    v: int | None = None
    k: int | None = None
    lam: int | None = None
    mu: int | None = None
    imprimitive: bool = False
    reason: str | None = None
    observed_eigenvalues: tuple[int, ...] | None = None
    mismatches: tuple[str, ...] = ()
    runtime_s: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @classmethod
    def from_prediction(cls, pred: SrgPrediction, **extra) -> "ReportRecord":
        kw = dict(p=pred.p, p1=pred.p1, m=pred.m, verdict=pred.verdict.value, N=pred.p1**pred.m)
        hyp = pred.hypothesis
        if hyp is not None:
            kw.update(f=hyp.f, w=hyp.w, f_tilde=hyp.f_tilde)
        if pred.params is not None:
            ip = pred.params
            kw.update(f=ip.f, w=ip.w, f_tilde=ip.f_tilde, b=ip.b, r=ip.r, s=ip.s)
        if pred.srg_params is not None:
            v, k, lam, mu = pred.srg_params
            kw.update(
                ell=pred.ell, epsilon=pred.epsilon, eigenvalue_base=pred.eigenvalue_base,
                eigenvalues=tuple(pred.eigenvalues), v=v, k=k, lam=lam, mu=mu,
                imprimitive=pred.imprimitive,
            )
        elif pred.params is not None:
            kw.update(v=pred.params.q, k=(pred.params.q - 1) // pred.p1)
        kw["reason"] = pred.failure_reason
        kw.update(extra)
        return cls(**kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        for name in _BIG_FIELDS:
            if d[name] is not None:
                d[name] = str(d[name])
        for name in _BIG_LIST_FIELDS:
            if d[name] is not None:
                d[name] = [str(x) for x in d[name]]
        d["mismatches"] = list(d["mismatches"])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ReportRecord":
        d = dict(d)
        for name in _BIG_FIELDS:
            if d.get(name) is not None:
                d[name] = int(d[name])
        for name in _BIG_LIST_FIELDS:
            if d.get(name) is not None:
                d[name] = tuple(int(x) for x in d[name])
        d["mismatches"] = tuple(d.get("mismatches", ()))
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in known})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportRecord":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        head = f"p={self.p} p1={self.p1} m={self.m}: {self.verdict} [{self.status}]"
        lines = [head]
        if self.f is not None:
            line = f"  f={self.f} w={self.w} f~={self.f_tilde}"
            if self.r is not None:
                line += f" b={self.b} r={self.r} s={self.s}"
            lines.append(line)
        if self.ell is not None:
            lines.append(f"  ell={self.ell} epsilon={self.epsilon:+d} eigenvalues={list(self.eigenvalues)}")
        if self.v is not None and self.lam is not None:
            tag = " (imprimitive)" if self.imprimitive else ""
            lines.append(f"  srg(v={self.v}, k={self.k}, lambda={self.lam}, mu={self.mu}){tag}")
        if self.observed_eigenvalues is not None:
            lines.append(f"  observed restricted eigenvalues: {list(self.observed_eigenvalues)}")
        if self.reason:
            lines.append(f"  reason: {self.reason}")
        for mm in self.mismatches:
            lines.append(f"  MISMATCH: {mm}")
        if self.runtime_s is not None:
            lines.append(f"  runtime: {self.runtime_s:.2f} s")
        return "\n".join(lines)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        d = rec.to_dict()
        row = {c: d[c] for c in CSV_COLUMNS}
        if row["eigenvalues"] is not None:
            row["eigenvalues"] = ";".join(row["eigenvalues"])
        writer.writerow(row)
    return buf.getvalue()
