"""Command-line entry point: ``cyclosrg {check,verify,scan,catalog,decompose}``.

Exit codes: 0 success, 1 usage error, 2 prediction/verification mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from sympy import factorint, isprime, primerange

from .config import DEFAULT_ORACLE_CAP, RunConfig, default_enumeration_cap
from .cyclotomy import build_connection_set, coset_decomposition, decompose_gauss_sum, gauss_periods, gauss_sum_exact
from .errors import CapExceededError, CycloSrgError
from .ffield import build_field
from .index_theory import (
    SPORADIC_CATALOG,
    Verdict,
    check_hypotheses,
    compute_r,
    predict,
    recompute_catalog_row,
    stickelberger_b,
)
from .report import ReportRecord, records_to_csv
from .verifier import adjacency_oracle, cross_check

log = logging.getLogger("cyclosrg")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2

# Above this order a full enumeration takes long enough to call it borderline.
BORDERLINE_Q = 3 * 10**7

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def _order_exceeds(p: int, f: int, cap: int) -> bool:
    # Cheap bit-length bound first: for m >= 2, p^f has thousands of digits.
    if f * (p.bit_length() - 1) > cap.bit_length():
        return True
    return p**f - 1 > cap


def _validate(p: int, p1: int, m: int) -> None:
    if not isprime(p):
        raise ValueError(f"p = {p} is not prime")
    if p1 == 2 or not isprime(p1):
        raise ValueError(f"p1 = {p1} is not an odd prime")
    if m < 1:
        raise ValueError(f"m = {m} must be >= 1")


def cmd_check(p: int, p1: int, m: int) -> ReportRecord:
    _validate(p, p1, m)
    return ReportRecord.from_prediction(predict(p, p1, m))


def cmd_verify(p: int, p1: int, m: int, config: RunConfig | None = None) -> ReportRecord:
    _validate(p, p1, m)
    config = config or RunConfig()
    t0 = time.perf_counter()
    pred = predict(p, p1, m)
    if pred.verdict is Verdict.HYPOTHESIS_FAILED:
        return ReportRecord.from_prediction(pred)
    f = pred.params.f
    if _order_exceeds(p, f, config.enumeration_cap):
        return ReportRecord.from_prediction(
            pred, status="cap-exceeded",
            reason=f"q - 1 = {p}^{f} - 1 exceeds the enumeration cap {config.enumeration_cap}",
        )
    fld = build_field(p, f)
    D = build_connection_set(fld, p1, m)
    report = cross_check(pred, fld, D, workers=config.workers, cap=config.enumeration_cap)
    mismatches = list(report.mismatches)
    if fld.q <= config.oracle_cap:
        oracle = adjacency_oracle(fld, D, cap=config.oracle_cap)
        if oracle.params != report.decision.params:
            mismatches.append(f"adjacency oracle: {oracle.params} vs spectrum {report.decision.params}")
    return ReportRecord.from_prediction(
        pred,
        status="mismatch" if mismatches else "verified",
        observed_eigenvalues=report.decision.eigenvalues,
        mismatches=tuple(mismatches),
        runtime_s=time.perf_counter() - t0,
    )


def scan_instances(p_max: int, p1_max: int, m: int = 1):
    """Hypothesis-passing (p, p1) pairs ordered by p1, then p."""
    for p1 in primerange(3, p1_max + 1):
        for p in primerange(2, p_max + 1):
            if p != p1 and check_hypotheses(p, p1, m).passed:
                yield int(p), int(p1)


def cmd_scan(
    p_max: int, p1_max: int, m: int = 1, verify: bool = False, config: RunConfig | None = None
) -> list[ReportRecord]:
    if p_max < 2 or p1_max < 2:
        raise ValueError("scan bounds must be >= 2")
    config = config or RunConfig()
    pairs = list(scan_instances(p_max, p1_max, m))
    if not verify:
        return [cmd_check(p, p1, m) for p, p1 in pairs]
    inner = RunConfig(config.enumeration_cap, config.oracle_cap, 1, config.output_format)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(lambda pp: cmd_verify(pp[0], pp[1], m, inner), pairs))


def cmd_catalog(cap: int | None = None) -> list[dict]:
    cap = default_enumeration_cap() if cap is None else cap
    rows = []
    for row in SPORADIC_CATALOG:
        f, index = recompute_catalog_row(row)
        q = row.p**row.f
        prime_power = len(factorint(row.N)) == 1
        verifiable = q - 1 <= cap
        rows.append(dict(
            N=row.N, p=row.p, f=row.f, index=row.index,
            f_recomputed=f, index_recomputed=index, matches=(f, index) == (row.f, row.index),
            q=q, prime_power_N=prime_power, verifiable=verifiable,
            borderline=verifiable and q > BORDERLINE_Q,
        ))
    return rows


def cmd_decompose(p: int, p1: int, cap: int | None = None) -> dict:
    cap = default_enumeration_cap() if cap is None else cap
    hyp = check_hypotheses(p, p1, 1)
    if not hyp.passed:
        raise ValueError("; ".join(hyp.reasons))
    if _order_exceeds(p, hyp.f, cap):
        raise CapExceededError(p**hyp.f - 1, cap)
    fld = build_field(p, hyp.f)
    dec = coset_decomposition(p, p1)
    ps = gauss_periods(dec)
    gs = gauss_sum_exact(fld, dec)
    decomp = decompose_gauss_sum(gs, ps, p)
    _, b = stickelberger_b(p, p1)
    r_stickelberger, _ = compute_r(hyp.f, hyp.f_tilde, b)
    norm = gs.norm()
    return dict(
        p=p, p1=p1, q=fld.q, w=dec.w, g=dec.g, r=decomp.r, r_stickelberger=r_stickelberger,
        coefficients=list(decomp.coefficients), M0=decomp.M0,
        srg_signature=decomp.srg_signature(), norm=norm, norm_ok=norm == fld.q,
    )


# -- argument handling ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cap", type=int, default=None, help="max q-1 for enumeration")
    common.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="cyclosrg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("check", "verify"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--p1", type=int, required=True)
        sp.add_argument("--m", type=int, default=1)

    sp = sub.add_parser("scan", parents=[common])
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--p1-max", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--srg-only", action="store_true", help="only print predicted srg")

    sub.add_parser("catalog", parents=[common])

    sp = sub.add_parser("decompose", parents=[common])
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--p1", type=int, required=True)
    return parser


def _emit_records(records: list[ReportRecord], fmt: str, out) -> None:
    if fmt == "json":
        out.write("\n".join(r.to_json() for r in records) + "\n")
    elif fmt == "csv":
        out.write(records_to_csv(records))
    else:
        out.write("\n".join(r.to_text() for r in records) + "\n")


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps([{k: str(v) if isinstance(v, int) and not isinstance(v, bool) and abs(v) > 2**53 else v
                               for k, v in row.items()} for row in rows]) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        for row in rows:
            out.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        config = RunConfig(
            enumeration_cap=args.cap if args.cap is not None else default_enumeration_cap(),
            oracle_cap=args.oracle_cap,
            workers=args.workers if args.workers is not None else RunConfig().workers,
            output_format=args.format,
        )
        if args.command == "check":
            records = [cmd_check(args.p, args.p1, args.m)]
        elif args.command == "verify":
            records = [cmd_verify(args.p, args.p1, args.m, config)]
        elif args.command == "scan":
            records = cmd_scan(args.p_max, args.p1_max, args.m, args.verify, config)
            if args.srg_only:
                records = [r for r in records if r.verdict == Verdict.SRG.value]
        elif args.command == "catalog":
            _emit_rows(cmd_catalog(config.enumeration_cap), args.format, out)
            return EXIT_OK
        else:
            row = cmd_decompose(args.p, args.p1, config.enumeration_cap)
            _emit_rows([row], args.format, out)
            return EXIT_MISMATCH if row["r"] != row["r_stickelberger"] or not row["norm_ok"] else EXIT_OK
    except (ValueError, CycloSrgError) as exc:
        print(f"cyclosrg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit_records(records, args.format, out)
    return EXIT_MISMATCH if any(r.status == "mismatch" for r in records) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
