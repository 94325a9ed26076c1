"""Scan (p, p1) pairs for several m and write one CSV of predictions.

Rows where the m = 1 instance fits under the cap are also verified by
enumeration.

    python3 scripts/scan_families.py --p-max 12 --p1-max 130 --out scan.csv
"""
import argparse
import sys

from cyclosrg.cli import cmd_scan
from cyclosrg.config import RunConfig
from cyclosrg.report import records_to_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-max", type=int, default=12)
    ap.add_argument("--p1-max", type=int, default=130)
    ap.add_argument("--m", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--verify-cap", type=int, default=10**6, help="enumeration cap for the m = 1 check")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    records = []
    for m in args.m:
        verify = m == 1
        config = RunConfig(enumeration_cap=args.verify_cap, workers=1)
        records += cmd_scan(args.p_max, args.p1_max, m, verify=verify, config=config)

    text = records_to_csv(records)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    n_srg = sum(r.verdict == "srg" for r in records)
    n_bad = sum(r.status == "mismatch" for r in records)
    print(f"{len(records)} instances, {n_srg} predicted srg, {n_bad} mismatches", file=sys.stderr)
    return 2 if n_bad else 0


if __name__ == "__main__":
    sys.exit(main())
