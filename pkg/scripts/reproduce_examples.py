"""Run the worked instances end to end and print prediction next to observation.

    python3 scripts/reproduce_examples.py [--skip-large]
"""
import argparse
import time

from cyclosrg.cli import cmd_decompose, cmd_verify
from cyclosrg.config import RunConfig
from cyclosrg.index_theory import Verdict, find_difference_set_cosets, predict

SMALL = [(3, 11), (5, 31), (2, 127), (5, 11), (2, 31)]
LARGE = [(5, 19), (11, 43), (7, 37)]


def show(p, p1, config):
    t0 = time.perf_counter()
    rec = cmd_verify(p, p1, 1, config)
    print(rec.to_text())
    pred = predict(p, p1, 1)
    if pred.verdict is Verdict.SRG:
        idx, ds = find_difference_set_cosets(p, p1, pred.ell)
        print(f"  difference set from cosets {idx}: ({ds.v}, {ds.k}, {ds.lam})")
    print(f"  total {time.perf_counter() - t0:.2f} s\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip-large", action="store_true", help="skip q > 10^6")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    config = RunConfig() if args.workers is None else RunConfig(workers=args.workers)

    for p, p1 in SMALL + ([] if args.skip_large else LARGE):
        show(p, p1, config)

    for m in (2, 3):
        pred = predict(11, 43, m)
        print(f"(11, 43, m={m}): {pred.verdict.value}, ell={pred.ell}, eps={pred.epsilon}, "
              f"r={pred.params.r}, eigenvalues have {len(str(pred.eigenvalue_base))} digits")

    for p, p1 in [(3, 11), (11, 43)]:
        row = cmd_decompose(p, p1)
        print(f"decompose({p}, {p1}): r={row['r']} coefficients={row['coefficients']} norm_ok={row['norm_ok']}")


if __name__ == "__main__":
    main()
