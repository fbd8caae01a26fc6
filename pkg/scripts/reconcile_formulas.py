"""Compare every published composed QCMI expression against the pipeline.

Writes the per-point CSV report and prints one summary line per form;
exits nonzero only if the eigenvalue-level oracle disagrees.

    python scripts/reconcile_formulas.py --out results/reconcile.csv
"""

import argparse
import sys
from pathlib import Path

from qcmi_accel.sweep import compare_summary_text, render_compare, run_compare


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=Path("results/reconcile.csv"))
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--r2", type=float, default=None, help="fixed r2 for the general two-party forms")
    args = p.parse_args()
    res = run_compare(steps=args.steps, r2_value=args.r2)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(render_compare(res, "csv"), encoding="utf-8")
    print(f"wrote {len(res.rows)} rows to {args.out}")
    print(compare_summary_text(res), end="")
    return 0 if res.eigen_ok else 2


if __name__ == "__main__":
    sys.exit(main())
