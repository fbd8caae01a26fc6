"""Write plot-ready QCMI/entropy curves for every scenario.

One whitespace-separated ``.dat`` file per scenario (65 points on [0, pi/4],
analytic comparison included), plus ``w_bc_grid.dat`` with an independent
(r1, r2) grid for the two-party case.

    python scripts/reproduce_figures.py --outdir results/figures
"""

import argparse
from pathlib import Path

from qcmi_accel.infomeasures import Scenario
from qcmi_accel.sweep import SweepConfig, render_sweep, run_sweep


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", type=Path, default=Path("results/figures"))
    p.add_argument("--steps", type=int, default=64)
    args = p.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    for sc in Scenario:
        cfg = SweepConfig(sc, steps=args.steps, fmt="plotdata", compare_analytic=True)
        res = run_sweep(cfg)
        path = args.outdir / f"{sc.value.lower()}.dat"
        path.write_text(render_sweep(res), encoding="utf-8")
        q = [row.qcmi for row in res.rows]
        print(f"{path}: QCMI {q[0]:.6f} -> {q[-1]:.6f}, analytic {res.status}")

    cfg = SweepConfig(Scenario.W_BC, steps=16, r2_mode="grid", fmt="plotdata")
    path = args.outdir / "w_bc_grid.dat"
    path.write_text(render_sweep(run_sweep(cfg)), encoding="utf-8")
    print(f"{path}: {len(cfg.points())} (r1, r2) points")


if __name__ == "__main__":
    main()
