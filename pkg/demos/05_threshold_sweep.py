"""Small threshold sweep written as CSV to stdout."""
import sys

from monotree import SweepConfig, threshold_sweep

cfg = SweepConfig(r=2, n_grid=[200, 400, 800], p_rule="thm16i", trials=5, seed=11, solver="gnp2")
report = threshold_sweep(cfg)
sys.stdout.write(report.to_csv())
for n in cfg.n_grid:
    print(f"n={n}: success fraction {report.success_fraction(n):.2f}", file=sys.stderr)
