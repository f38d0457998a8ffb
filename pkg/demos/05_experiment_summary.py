"""
Reproducible experiments and the summary table
==============================================

Run the three experiments the summary joins, write them to a scratch
directory and print the comparison tables. The same runs are available from
the shell as ``qwave qft --table``, ``qwave baseline`` and ``qwave walk
--mode scaling``.
"""

import tempfile
from pathlib import Path

from qwave.harness import ExperimentConfig, render_summary, run_experiment, summary_table

out = Path(tempfile.mkdtemp(prefix="qwave-demo-"))
runs = [
    ExperimentConfig("qft", {"mode": "table", "n_max": 10}, out=str(out / "fourier.csv")),
    ExperimentConfig("baseline", {"n": 256, "target": 0, "trials": 10000}, seed=1, out=str(out / "search.csv")),
    ExperimentConfig("walk", {"mode": "scaling", "d": 3, "coin": "auto", "steps": None, "sides": [4, 6, 8, 10]},
                     out=str(out / "walk_d3.csv")),
]
for cfg in runs:
    res = run_experiment(cfg)
    print(cfg.subcommand, "->", cfg.out, "status", res.status)

print((out / "search.csv").read_text())
print(render_summary(summary_table(str(out))))
