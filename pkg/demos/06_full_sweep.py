"""A full experiment sweep, the way the CLI runs it.

Builds a sweep config in code (prior noise over the 0..0.8 grid, ten seeded
runs per level, the three random baselines), executes it, prints the
aggregate table, and writes the row-level CSV next to this script.  The
same config as JSON fed to `imperfect-teaching sweep` produces a
byte-identical file.

Run:
    python demos/06_full_sweep.py
"""

import os
import tempfile

from imperfect_teaching.harness import SweepConfig, run_sweep, summarize, write_csv
from imperfect_teaching.scenarios import ScenarioConfig


def main() -> None:
    out_path = os.path.join(tempfile.gettempdir(), "prior_sweep_demo.csv")
    config = SweepConfig(
        scenario=ScenarioConfig(
            regime="well_behaved", n_examples=80, n_hypotheses=16,
            rate=0.5, seed=12, min_alt_error=0.2,
        ),
        epsilon=0.01,
        noise_kind="prior",
        delta_grid=(0.0, 0.2, 0.4, 0.6, 0.8),
        runs=10,
        baselines=("Rnd:0.5", "Rnd:1", "Rnd:1.5"),
        seed=99,
        output_path=out_path,
    )
    rows = run_sweep(config)
    write_csv(rows, config.output_path)

    print("delta  teacher    mean error   std        mean size")
    for cell in summarize(rows):
        print(f"{cell['delta']:5.1f}  {cell['teacher']:9s} "
              f"{cell['mean_error']:.6f}   {cell['std_error']:.6f}   "
              f"{cell['mean_size']:5.1f}")
    print(f"\n{len(rows)} rows written to {config.output_path}")
    print("Columns: kind,delta,run,teacher,set_size,error,reached,"
          "error_bound,eps_hat,oracle_size,m1,m2,conditional_on")


if __name__ == "__main__":
    main()
