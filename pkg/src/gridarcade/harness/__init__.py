"""Experiment harness: runs, sweeps, summaries, benchmarks, replays."""

from gridarcade.harness.bench import bench, bench_with_agent, compare_engines
from gridarcade.harness.experiment import (
    ExperimentSpec,
    RunRecord,
    derive_cell_seeds,
    read_records,
    run,
    run_cell,
    write_records,
)
from gridarcade.harness.stats import (
    final_window_mean,
    select_alpha,
    summarize_final100,
    write_summary_csv,
)

__all__ = [
    "ExperimentSpec",
    "RunRecord",
    "bench",
    "bench_with_agent",
    "compare_engines",
    "derive_cell_seeds",
    "final_window_mean",
    "read_records",
    "run",
    "run_cell",
    "select_alpha",
    "summarize_final100",
    "write_records",
    "write_summary_csv",
]
