"""Monte Carlo harness: configuration, link jobs, sweeps and CSV output"""
from .config import SimConfig, parse_snr
from .jobs import LinkJob, get_job
from .output import compare_runs, emit_csv, format_csv
from .run import SimRecord, run_point, run_sweep

__all__ = [
    "LinkJob",
    "SimConfig",
    "SimRecord",
    "compare_runs",
    "emit_csv",
    "format_csv",
    "get_job",
    "parse_snr",
    "run_point",
    "run_sweep",
]
