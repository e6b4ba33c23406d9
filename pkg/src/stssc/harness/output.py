"""CSV results and overlay tables"""
import os
from typing import List, Optional, Sequence

import pandas as pd

from stssc.core.errors import ConfigurationError, OutputError
from stssc.core.util import atomic_write
from stssc.harness.run import SimRecord

__all__ = ["RECORD_COLUMNS", "METRICS", "compare_runs", "emit_csv", "format_csv", "read_csv"]

RECORD_COLUMNS = [
    "snr_db", "ber", "per", "throughput_bps", "bits_total", "bit_errors",
    "packets_total", "packet_errors", "slots_total", "seed", "config_hash",
]
STDERR_COLUMNS = ["ber_stderr", "per_stderr"]
METRICS = ("ber", "per", "throughput_bps")

FLOAT_FORMAT = "%.17g"


def _to_text(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def format_csv(records: Sequence[SimRecord], stderr: bool = False) -> str:
    """Records as CSV text

    :param records: simulation records
    :param stderr: add the standard-error columns
    """
    columns = RECORD_COLUMNS + (STDERR_COLUMNS if stderr else [])
    df = pd.DataFrame([r.as_row(stderr) for r in records], columns=columns)
    return _to_text(df)


def emit_csv(records: Sequence[SimRecord], path: str, stderr: bool = False):
    """Write records to `path` in one step

    :param records: simulation records
    :param path: destination file, its directory must exist
    :param stderr: add the standard-error columns
    """
    text = format_csv(records, stderr)
    try:
        with atomic_write(path) as f_obj:
            f_obj.write(text)
    except OutputError:
        raise
    except OSError as exc:
        raise OutputError("cannot write %s: %s" % (path, exc))


def read_csv(path: str) -> pd.DataFrame:
    """Read a results file written by `emit_csv`"""
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except OSError as exc:
        raise OutputError("cannot read %s: %s" % (path, exc))


def _labels(paths: Sequence[str]) -> List[str]:
    labels = []
    for path in paths:
        stem = os.path.splitext(os.path.basename(path))[0]
        label, count = stem, 1
        while label in labels:
            count += 1
            label = "%s_%d" % (stem, count)
        labels.append(label)
    return labels


def compare_runs(
        paths: Sequence[str],
        out: Optional[str] = None,
        metric: str = "ber") -> pd.DataFrame:
    """Overlay several runs on their shared SNR grid

    Columns are `snr_db` then `<file stem>_<metric>` per input.

    :param paths: CSV files written by `emit_csv`
    :param out: optional file for the table
    :param metric: ber, per or throughput_bps
    """
    if not paths:
        raise ConfigurationError("compare needs at least one input")
    if metric not in METRICS:
        raise ConfigurationError(
            "unknown metric %r, expected one of %s" % (metric, ", ".join(METRICS)))
    frames = [read_csv(path) for path in paths]
    grid = list(frames[0]["snr_db"])
    for path, df in zip(paths[1:], frames[1:]):
        other = list(df["snr_db"])
        if other != grid:
            differing = sorted(set(grid).symmetric_difference(other)) or [
                a for a, b in zip(grid, other) if a != b]
            raise ConfigurationError(
                "%s does not share the SNR grid of %s, differing points: %s" % (
                    path, paths[0], ", ".join("%g" % v for v in differing)))

    table = pd.DataFrame({"snr_db": grid})
    for label, df in zip(_labels(paths), frames):
        table["%s_%s" % (label, metric)] = df[metric].values
    if out is not None:
        try:
            with atomic_write(out) as f_obj:
                f_obj.write(_to_text(table))
        except OutputError:
            raise
        except OSError as exc:
            raise OutputError("cannot write %s: %s" % (out, exc))
    return table
