"""
Machine-readable reports: JSON documents and the scan CSV
"""
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from ..config import CSV_MAX_ROWS, FLOAT_DIGITS
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

CSV_HEADER = 'sample_index,p,q_in,q_out,violation'


def format_float(value) -> str:
    """Float as text with FLOAT_DIGITS significant digits and a '.' decimal point."""
    value = float(value)
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return format(value, f'.{FLOAT_DIGITS}g')


def _normalize(obj):
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _normalize(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        # JSON has no inf or nan; finite floats keep their shortest round-trip repr
        return value if math.isfinite(value) else format_float(value)
    return obj


def config_digest(config: dict) -> str:
    """sha256 of the canonical JSON of a run configuration."""
    canonical = json.dumps(_plain(config), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


class ReportWriter:
    """
    Writes reports deterministically: sorted keys, round-trip exact floats
    and a trailing newline. Nothing time- or host-dependent is emitted.
    """

    def __init__(self, stream=None):
        self.stream = stream

    def dumps(self, report: dict) -> str:
        return json.dumps(_normalize(report), indent=2, sort_keys=True) + "\n"

    def write_json(self, report: dict, path=None):
        """
        Write a JSON report to `path`, or to stdout when path is None.

        Returns:
            Path written, or None for stdout
        """
        text = self.dumps(report)
        if path is None:
            stream = self.stream if self.stream is not None else sys.stdout
            stream.write(text)
            stream.flush()
            return None

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', newline='\n') as f:
            f.write(text)
        logger.info(f"Wrote report to {path}")
        return path

    def write_scan_csv(self, report, path, full: bool = False, max_rows: int = CSV_MAX_ROWS):
        """
        Write scan records as CSV (sample_index,p,q_in,q_out,violation).

        Args:
            report: ScanReport
            path: Output file
            full: Write every record instead of a uniform-stride thinning
            max_rows: Row cap when not full

        Returns:
            Number of data rows written
        """
        records = report.records if full else report.thinned_records(max_rows)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, 'w', newline='\n') as f:
            f.write(CSV_HEADER + '\n')
            for r in records:
                f.write(','.join([
                    str(r.sample_index),
                    format_float(r.p),
                    format_float(r.q_in),
                    format_float(r.q_out),
                    format_float(r.violation),
                ]) + '\n')

        logger.info(f"Wrote {len(records)} of {report.n_samples} scan records to {path}")
        return len(records)
