"""
Monte Carlo scan for violations of monotonicity of Q^f under local channels
"""
import hashlib
import json
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..config import VIOLATION_EPSILON, SCAN_CHUNK_SIZE, MAX_WORKERS, DEFAULT_SEED
from ..errors import UsageError
from ..f_catalog.functions import FOpSpec
from ..hermitian_core.sampling import RngStream, measure_label, random_density_hs
from ..qfcorr.closed_form import qf_two_qubit
from ..utils.logging_config import get_logger
from ..utils.parallel import ordered_map
from .base import apply_local
from .semiclassical import random_semiclassical_qubit
from .unital import random_unital_qubit

logger = get_logger(__name__)

CHANNEL_FAMILIES = {
    'unital': random_unital_qubit,
    'semiclassical': random_semiclassical_qubit,
}


@dataclass(frozen=True)
class ScanRecord:
    """One (state, channel) trial."""
    sample_index: int
    p: float
    q_in: float
    q_out: float
    channel_digest: str

    @property
    def violation(self) -> float:
        return self.q_out - self.q_in


@dataclass
class ScanReport:
    """
    Aggregate of a monotonicity scan. Records are kept in sample order.
    """
    f_label: str
    channel: str
    side: str
    master_seed: int
    measure: str = 'hs'
    epsilon: float = VIOLATION_EPSILON
    records: List[ScanRecord] = field(default_factory=list)
    violation_count: int = 0
    max_violation: float = float('-inf')

    def add_record(self, record: ScanRecord):
        """Add one trial and update the counters."""
        self.records.append(record)
        if record.violation > self.epsilon:
            self.violation_count += 1
        self.max_violation = max(self.max_violation, record.violation)

    @property
    def n_samples(self) -> int:
        return len(self.records)

    @property
    def violation_fraction(self) -> float:
        return self.violation_count / self.n_samples if self.records else 0.0

    def thinned_records(self, max_rows: int) -> List[ScanRecord]:
        """At most max_rows records, chosen by uniform stride."""
        if max_rows <= 0 or self.n_samples <= max_rows:
            return list(self.records)
        stride = int(np.ceil(self.n_samples / max_rows))
        return self.records[::stride]

    def get_summary(self):
        """Get summary of results."""
        q_in = [r.q_in for r in self.records]
        return {
            'f': self.f_label,
            'channel': self.channel,
            'side': self.side,
            'seed': self.master_seed,
            'measure': self.measure,
            'epsilon': self.epsilon,
            'n_samples': self.n_samples,
            'violation_count': self.violation_count,
            'violation_fraction': self.violation_fraction,
            'max_violation': self.max_violation if self.records else 0.0,
            'mean_q_in': float(np.mean(q_in)) if q_in else 0.0,
        }


def channel_digest(channel) -> str:
    """Short sha256 of the channel parameters."""
    canonical = json.dumps(channel.parameters(), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]


def scan_sample(index: int, f: FOpSpec, master_seed: int, channel: str = 'unital', side: str = 'A',
                rank: Optional[int] = None) -> ScanRecord:
    """
    One trial. The generator of RngStream(master_seed, index) draws the state
    first and the channel second. rank selects the induced state measure
    (None is Hilbert-Schmidt).
    """
    gen = RngStream(master_seed, index).generator()
    rho = random_density_hs(4, gen, dims=[2, 2], rank=rank)
    ch = CHANNEL_FAMILIES[channel](gen)
    rho_out = apply_local(ch, rho, side)

    q_in = qf_two_qubit(rho, f).value
    q_out = qf_two_qubit(rho_out, f).value

    return ScanRecord(
        sample_index=index,
        p=ch.mixing_parameter,
        q_in=q_in,
        q_out=q_out,
        channel_digest=channel_digest(ch),
    )


def monotonicity_scan(n_samples: int, f: FOpSpec, master_seed: int = DEFAULT_SEED, channel: str = 'unital',
                      side: str = 'A', epsilon: float = VIOLATION_EPSILON, max_workers: int = MAX_WORKERS,
                      chunk_size: int = SCAN_CHUNK_SIZE, rank: Optional[int] = None) -> ScanReport:
    """
    Draw n_samples random two-qubit states (Hilbert-Schmidt, or induced of the
    given rank) and random local channels, and count samples with
    Q^f(out) - Q^f(in) > epsilon.

    Args:
        n_samples: Number of trials (0 gives an empty report)
        f: FOpSpec
        master_seed: Seed; sample k uses RngStream(master_seed, k)
        channel: 'unital' (two-unitary mixtures) or 'semiclassical'
        side: Subsystem the channel acts on, 'A' or 'B'
        epsilon: Violation threshold
        max_workers: Worker threads
        chunk_size: Samples per task
        rank: Induced-measure rank of the states (None is Hilbert-Schmidt)

    Returns:
        ScanReport with records in sample order
    """
    if n_samples < 0:
        raise UsageError(f"Number of samples must be nonnegative, got {n_samples}")
    if channel not in CHANNEL_FAMILIES:
        raise UsageError(f"Unknown channel family {channel!r} (expected {', '.join(CHANNEL_FAMILIES)})")
    side = str(side).upper()
    if side not in ('A', 'B'):
        raise UsageError(f"Channel side must be A or B, got {side!r}")

    report = ScanReport(f_label=f.label, channel=channel, side=side, master_seed=master_seed,
                        measure=measure_label(rank), epsilon=epsilon)
    if n_samples == 0:
        return report

    chunks = [range(start, min(start + chunk_size, n_samples)) for start in range(0, n_samples, chunk_size)]
    logger.info(f"Scanning {n_samples} samples (f={f.label}, channel={channel}, side {side}, "
                f"measure {report.measure}) in {len(chunks)} chunks")

    def run_chunk(indices):
        records = [scan_sample(i, f, master_seed, channel, side, rank) for i in indices]
        logger.debug(f"Finished samples {indices.start}..{indices.stop - 1}")
        return records

    for records in ordered_map(run_chunk, chunks, max_workers=max_workers, label='scan chunk'):
        for record in records:
            report.add_record(record)

    summary = report.get_summary()
    logger.info(f"Scan complete: {summary['violation_count']} violations "
                f"({summary['violation_fraction']:.3e}), max violation {summary['max_violation']:.3e}")
    return report
