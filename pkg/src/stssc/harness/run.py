"""Monte Carlo driver

A point simulates `packets` packet-sets. A packet-set is one packet per
source, framed into coherence blocks with a fresh channel per block, and
draws everything from its own generator keyed by (seed, point, index).
Counts come back as integer vectors and are summed, so the result does
not depend on how the work was split across workers.
"""
from dataclasses import asdict, dataclass
from functools import partial
import logging
import math
from operator import add
import time
from typing import List, Optional

import numpy as np

from stssc.channel.model import draw_channel, rng_stream
from stssc.core.util import get_context
from stssc.harness.config import SimConfig
from stssc.harness.jobs import LinkJob, get_job
from stssc.phy.framing import deframe, frame_packets

__all__ = ["SimRecord", "run_point", "run_sweep", "simulate_packet_set"]

LOGGER = logging.getLogger(__name__)

# bit errors, bits, packet errors, packets, slots, bits of correct packets,
# decoder candidate evaluations
_COUNTS = 7


@dataclass(frozen=True)
class SimRecord:
    """One SNR point of one configuration"""
    # pylint:disable=too-many-instance-attributes
    snr_db: float
    ber: float
    per: float
    throughput_bps: float
    bits_total: int
    bit_errors: int
    packets_total: int
    packet_errors: int
    slots_total: int
    seed: int
    config_hash: str
    ber_stderr: Optional[float] = None
    per_stderr: Optional[float] = None

    @classmethod
    def from_counts(cls, config: SimConfig, snr_db: float, counts) -> "SimRecord":
        """Build a record from summed integer counts"""
        bit_errors, bits, packet_errors, packets, slots, correct_bits = (
            int(v) for v in counts[:6])
        ber = bit_errors / bits
        per = packet_errors / packets
        return cls(
            snr_db=float(snr_db),
            ber=ber,
            per=per,
            throughput_bps=correct_bits / slots * config.symbol_rate,
            bits_total=bits,
            bit_errors=bit_errors,
            packets_total=packets,
            packet_errors=packet_errors,
            slots_total=slots,
            seed=config.seed,
            config_hash=config.config_hash,
            ber_stderr=math.sqrt(ber * (1 - ber) / bits),
            per_stderr=math.sqrt(per * (1 - per) / packets))

    def as_row(self, stderr: bool = False) -> dict:
        """Record as an ordered dict of CSV columns"""
        row = asdict(self)
        if not stderr:
            row.pop("ber_stderr")
            row.pop("per_stderr")
        return row


def simulate_packet_set(
        job: LinkJob,
        rho: float,
        point_index: int,
        index: int) -> np.ndarray:
    """Send one packet per source and count what the destination got wrong

    :return: int64 counts, see `_COUNTS`
    """
    config = job.config
    rng = rng_stream(config.seed, point_index, index)
    sources, relays = config.sources, config.relays
    bits = rng.integers(0, 2, size=(sources, config.packet_bits))
    blocks = frame_packets(bits, job.constellation, job.design.K, config.normalization)

    decided = []
    slots = evaluations = 0
    for block in blocks:
        ch = draw_channel(config.fading, sources, relays, rho, rng, config.noise_variance)
        trace, result = job.execute(block, ch, rng)
        decided.append(result.indices)
        slots += trace.slots_used
        evaluations += result.evaluations

    recovered = deframe(decided, job.constellation, config.packet_bits)
    errors = np.sum(recovered != bits, axis=1)
    correct = int(np.sum(errors == 0))
    return np.array([
        int(np.sum(errors)),
        bits.size,
        sources - correct,
        sources,
        slots,
        correct * config.packet_bits,
        evaluations,
    ], dtype=np.int64)


def _partitions(config: SimConfig) -> int:
    return max(1, min(config.packets, 4 * config.workers))


def run_point(
        config: SimConfig,
        snr_db: float,
        point_index: int = 0,
        context=None) -> SimRecord:
    """Simulate one SNR point

    :param config: resolved config
    :param snr_db: SNR in dB
    :param point_index: position in the sweep, keys the generators
    :param context: pysparkling context to reuse, one is made otherwise
    """
    config.validate()
    if context is None:
        with get_context(config.workers) as context_:
            return run_point(config, snr_db, point_index, context_)

    job = get_job(config)
    rho = config.rho(snr_db)
    start_time = time.time()
    counts = context.parallelize(range(config.packets), _partitions(config)) \
        .map(partial(simulate_packet_set, job, rho, point_index)) \
        .fold(np.zeros(_COUNTS, dtype=np.int64), add)
    record = SimRecord.from_counts(config, snr_db, counts)
    LOGGER.debug("%d decoder candidate evaluations", counts[6])
    LOGGER.info(
        "%s %s N=%d M=%d %s snr=%.2f dB ber=%.3e per=%.3e throughput=%.4g bps (%.1fs)",
        config.scheme, config.code, config.sources, config.relays,
        config.modulation, snr_db, record.ber, record.per,
        record.throughput_bps, time.time() - start_time)
    return record


def run_sweep(config: SimConfig) -> List[SimRecord]:
    """One record per SNR value, in order"""
    config.validate()
    with get_context(config.workers) as context:
        return [run_point(config, snr_db, index, context)
                for index, snr_db in enumerate(config.snr_db)]
