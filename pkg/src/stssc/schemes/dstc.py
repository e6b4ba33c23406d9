"""Decode-and-forward distributed space-time coding

Sources take turns. After each source's broadcast phase every relay
decides the K symbols on its own and the relays send the code together,
relay r emitting column r at amplitude sqrt(rho / M)."""
import math
from typing import Optional

import numpy as np

from stssc.channel.model import ChannelRealization, awgn
from stssc.core.errors import UsageError
from stssc.phy.constellation import Constellation
from stssc.phy.framing import SourceBlock
from stssc.schemes.common import TransmissionTrace, slots_per_block
from stssc.stbc.design import OrthogonalDesign, codeword

__all__ = ["dstc_pipeline"]


def relay_decide(
        q: np.ndarray,
        h: complex,
        rho: float,
        kappa: float,
        c: Constellation) -> np.ndarray:
    """Per-symbol nearest-point decision at one relay

    :return: point indices; a zero gain decides index 0 everywhere
    """
    scale = math.sqrt(rho) * h * kappa
    if scale == 0:
        return np.zeros(q.shape, dtype=np.int64)
    return c.nearest(q / scale)


def dstc_pipeline(
        block: SourceBlock,
        ch: ChannelRealization,
        rng: np.random.Generator,
        design: OrthogonalDesign,
        c: Constellation,
        phases_override: Optional[int] = None,
        forced_relay_decisions: Optional[np.ndarray] = None) -> TransmissionTrace:
    """Sequential broadcasts, relay decisions, joint code forwarding

    :param forced_relay_decisions: N x M x K indices replacing the relay
        decisions (fault injection for checks)
    """
    # pylint:disable=too-many-arguments,too-many-locals,invalid-name
    N, K = block.X.shape
    M = ch.relays
    if N != ch.sources:
        raise UsageError("block has %d sources but the channel has %d" % (N, ch.sources))
    if K != design.K:
        raise UsageError("%s needs %d symbols per block, got %d" % (design.name, design.K, K))
    if M > design.M:
        raise UsageError("%s serves at most %d relays, got %d" % (design.name, design.M, M))

    amplitude = math.sqrt(ch.rho / M)
    q = np.zeros((N, M, K), dtype=complex)
    decisions = np.zeros((N, M, K), dtype=np.int64)
    y_rd = np.zeros((N, design.T), dtype=complex)
    for s in range(N):
        q[s] = (math.sqrt(ch.rho) * np.outer(ch.h_sr[s], block.X[s])
                + awgn((M, K), ch.sigma2, rng))
        for r in range(M):
            decisions[s, r] = relay_decide(q[s, r], ch.h_sr[s, r], ch.rho, block.kappa, c)
        if forced_relay_decisions is not None:
            decisions[s] = forced_relay_decisions[s]
        forwarded = np.zeros(design.T, dtype=complex)
        for r in range(M):
            column = codeword(design, c.points[decisions[s, r]])[:, r]
            forwarded += ch.h_rd[r] * column
        y_rd[s] = amplitude * forwarded + awgn(design.T, ch.sigma2, rng)

    return TransmissionTrace(
        scheme="dstc",
        y_rd=y_rd,
        y_direct=None,
        q_r=q,
        gains=np.full(M, amplitude),
        slots_used=slots_per_block("dstc", N, M, K, design.T, phases_override),
        order=tuple(range(M)),
        relay_decisions=decisions)
