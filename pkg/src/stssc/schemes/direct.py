"""Point-to-point reference"""
import math
from typing import Optional

import numpy as np

from stssc.channel.model import ChannelRealization, awgn
from stssc.phy.framing import SourceBlock
from stssc.schemes.common import TransmissionTrace, check_block, slots_per_block

__all__ = ["direct_pipeline"]


def direct_pipeline(
        block: SourceBlock,
        ch: ChannelRealization,
        rng: np.random.Generator,
        T: Optional[int] = None,
        phases_override: Optional[int] = None) -> TransmissionTrace:
    """Each source sends its K symbols straight to its destination

    y[s, t] = sqrt(rho) h_sd[s] X[s, t] + w
    """
    # pylint:disable=invalid-name
    check_block(block, ch)
    N, K = block.X.shape
    signal = math.sqrt(ch.rho) * ch.h_sd[:, None] * block.X
    y = signal + awgn((N, K), ch.sigma2, rng)
    degenerate = tuple(int(s) for s in np.flatnonzero(ch.h_sd == 0))
    return TransmissionTrace(
        scheme="direct",
        y_rd=None,
        y_direct=y,
        q_r=None,
        gains=np.zeros(0),
        slots_used=slots_per_block("direct", N, ch.relays, K, T or K, phases_override),
        degenerate=degenerate)
