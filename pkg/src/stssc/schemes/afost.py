"""Amplify-and-forward of the superimposed symbols, one relay at a time"""
from typing import Optional

import numpy as np

from stssc.channel.model import ChannelRealization, awgn
from stssc.phy.framing import SourceBlock
from stssc.schemes.common import (
    TransmissionTrace,
    broadcast_phase,
    forwarding_order,
    relay_gains,
    slots_per_block,
)

__all__ = ["af_ost_pipeline"]


def af_ost_pipeline(
        block: SourceBlock,
        ch: ChannelRealization,
        rng: np.random.Generator,
        T: Optional[int] = None,
        permute_relays: bool = False,
        phases_override: Optional[int] = None) -> TransmissionTrace:
    """Each relay forwards g_r q_r in its own K-slot phase

    :param T: coherence length, only used by `phases_override`
    """
    # pylint:disable=too-many-arguments,invalid-name
    K = block.X.shape[1]
    q = broadcast_phase(block, ch, rng)
    gains = relay_gains(ch, block.kappa ** 2)
    order = forwarding_order(ch.relays, rng, permute_relays)
    y_rd = np.zeros((ch.relays, K), dtype=complex)
    for r in order:
        z_r = gains[r] * q[r]
        y_rd[r] = ch.h_rd[r] * z_r + awgn(K, ch.sigma2, rng)
    return TransmissionTrace(
        scheme="afost",
        y_rd=y_rd,
        y_direct=None,
        q_r=q,
        gains=gains,
        slots_used=slots_per_block(
            "afost", ch.sources, ch.relays, K, T or K, phases_override),
        order=order)
