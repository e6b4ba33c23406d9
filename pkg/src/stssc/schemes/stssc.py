"""Space-time coding of superimposed symbols at the relays"""
from typing import Optional

import numpy as np

from stssc.channel.model import ChannelRealization, awgn
from stssc.core.errors import UsageError
from stssc.phy.framing import SourceBlock
from stssc.schemes.common import (
    TransmissionTrace,
    broadcast_phase,
    forwarding_order,
    relay_gains,
    slots_per_block,
)
from stssc.stbc.design import OrthogonalDesign, relay_columns

__all__ = ["stssc_forward", "stssc_pipeline", "stssc_relay_encode"]


def stssc_relay_encode(
        q_r: np.ndarray,
        design: OrthogonalDesign,
        r: int,
        g_r: float) -> np.ndarray:
    """Relay r's column of the code applied to its superimposed symbols

    z_r = g_r sum_t (a_t q_r[t] + b_t q_r[t]*). Nothing is decoded.

    :param q_r: K received samples (or a stack of them, ... x K)
    :return: T samples (or ... x T)
    """
    q_r = np.asarray(q_r, dtype=complex)
    if q_r.shape[-1] != design.K:
        raise UsageError(
            "%s needs %d superimposed symbols, got %d" % (
                design.name, design.K, q_r.shape[-1]))
    a, b = relay_columns(design, r)
    return g_r * (q_r @ a + q_r.conj() @ b)


def stssc_forward(
        z_r: np.ndarray,
        ch: ChannelRealization,
        r: int,
        rng: np.random.Generator) -> np.ndarray:
    """Relay r's forwarding phase as seen at the destination

    y[tau] = h_rd z_r[tau] + w[tau]
    """
    z_r = np.asarray(z_r, dtype=complex)
    return ch.h_rd[r] * z_r + awgn(z_r.shape[-1], ch.sigma2, rng)


def stssc_pipeline(
        block: SourceBlock,
        ch: ChannelRealization,
        rng: np.random.Generator,
        design: OrthogonalDesign,
        permute_relays: bool = False,
        phases_override: Optional[int] = None) -> TransmissionTrace:
    """Broadcast, relay coding and sequential forwarding for one block"""
    # pylint:disable=too-many-arguments
    if ch.relays > design.M:
        raise UsageError(
            "%s serves at most %d relays, got %d" % (
                design.name, design.M, ch.relays))
    q = broadcast_phase(block, ch, rng)
    gains = relay_gains(ch, block.kappa ** 2)
    order = forwarding_order(ch.relays, rng, permute_relays)
    y_rd = np.zeros((ch.relays, design.T), dtype=complex)
    for r in order:
        z_r = stssc_relay_encode(q[r], design, r, gains[r])
        y_rd[r] = stssc_forward(z_r, ch, r, rng)
    return TransmissionTrace(
        scheme="stssc",
        y_rd=y_rd,
        y_direct=None,
        q_r=q,
        gains=gains,
        slots_used=slots_per_block(
            "stssc", ch.sources, ch.relays, design.K, design.T, phases_override),
        order=order)
