"""Pieces shared by every scheme"""
from dataclasses import dataclass
import math
from typing import Optional, Tuple

import numpy as np

from stssc.channel.model import ChannelRealization, awgn
from stssc.core.errors import ConfigurationError, UsageError
from stssc.phy.framing import SourceBlock

__all__ = [
    "SCHEME_NAMES",
    "TransmissionTrace",
    "broadcast_phase",
    "check_block",
    "forwarding_order",
    "relay_gain",
    "relay_gains",
    "slots_per_block",
]

SCHEME_NAMES = ("stssc", "afost", "dstc", "direct")


@dataclass(frozen=True, eq=False)
class TransmissionTrace:
    """What the measured destination observed for one block

    y_rd rows are forwarding phases: one per relay for stssc (T samples)
    and afost (K samples), one per source for dstc (T samples).
    q_r keeps the relay observations for checks: M x K, or N x M x K for
    dstc where every source has its own broadcast phase."""
    # pylint:disable=too-many-instance-attributes
    scheme: str
    y_rd: Optional[np.ndarray]
    y_direct: Optional[np.ndarray]
    q_r: Optional[np.ndarray]
    gains: np.ndarray
    slots_used: int
    order: Tuple[int, ...] = ()
    relay_decisions: Optional[np.ndarray] = None
    degenerate: Tuple[int, ...] = ()


def slots_per_block(
        scheme: str,
        sources: int,
        relays: int,
        K: int,
        T: int,
        phases_override: Optional[int] = None) -> int:
    """Symbol slots one block costs

    stssc: K + M T, afost: (1 + M) K, dstc: N (K + T), direct: N K.
    `phases_override` replaces the rule with phases x T.
    """
    # pylint:disable=invalid-name,too-many-arguments
    if phases_override is not None:
        if phases_override < 1:
            raise ConfigurationError("phases override must be at least 1")
        return phases_override * T
    rules = {
        "stssc": K + relays * T,
        "afost": (1 + relays) * K,
        "dstc": sources * (K + T),
        "direct": sources * K,
    }
    try:
        return rules[scheme]
    except KeyError:
        raise ConfigurationError(
            "unknown scheme %r, expected one of %s" % (
                scheme, ", ".join(SCHEME_NAMES)))


def forwarding_order(relays: int, rng: np.random.Generator, permute: bool = False):
    """Order in which relays take their forwarding phases

    :param relays: M
    :param rng: block generator, only used when permuting
    :param permute: draw a random order instead of ascending
    """
    if permute:
        return tuple(int(r) for r in rng.permutation(relays))
    return tuple(range(relays))


def check_block(block: SourceBlock, ch: ChannelRealization):
    """Blocks and channels must agree on N"""
    if block.X.shape[0] != ch.sources:
        raise UsageError(
            "block has %d sources but the channel has %d" % (
                block.X.shape[0], ch.sources))


def broadcast_phase(
        block: SourceBlock,
        ch: ChannelRealization,
        rng: np.random.Generator) -> np.ndarray:
    """Superimposed symbols seen by every relay

    q_r[t] = sqrt(rho) sum_s h_sr X[s, t] + w_r[t]

    :return: M x K complex array
    """
    check_block(block, ch)
    signal = math.sqrt(ch.rho) * (ch.h_sr.T @ block.X)
    return signal + awgn(signal.shape, ch.sigma2, rng)


def relay_gain(ch: ChannelRealization, r: int, source_power: float = 1.0) -> float:
    """Amplification keeping relay r's output power at rho

    g_r = sqrt(rho / (rho * P * sum_s |h_sr|^2 + sigma^2)), with P the
    per-source symbol power (1 in the classic form).

    :param ch: channel realization
    :param r: 0-based relay index
    :param source_power: average |X[s, t]|^2 of one source
    """
    if not 0 <= r < ch.relays:
        raise UsageError("relay index %d out of range" % r)
    received = ch.rho * source_power * float(np.sum(np.abs(ch.h_sr[:, r]) ** 2))
    return math.sqrt(ch.rho / (received + ch.sigma2))


def relay_gains(ch: ChannelRealization, source_power: float = 1.0) -> np.ndarray:
    """`relay_gain` for every relay"""
    return np.array([relay_gain(ch, r, source_power) for r in range(ch.relays)])
