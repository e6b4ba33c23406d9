"""Packet framing into coherence blocks"""
from dataclasses import dataclass
import math
from typing import List, Sequence

import numpy as np

from stssc.core.errors import ConfigurationError, UsageError
from stssc.phy.constellation import Constellation, indices_to_bits

__all__ = ["NORMALIZATIONS", "SourceBlock", "block_scale", "deframe", "frame_packets"]

NORMALIZATIONS = ("perslot", "paper")


@dataclass(frozen=True, eq=False)
class SourceBlock:
    """One broadcast phase worth of symbols

    Row s holds source s's K symbols; `X = kappa * raw`."""
    # pylint:disable=invalid-name
    X: np.ndarray
    raw: np.ndarray
    indices: np.ndarray
    kappa: float

    @property
    def shape(self):
        """(N, K)"""
        return self.X.shape


def block_scale(kappa_mode: str, sources: int, slots: int) -> float:
    """Per-symbol amplitude applied to every source

    perslot gives unit aggregate power per slot, paper gives
    trace(E[X^H X]) = 1 over the N x K block.

    :param kappa_mode: perslot or paper
    :param sources: N
    :param slots: K
    """
    if kappa_mode == "perslot":
        return 1.0 / math.sqrt(sources)
    if kappa_mode == "paper":
        return 1.0 / math.sqrt(slots * sources)
    raise ConfigurationError(
        "unknown normalization %r, expected one of %s" % (
            kappa_mode, ", ".join(NORMALIZATIONS)))


def frame_packets(
        packets: Sequence[Sequence[int]],
        c: Constellation,
        K: int,
        kappa_mode: str = "perslot") -> List[SourceBlock]:
    """Split N equal-length packets into N x K source blocks

    The tail is padded with zero bits.

    :param packets: N bit sequences of length L
    :param c: constellation
    :param K: symbol slots per block
    :param kappa_mode: perslot or paper
    """
    # pylint:disable=invalid-name
    bits = np.asarray(packets, dtype=np.int64)
    if bits.ndim != 2 or bits.shape[0] == 0 or bits.shape[1] == 0:
        raise UsageError("need at least one non-empty packet, got shape %s" % (
            bits.shape,))
    if K < 1:
        raise UsageError("blocks need at least one slot")
    N, L = bits.shape
    per_block = c.bits_per_symbol * K
    blocks = math.ceil(L / per_block)
    padded = np.zeros((N, blocks * per_block), dtype=np.int64)
    padded[:, :L] = bits

    weights = 1 << np.arange(c.bits_per_symbol - 1, -1, -1)
    indices = padded.reshape(N, blocks, K, c.bits_per_symbol) @ weights
    kappa = block_scale(kappa_mode, N, K)
    framed = []
    for b in range(blocks):
        block_indices = indices[:, b, :]
        raw = c.points[block_indices]
        framed.append(SourceBlock(
            X=kappa * raw, raw=raw, indices=block_indices, kappa=kappa))
    return framed


def deframe(block_indices: Sequence[np.ndarray], c: Constellation, L: int) -> np.ndarray:
    """Recover N packets of L bits from per-block point indices

    :param block_indices: N x K index arrays in block order
    :param c: constellation
    :param L: packet length, padding beyond it is dropped
    :return: N x L bits
    """
    indices = np.concatenate([np.asarray(b) for b in block_indices], axis=1)
    return indices_to_bits(c, indices)[:, :L]
