"""Block-fading channels and noise"""
from .model import (
    FADING_MODELS,
    ChannelRealization,
    awgn,
    draw_channel,
    rng_stream,
)

__all__ = [
    "FADING_MODELS",
    "ChannelRealization",
    "awgn",
    "draw_channel",
    "rng_stream",
]
