"""Constellations, bit mapping and packet framing"""
from .constellation import (
    CONSTELLATIONS,
    Constellation,
    demap_hard,
    get_constellation,
    indices_to_bits,
    modulate,
)
from .framing import (
    NORMALIZATIONS,
    SourceBlock,
    block_scale,
    deframe,
    frame_packets,
)

__all__ = [
    "CONSTELLATIONS",
    "Constellation",
    "demap_hard",
    "get_constellation",
    "indices_to_bits",
    "modulate",
    "NORMALIZATIONS",
    "SourceBlock",
    "block_scale",
    "deframe",
    "frame_packets",
]
