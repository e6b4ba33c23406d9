"""Destination-side decoders"""
from .statistics import (
    DecoderStatistics,
    extend_conjugate,
    matched_filter,
    per_symbol_metric,
)
from .joint import (
    DECODER_MODES,
    DecodeResult,
    brute_force_oracle,
    candidate_grid,
    decode_stssc,
    joint_ml_decode_slot,
)
from .baseline import afost_ml_decode, direct_ml_decode, dstc_mrc_ml_decode

__all__ = [
    "DecoderStatistics",
    "extend_conjugate",
    "matched_filter",
    "per_symbol_metric",
    "DECODER_MODES",
    "DecodeResult",
    "brute_force_oracle",
    "candidate_grid",
    "decode_stssc",
    "joint_ml_decode_slot",
    "afost_ml_decode",
    "direct_ml_decode",
    "dstc_mrc_ml_decode",
]
