"""Transmission schemes: STSSC, AF-OST, Distributed STC and Direct"""
from .common import (
    SCHEME_NAMES,
    TransmissionTrace,
    broadcast_phase,
    forwarding_order,
    relay_gain,
    relay_gains,
    slots_per_block,
)
from .stssc import stssc_forward, stssc_pipeline, stssc_relay_encode
from .afost import af_ost_pipeline
from .dstc import dstc_pipeline
from .direct import direct_pipeline

__all__ = [
    "SCHEME_NAMES",
    "TransmissionTrace",
    "broadcast_phase",
    "forwarding_order",
    "relay_gain",
    "relay_gains",
    "slots_per_block",
    "stssc_forward",
    "stssc_pipeline",
    "stssc_relay_encode",
    "af_ost_pipeline",
    "dstc_pipeline",
    "direct_pipeline",
]
