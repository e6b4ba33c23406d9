"""Registered link jobs

Each job pairs a scheme's pipeline with the decoder the measured
destination runs, and is looked up by scheme name:

>>> job = SchemeHolder.get_registry()["stssc"](config)
>>> trace, result = job.execute(block, channel, rng)
"""
from abc import abstractmethod
import logging

import numpy as np

from stssc.channel.model import ChannelRealization
from stssc.core.base import BaseRegistry, SchemeHolder
from stssc.core.errors import ConfigurationError
from stssc.decoder.baseline import afost_ml_decode, direct_ml_decode, dstc_mrc_ml_decode
from stssc.decoder.joint import DecodeResult, decode_stssc
from stssc.harness.config import SimConfig
from stssc.phy.constellation import get_constellation
from stssc.phy.framing import SourceBlock
from stssc.schemes.afost import af_ost_pipeline
from stssc.schemes.common import TransmissionTrace
from stssc.schemes.direct import direct_pipeline
from stssc.schemes.dstc import dstc_pipeline
from stssc.schemes.stssc import stssc_pipeline
from stssc.stbc.design import build_design

__all__ = ["LinkJob", "StsscLink", "AfOstLink", "DstcLink", "DirectLink", "get_job"]

LOGGER = logging.getLogger(__name__)

# joint searches above this many candidates per slot get slow
LARGE_CANDIDATE_SPACE = 4096


class LinkJob(BaseRegistry):
    """One coherence block through a scheme and its decoder"""
    abstract = True
    name = ""
    joint = False

    def __init__(self, config: SimConfig):
        """
        :param config: resolved simulation config
        """
        self.config = config
        self.design = build_design(config.code)
        self.constellation = get_constellation(config.modulation)
        self.metrics = {"evaluations": 0}
        if self.joint:
            count = self.constellation.size ** config.sources
            if count > LARGE_CANDIDATE_SPACE:
                LOGGER.warning(
                    "%s searches %d candidates per slot (%d sources, %s)",
                    self.name, count, config.sources, self.constellation.name)

    @abstractmethod
    def transmit(self, block: SourceBlock, ch: ChannelRealization,
                 rng: np.random.Generator) -> TransmissionTrace:
        """Run the scheme's pipeline"""
        raise NotImplementedError

    @abstractmethod
    def decode(self, trace: TransmissionTrace, block: SourceBlock,
               ch: ChannelRealization) -> DecodeResult:
        """Decide every source's K symbols"""
        raise NotImplementedError

    def _execute(self, block, ch, rng):
        trace = self.transmit(block, ch, rng)
        result = self.decode(trace, block, ch)
        self.metrics["evaluations"] += result.evaluations
        return trace, result


class StsscLink(LinkJob):
    """Superimposed broadcast, space-time coded forwarding, joint ML"""
    name = "stssc"
    joint = True

    def transmit(self, block, ch, rng):
        return stssc_pipeline(
            block, ch, rng, self.design,
            permute_relays=self.config.permute_relays,
            phases_override=self.config.phases_override)

    def decode(self, trace, block, ch):
        return decode_stssc(
            trace, ch, self.design, self.constellation, block.kappa,
            mode=self.config.decoder, max_candidates=self.config.max_candidates)


class AfOstLink(LinkJob):
    """Superimposed broadcast, sequential amplify-and-forward, joint ML"""
    name = "afost"
    joint = True

    def transmit(self, block, ch, rng):
        return af_ost_pipeline(
            block, ch, rng, T=self.design.T,
            permute_relays=self.config.permute_relays,
            phases_override=self.config.phases_override)

    def decode(self, trace, block, ch):
        indices = afost_ml_decode(
            trace, ch, trace.gains, self.constellation, block.kappa,
            max_candidates=self.config.max_candidates)
        evaluations = indices.shape[1] * self.constellation.size ** ch.sources
        return DecodeResult(indices=indices, evaluations=evaluations)


class DstcLink(LinkJob):
    """One source at a time, relays decode and send the code together"""
    name = "dstc"

    def transmit(self, block, ch, rng):
        return dstc_pipeline(
            block, ch, rng, self.design, self.constellation,
            phases_override=self.config.phases_override)

    def decode(self, trace, block, ch):
        indices = dstc_mrc_ml_decode(trace, ch, self.design, self.constellation)
        return DecodeResult(indices=indices, evaluations=indices.size * self.constellation.size)


class DirectLink(LinkJob):
    """Point-to-point reference"""
    name = "direct"

    def transmit(self, block, ch, rng):
        return direct_pipeline(
            block, ch, rng, T=self.design.T,
            phases_override=self.config.phases_override)

    def decode(self, trace, block, ch):
        if trace.degenerate:
            LOGGER.warning("zero direct gain for sources %s", trace.degenerate)
        indices = direct_ml_decode(
            trace.y_direct, ch.h_sd, self.constellation, ch.rho, block.kappa)
        return DecodeResult(indices=indices, evaluations=indices.size * self.constellation.size)


def get_job(config: SimConfig) -> LinkJob:
    """Instantiate the registered job for `config.scheme`"""
    try:
        job_cls = SchemeHolder.get_registry()[config.scheme]
    except KeyError:
        raise ConfigurationError("no link job registered for %r" % config.scheme)
    return job_cls(config)
