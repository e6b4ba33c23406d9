"""Channel realizations for one coherence block

Gains are drawn in a fixed order (source-relay, relay-destination,
source-destination) so a seeded generator always yields the same sequence.
"""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from stssc.core.errors import ConfigurationError, UsageError

__all__ = ["FADING_MODELS", "ChannelRealization", "awgn", "draw_channel", "rng_stream"]

FADING_MODELS = ("unit-mag", "rayleigh")


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """Gains toward the measured destination, fixed for one block

    h_sr is N x M, h_rd has M entries, h_sd has N entries (source s to
    its own destination, Direct only)."""
    h_sr: np.ndarray
    h_rd: np.ndarray
    h_sd: np.ndarray
    rho: float
    sigma2: float = 1.0

    @property
    def sources(self) -> int:
        """N"""
        return self.h_sr.shape[0]

    @property
    def relays(self) -> int:
        """M"""
        return self.h_sr.shape[1]


def rng_stream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for one unit of work

    :param seed: master seed
    :param keys: e.g. SNR point index and packet-set index
    """
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))


def _gains(model: str, shape, rng: np.random.Generator) -> np.ndarray:
    if model == "rayleigh":
        return (rng.standard_normal(shape)
                + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    if model == "unit-mag":
        return np.exp(1j * rng.uniform(0.0, 2 * np.pi, shape))
    raise ConfigurationError(
        "unknown fading model %r, expected one of %s" % (
            model, ", ".join(FADING_MODELS)))


def draw_channel(
        model: str,
        sources: int,
        relays: int,
        rho: float,
        rng: np.random.Generator,
        sigma2: float = 1.0) -> ChannelRealization:
    """Draw the gains of one coherence block

    :param model: unit-mag (random phase, |h| = 1) or rayleigh (CN(0, 1))
    :param sources: N
    :param relays: M
    :param rho: average SNR, linear
    :param rng: numpy generator
    :param sigma2: noise variance
    """
    if sources < 1 or relays < 1:
        raise UsageError("need at least one source and one relay")
    if not rho > 0:
        raise UsageError("rho must be positive, got %r" % rho)
    if sigma2 < 0:
        raise UsageError("noise variance must not be negative")
    h_sr = _gains(model, (sources, relays), rng)
    h_rd = _gains(model, (relays,), rng)
    h_sd = _gains(model, (sources,), rng)
    return ChannelRealization(
        h_sr=h_sr, h_rd=h_rd, h_sd=h_sd, rho=float(rho), sigma2=float(sigma2))


def awgn(
        length: Union[int, Tuple[int, ...]],
        sigma2: float,
        rng: np.random.Generator) -> np.ndarray:
    """Circular complex Gaussian noise, sigma2 / 2 per real dimension

    :param length: sample count or array shape
    :param sigma2: total variance per sample
    :param rng: numpy generator
    """
    if sigma2 < 0:
        raise UsageError("noise variance must not be negative")
    shape = (length,) if np.isscalar(length) else tuple(length)
    if any(n < 0 for n in shape):
        raise UsageError("negative noise length")
    noise = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return np.sqrt(sigma2 / 2) * noise
