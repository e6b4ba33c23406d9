"""Decoders for the comparison schemes"""
import math
from typing import Optional

import numpy as np

from stssc.channel.model import ChannelRealization
from stssc.core.errors import UsageError
from stssc.decoder.joint import MAX_CANDIDATES, candidate_grid
from stssc.phy.constellation import Constellation
from stssc.schemes.common import TransmissionTrace
from stssc.stbc.design import OrthogonalDesign

__all__ = ["afost_ml_decode", "direct_ml_decode", "dstc_mrc_ml_decode"]


def afost_ml_decode(
        trace: TransmissionTrace,
        ch: ChannelRealization,
        gains,
        c: Constellation,
        kappa: float,
        rho: Optional[float] = None,
        max_candidates: int = MAX_CANDIDATES) -> np.ndarray:
    """Joint ML over the M amplified copies of each slot

    argmin_x sum_r |y_r[t] - sqrt(rho) g_r h_rd sum_s h_sr x_s|^2

    :return: N x K point indices
    """
    # pylint:disable=too-many-arguments
    if trace.scheme != "afost":
        raise UsageError("expected an afost trace, got %s" % trace.scheme)
    rho = ch.rho if rho is None else rho
    grid = candidate_grid(c, ch.sources, max_candidates)
    superimposed = (kappa * c.points[grid]) @ ch.h_sr
    model = math.sqrt(rho) * np.asarray(gains) * ch.h_rd * superimposed
    residual = trace.y_rd.T[None, :, :] - model[:, None, :]
    score = np.sum(np.abs(residual) ** 2, axis=2)
    return grid[np.argmin(score, axis=0)].T


def dstc_mrc_ml_decode(
        trace: TransmissionTrace,
        ch: ChannelRealization,
        design: OrthogonalDesign,
        c: Constellation) -> np.ndarray:
    """Orthogonal-design combining of each source's forwarding phase

    Relay decisions are treated as the transmitted symbols. With
    alpha_t = A_t h_rd and beta_t = B_t h_rd, symbol t is estimated by
    (alpha_t^H y + beta_t^T y*) / (a |alpha_t|^2 + a |beta_t|^2), a being
    the relay amplitude, and then sliced to the nearest point.

    :return: N x K point indices
    """
    if trace.scheme != "dstc":
        raise UsageError("expected a dstc trace, got %s" % trace.scheme)
    relays = ch.relays
    amplitude = math.sqrt(ch.rho / relays)
    alpha = design.A[:, :, :relays] @ ch.h_rd
    beta = design.B[:, :, :relays] @ ch.h_rd
    gain = amplitude * (np.sum(np.abs(alpha) ** 2, axis=1)
                        + np.sum(np.abs(beta) ** 2, axis=1))
    combined = trace.y_rd @ alpha.conj().T + trace.y_rd.conj() @ beta.T
    estimates = np.divide(combined, gain, out=np.zeros_like(combined),
                          where=gain != 0)
    return c.nearest(estimates)


def direct_ml_decode(y, h, c: Constellation, rho: float, kappa: float) -> np.ndarray:
    """Nearest point to y / (sqrt(rho) h kappa)

    A zero gain leaves every point equally likely and index 0 is decided.

    :param y: K samples, or N x K with one gain per row
    :param h: gain, or N gains
    :return: point indices shaped like y
    """
    y = np.asarray(y, dtype=complex)
    scale = math.sqrt(rho) * kappa * np.asarray(h, dtype=complex)
    if y.ndim > 1:
        scale = scale[..., None]
    scale = np.broadcast_to(scale, y.shape)
    estimates = np.divide(y, scale, out=np.zeros_like(y), where=scale != 0)
    return c.nearest(estimates)
