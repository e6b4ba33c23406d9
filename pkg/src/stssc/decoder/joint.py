"""Joint ML over the sources sharing a slot"""
from dataclasses import dataclass
from functools import lru_cache
import itertools
import logging
import math
from typing import Optional

import numpy as np

from stssc.channel.model import ChannelRealization
from stssc.core.errors import ConfigurationError
from stssc.decoder.statistics import DecoderStatistics, extend_conjugate, matched_filter
from stssc.phy.constellation import Constellation
from stssc.schemes.common import TransmissionTrace
from stssc.schemes.stssc import stssc_relay_encode
from stssc.stbc.design import OrthogonalDesign

__all__ = [
    "DECODER_MODES",
    "DecodeResult",
    "brute_force_oracle",
    "candidate_grid",
    "decode_stssc",
    "joint_ml_decode_slot",
]

LOGGER = logging.getLogger(__name__)

DECODER_MODES = ("fast", "oracle", "separable")

MAX_CANDIDATES = 10 ** 6


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """Decided point indices (N x K) and how many candidates were scored"""
    indices: np.ndarray
    evaluations: int


@lru_cache(maxsize=None)
def _grid(size: int, sources: int) -> np.ndarray:
    grid = np.array(list(itertools.product(range(size), repeat=sources)),
                    dtype=np.int64).reshape(-1, sources)
    grid.setflags(write=False)
    return grid


def candidate_grid(
        c: Constellation,
        sources: int,
        max_candidates: int = MAX_CANDIDATES) -> np.ndarray:
    """Every joint choice of points, source 0 most significant

    :return: |Q|^N x N int array in lexicographic order
    """
    count = c.size ** sources
    if count > max_candidates:
        raise ConfigurationError(
            "%d sources with %s give %d candidates per slot, limit is %d; "
            "use fewer sources or a smaller constellation" % (
                sources, c.name, count, max_candidates))
    return _grid(c.size, sources)


def _slot_scores(
        stats: DecoderStatistics,
        t: int,
        c: Constellation,
        kappa: float,
        rho: float,
        coupled: bool,
        max_candidates: int):
    """Candidate grid of slot t and the score of every row"""
    # pylint:disable=too-many-arguments
    grid = candidate_grid(c, stats.sources, max_candidates)
    x = kappa * c.points[grid]
    u = stats.u[:, t]
    v = stats.v[:, t]
    score = np.sum(
        stats.y_norm_sq
        - 2 * math.sqrt(rho) * (u.conj() * x).real
        + rho * v * np.abs(x) ** 2, axis=1)
    if coupled:
        off_diagonal = stats.coupling[t] - np.diag(np.diag(stats.coupling[t]))
        score += rho * np.einsum("cs,sn,cn->c", x.conj(), off_diagonal, x).real
    return grid, score


def joint_ml_decode_slot(
        stats: DecoderStatistics,
        t: int,
        c: Constellation,
        kappa: float,
        rho: float,
        coupled: bool = True,
        max_candidates: int = MAX_CANDIDATES) -> np.ndarray:
    """Decide the N symbols of slot t

    Scores sum_s e_{s,t}(x_s) plus, when `coupled`, the cross-source term
    rho sum_{s != n} Re(x_s* C_t[s, n] x_n), and keeps the first minimum.

    :return: N point indices
    """
    # pylint:disable=too-many-arguments
    grid, score = _slot_scores(stats, t, c, kappa, rho, coupled, max_candidates)
    return grid[int(np.argmin(score))]


def _oracle_search(trace, ch, design, gains, c, kappa, max_candidates):
    """Oracle decisions and the number of candidates scored"""
    # pylint:disable=too-many-arguments,too-many-locals
    sources, relays = ch.h_sr.shape
    grid = candidate_grid(c, sources, max_candidates)
    symbols = kappa * c.points[grid]
    observed = [extend_conjugate(trace.y_rd[r]) for r in range(relays)]
    decided = np.zeros((sources, design.K), dtype=np.int64)
    evaluations = 0
    for t in range(design.K):
        block = np.zeros((len(grid), sources, design.K), dtype=complex)
        block[:, :, t] = symbols
        score = np.zeros(len(grid))
        for r in range(relays):
            q_clean = math.sqrt(ch.rho) * np.einsum("s,csk->ck", ch.h_sr[:, r], block)
            model = ch.h_rd[r] * stssc_relay_encode(q_clean, design, r, gains[r])
            residual = observed[r][None, :] - extend_conjugate(model)
            score += np.sum(np.abs(residual) ** 2, axis=1)
        decided[:, t] = grid[int(np.argmin(score))]
        evaluations += score.size
    return decided, evaluations


def brute_force_oracle(
        trace: TransmissionTrace,
        ch: ChannelRealization,
        design: OrthogonalDesign,
        gains,
        c: Constellation,
        kappa: float,
        max_candidates: int = MAX_CANDIDATES) -> np.ndarray:
    """Exhaustive squared-distance search, slot by slot

    Every candidate column is pushed through the relay encoder and the
    second hop without noise, with the other slots left empty, and scored
    by sum_r |y~_r - model~_r|^2.

    :return: N x K point indices
    """
    # pylint:disable=too-many-arguments
    decided, _ = _oracle_search(trace, ch, design, gains, c, kappa, max_candidates)
    return decided


def decode_stssc(
        trace: TransmissionTrace,
        ch: ChannelRealization,
        design: OrthogonalDesign,
        c: Constellation,
        kappa: float,
        mode: str = "fast",
        gains: Optional[np.ndarray] = None,
        max_candidates: int = MAX_CANDIDATES) -> DecodeResult:
    """Decode a whole STSSC block

    `evaluations` counts the candidates actually scored over all slots.

    :param mode: fast (matched filter + coupled joint ML), oracle
        (exhaustive distance) or separable (per-symbol metrics only)
    """
    # pylint:disable=too-many-arguments
    if mode not in DECODER_MODES:
        raise ConfigurationError(
            "unknown decoder %r, expected one of %s" % (mode, ", ".join(DECODER_MODES)))
    gains = trace.gains if gains is None else gains
    if mode == "oracle":
        indices, evaluations = _oracle_search(
            trace, ch, design, gains, c, kappa, max_candidates)
        return DecodeResult(indices=indices, evaluations=evaluations)

    stats = matched_filter(trace, ch, design, gains)
    indices = np.zeros((ch.sources, design.K), dtype=np.int64)
    evaluations = 0
    for t in range(design.K):
        grid, score = _slot_scores(
            stats, t, c, kappa, ch.rho, mode == "fast", max_candidates)
        indices[:, t] = grid[int(np.argmin(score))]
        evaluations += score.size
    return DecodeResult(indices=indices, evaluations=evaluations)
