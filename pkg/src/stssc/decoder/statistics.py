"""Matched filtering of the forwarded superimposed symbols

Relay r's observation, stacked with its conjugate, is

    y~_r = sum_t (f_{t,r} p_{t,r} + f'_{t,r} p_{t,r}*) + noise,
    f_{t,r} = g_r sqrt(rho) [h_rd a_{t,r}; h_rd* b_{t,r}*],
    p_{t,r} = sum_s h_sr x_s[t].

The design's columns make f_{t,r} orthogonal to every other signature of
the same relay, so filtering with [h_rd a_{t,r}; h_rd* b_{t,r}*] keeps only
slot t. What remains couples the N sources of that slot through
C_t[s, n] = sum_r g_r^2 eps_{t,r} |h_rd|^2 h_sr* h_nr, where
eps_{t,r} = |a_{t,r}|^2 + |b_{t,r}|^2.
"""
from dataclasses import dataclass
import math

import numpy as np

from stssc.channel.model import ChannelRealization
from stssc.core.errors import UsageError
from stssc.schemes.common import TransmissionTrace
from stssc.stbc.design import OrthogonalDesign, relay_columns

__all__ = ["DecoderStatistics", "extend_conjugate", "matched_filter", "per_symbol_metric"]


@dataclass(frozen=True, eq=False)
class DecoderStatistics:
    """Per (source, slot) statistics of one STSSC block

    u and v are N x K; coupling is K x N x N with v[:, t] on the diagonal
    of coupling[t]."""
    u: np.ndarray
    v: np.ndarray
    y_norm_sq: float
    coupling: np.ndarray

    @property
    def sources(self) -> int:
        """N"""
        return self.u.shape[0]


def extend_conjugate(y) -> np.ndarray:
    """[y, y*] along the last axis"""
    y = np.asarray(y, dtype=complex)
    return np.concatenate([y, y.conj()], axis=-1)


def matched_filter(
        trace: TransmissionTrace,
        ch: ChannelRealization,
        design: OrthogonalDesign,
        gains) -> DecoderStatistics:
    """Sufficient statistics of every symbol of an STSSC block

    :param trace: stssc trace
    :param ch: channel realization (exact CSI)
    :param design: code used by the relays
    :param gains: relay amplifications g_r
    """
    if trace.scheme != "stssc":
        raise UsageError("matched filter needs an stssc trace, got %s" % trace.scheme)
    sources, relays = ch.h_sr.shape
    u = np.zeros((sources, design.K), dtype=complex)
    coupling = np.zeros((design.K, sources, sources), dtype=complex)
    y_norm_sq = 0.0
    for r in range(relays):
        a, b = relay_columns(design, r)
        h = ch.h_rd[r]
        y_ext = extend_conjugate(trace.y_rd[r])
        y_norm_sq += float(np.vdot(y_ext, y_ext).real)

        signature = np.concatenate([h * a, np.conj(h) * b.conj()], axis=1)
        projection = signature.conj() @ y_ext
        h_s = ch.h_sr[:, r]
        u += gains[r] * np.outer(h_s.conj(), projection)

        weight = gains[r] ** 2 * design.column_energy[r] * abs(h) ** 2
        coupling += weight[:, None, None] * np.outer(h_s.conj(), h_s)[None, :, :]

    v = np.real(np.diagonal(coupling, axis1=1, axis2=2)).T.copy()
    return DecoderStatistics(u=u, v=v, y_norm_sq=y_norm_sq, coupling=coupling)


def per_symbol_metric(
        stats: DecoderStatistics,
        s: int,
        t: int,
        x: complex,
        rho: float) -> float:
    """e_{s,t}(x) = |y~|^2 - 2 sqrt(rho) Re(u_{s,t}* x) + rho v_{s,t} |x|^2

    :param x: candidate symbol, already scaled by the block's kappa
    """
    cross = (np.conj(stats.u[s, t]) * x).real
    return float(stats.y_norm_sq - 2 * math.sqrt(rho) * cross
                 + rho * stats.v[s, t] * abs(x) ** 2)
