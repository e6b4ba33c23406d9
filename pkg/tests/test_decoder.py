"""Matched filter, joint ML and the baseline decoders"""
import itertools
import math
import unittest
from unittest.mock import patch

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from stssc.channel.model import ChannelRealization, draw_channel
from stssc.core.errors import ConfigurationError, UsageError
from stssc.decoder import joint
from stssc.decoder.baseline import afost_ml_decode, direct_ml_decode, dstc_mrc_ml_decode
from stssc.decoder.joint import (
    brute_force_oracle,
    candidate_grid,
    decode_stssc,
    joint_ml_decode_slot,
)
from stssc.decoder.statistics import (
    DecoderStatistics,
    extend_conjugate,
    matched_filter,
    per_symbol_metric,
)
from stssc.phy.constellation import get_constellation
from stssc.phy.framing import SourceBlock, frame_packets
from stssc.schemes.afost import af_ost_pipeline
from stssc.schemes.common import TransmissionTrace
from stssc.schemes.direct import direct_pipeline
from stssc.schemes.dstc import dstc_pipeline
from stssc.schemes.stssc import stssc_pipeline
from stssc.stbc.design import build_design, relay_columns

CONFIGS = (
    ("alamouti", 2, "qpsk"),
    ("c34", 3, "qpsk"),
    ("c44", 4, "bpsk"),
)


def random_block(rng, c, sources, K, kappa_mode="perslot"):
    bits = rng.integers(0, 2, (sources, K * c.bits_per_symbol))
    return frame_packets(bits, c, K, kappa_mode)[0]


def with_block(block, indices, c):
    raw = c.points[indices]
    return SourceBlock(X=block.kappa * raw, raw=raw, indices=indices, kappa=block.kappa)


class ExtendConjugateTest(unittest.TestCase):

    def test_examples(self):
        assert_array_equal(extend_conjugate([1 + 1j, 2]), [1 + 1j, 2, 1 - 1j, 2])
        assert_array_equal(extend_conjugate(np.zeros(3)), np.zeros(6))
        y = extend_conjugate([0.5, -2.0])
        assert_array_equal(y[:2], y[2:])


class MatchedFilterTest(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(21)

    def _noiseless(self, name, sources, modulation, fading="rayleigh"):
        design = build_design(name)
        c = get_constellation(modulation)
        ch = draw_channel(fading, sources, design.M, 5.0, self.rng, sigma2=0.0)
        b = random_block(self.rng, c, sources, design.K)
        return design, c, ch, b

    def test_single_source_single_relay(self):
        design = build_design("alamouti")
        c = get_constellation("qpsk")
        h_sr, h_rd, g, rho = 0.8 - 0.3j, 0.6 + 0.9j, 0.7, 3.0
        ch = ChannelRealization(
            h_sr=np.array([[h_sr]]), h_rd=np.array([h_rd]), h_sd=np.ones(1),
            rho=rho, sigma2=0.0)
        b = random_block(self.rng, c, 1, 2)
        trace = stssc_pipeline(b, ch, self.rng, design)
        stats = matched_filter(trace, ch, design, np.array([g]))
        gain = trace.gains[0]
        # |h_rd|^2 eps_t g g_r |h_sr|^2 sqrt(rho) x_t with eps_t = 1 for column 0
        expected = g * gain * abs(h_rd) ** 2 * abs(h_sr) ** 2 * math.sqrt(rho) * b.X[0]
        assert_allclose(stats.u[0], expected)
        assert_allclose(stats.v[0], g ** 2 * abs(h_rd) ** 2 * abs(h_sr) ** 2)

    def test_decoupling(self):
        for name, sources, modulation in CONFIGS:
            design, c, ch, b = self._noiseless(name, sources, modulation)
            trace = stssc_pipeline(b, ch, self.rng, design)
            base = matched_filter(trace, ch, design, trace.gains)
            for t in range(design.K):
                changed = b.indices.copy()
                others = [k for k in range(design.K) if k != t]
                changed[:, others] = (changed[:, others] + 1) % c.size
                trace = stssc_pipeline(with_block(b, changed, c), ch, self.rng, design)
                stats = matched_filter(trace, ch, design, trace.gains)
                assert_allclose(stats.u[:, t], base.u[:, t], rtol=1e-10, atol=1e-12,
                                err_msg=name)

    def test_zero_observation(self):
        design, _, ch, b = self._noiseless("c34", 3, "qpsk")
        trace = stssc_pipeline(b, ch, self.rng, design)
        stats = matched_filter(trace, ch, design, trace.gains)
        silent = trace.__class__(
            scheme="stssc", y_rd=np.zeros_like(trace.y_rd), y_direct=None, q_r=None,
            gains=trace.gains, slots_used=trace.slots_used)
        zero = matched_filter(silent, ch, design, trace.gains)
        assert_array_equal(zero.u, 0)
        assert_array_equal(zero.v, stats.v)
        self.assertEqual(zero.y_norm_sq, 0.0)

    def test_v_ignores_noise(self):
        design = build_design("alamouti")
        c = get_constellation("qpsk")
        ch = draw_channel("rayleigh", 2, 2, 5.0, self.rng, sigma2=1.0)
        b = random_block(self.rng, c, 2, 2)
        first = stssc_pipeline(b, ch, np.random.default_rng(1), design)
        second = stssc_pipeline(b, ch, np.random.default_rng(2), design)
        v1 = matched_filter(first, ch, design, first.gains).v
        v2 = matched_filter(second, ch, design, second.gains).v
        assert_array_equal(v1, v2)
        self.assertTrue(np.all(v1 >= 0))

    def test_wrong_scheme(self):
        design, _, ch, b = self._noiseless("alamouti", 2, "qpsk")
        trace = af_ost_pipeline(b, ch, self.rng)
        with self.assertRaises(UsageError):
            matched_filter(trace, ch, design, trace.gains)


class PerSymbolMetricTest(unittest.TestCase):

    def setUp(self):
        self.stats = DecoderStatistics(
            u=np.array([[1.0 + 0j]]), v=np.array([[1.0]]), y_norm_sq=0.0,
            coupling=np.ones((1, 1, 1)))

    def test_examples(self):
        self.assertEqual(per_symbol_metric(self.stats, 0, 0, 1.0, 1.0), -1.0)
        stats = DecoderStatistics(u=self.stats.u, v=self.stats.v, y_norm_sq=3.5,
                                  coupling=self.stats.coupling)
        self.assertEqual(per_symbol_metric(stats, 0, 0, 0.0, 1.0), 3.5)

    def test_rho_substitution(self):
        u, v, x, rho = 0.3 - 0.2j, 0.8, 0.5 + 0.5j, 2.0
        stats = DecoderStatistics(u=np.array([[u]]), v=np.array([[v]]), y_norm_sq=1.0,
                                  coupling=np.full((1, 1, 1), v))
        expected = 1.0 - 2 * math.sqrt(2 * rho) * (np.conj(u) * x).real + 2 * rho * v * abs(x) ** 2
        self.assertAlmostEqual(per_symbol_metric(stats, 0, 0, x, 2 * rho), expected)


class JointDecodeTest(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(5)

    def test_candidate_count(self):
        grid = candidate_grid(get_constellation("qpsk"), 2)
        self.assertEqual(grid.shape, (16, 2))
        assert_array_equal(grid[:5], [[0, 0], [0, 1], [0, 2], [0, 3], [1, 0]])
        with self.assertRaises(ConfigurationError):
            candidate_grid(get_constellation("qpsk"), 11)

    def test_noiseless_recovery(self):
        for name, sources, modulation in CONFIGS:
            design = build_design(name)
            c = get_constellation(modulation)
            for fading in ("unit-mag", "rayleigh"):
                for _ in range(20):
                    ch = draw_channel(fading, sources, design.M, 2.0, self.rng, sigma2=0.0)
                    b = random_block(self.rng, c, sources, design.K)
                    trace = stssc_pipeline(b, ch, self.rng, design)
                    for mode in ("fast", "oracle"):
                        result = decode_stssc(trace, ch, design, c, b.kappa, mode=mode)
                        assert_array_equal(result.indices, b.indices, err_msg=name)

    def test_complexity(self):
        for name, sources, modulation in CONFIGS:
            design = build_design(name)
            c = get_constellation(modulation)
            ch = draw_channel("unit-mag", sources, design.M, 2.0, self.rng)
            b = random_block(self.rng, c, sources, design.K)
            trace = stssc_pipeline(b, ch, self.rng, design)
            for mode in ("fast", "oracle", "separable"):
                result = decode_stssc(trace, ch, design, c, b.kappa, mode=mode)
                self.assertEqual(result.evaluations, design.K * c.size ** sources)

    def test_evaluations_counted(self):
        design = build_design("c34")
        c = get_constellation("qpsk")
        ch = draw_channel("rayleigh", 3, 3, 5.0, self.rng)
        b = random_block(self.rng, c, 3, design.K)
        trace = stssc_pipeline(b, ch, self.rng, design)
        slot_scores = joint._slot_scores
        scored = []

        def recording(*args):
            grid, score = slot_scores(*args)
            scored.append(score.size)
            return grid, score

        with patch("stssc.decoder.joint._slot_scores", side_effect=recording):
            result = decode_stssc(trace, ch, design, c, b.kappa)
        self.assertEqual(len(scored), design.K)
        self.assertEqual(result.evaluations, sum(scored))

    def test_matches_oracle(self):
        trials = 10000
        for name, sources, modulation in CONFIGS:
            design = build_design(name)
            c = get_constellation(modulation)
            for fading, snr_db in itertools.product(("unit-mag", "rayleigh"), (0, 10, 20)):
                rho = 10 ** (snr_db / 10)
                for trial in range(trials):
                    ch = draw_channel(fading, sources, design.M, rho, self.rng)
                    b = random_block(self.rng, c, sources, design.K)
                    trace = stssc_pipeline(b, ch, self.rng, design)
                    fast = decode_stssc(trace, ch, design, c, b.kappa, mode="fast")
                    oracle = brute_force_oracle(trace, ch, design, trace.gains, c, b.kappa)
                    assert_array_equal(fast.indices, oracle,
                                       err_msg="%s %s %d dB trial %d" % (
                                           name, fading, snr_db, trial))

    def test_constant_offset(self):
        design = build_design("alamouti")
        c = get_constellation("qpsk")
        ch = draw_channel("rayleigh", 2, 2, 3.0, self.rng)
        b = random_block(self.rng, c, 2, 2)
        trace = stssc_pipeline(b, ch, self.rng, design)
        stats = matched_filter(trace, ch, design, trace.gains)
        shifted = DecoderStatistics(u=stats.u, v=stats.v, y_norm_sq=stats.y_norm_sq + 1e3,
                                    coupling=stats.coupling)
        for t in range(2):
            assert_array_equal(
                joint_ml_decode_slot(stats, t, c, b.kappa, ch.rho),
                joint_ml_decode_slot(shifted, t, c, b.kappa, ch.rho))

    def test_bpsk_sign_rule(self):
        design = build_design("alamouti")
        c = get_constellation("bpsk")
        for _ in range(50):
            ch = draw_channel("rayleigh", 1, 1, 1.0, self.rng)
            b = random_block(self.rng, c, 1, 2)
            trace = stssc_pipeline(b, ch, self.rng, design)
            stats = matched_filter(trace, ch, design, trace.gains)
            result = decode_stssc(trace, ch, design, c, b.kappa)
            assert_array_equal(result.indices[0], (stats.u[0].real < 0).astype(int))

    def test_separable_without_interference(self):
        # one source has nothing to couple with
        design = build_design("c34")
        c = get_constellation("qpsk")
        ch = draw_channel("rayleigh", 1, 3, 4.0, self.rng)
        b = random_block(self.rng, c, 1, 3)
        trace = stssc_pipeline(b, ch, self.rng, design)
        assert_array_equal(
            decode_stssc(trace, ch, design, c, b.kappa, mode="separable").indices,
            decode_stssc(trace, ch, design, c, b.kappa, mode="fast").indices)

    def test_unknown_mode(self):
        design = build_design("alamouti")
        c = get_constellation("qpsk")
        ch = draw_channel("rayleigh", 2, 2, 4.0, self.rng)
        b = random_block(self.rng, c, 2, 2)
        trace = stssc_pipeline(b, ch, self.rng, design)
        with self.assertRaises(ConfigurationError):
            decode_stssc(trace, ch, design, c, b.kappa, mode="sphere")


def as_afost(trace, ch, design):
    """Undo each relay's column on an STSSC observation

    Every column carries each symbol once with a unit coefficient, so
    relay r's sample for symbol t is recovered by a sign, a conjugation
    and the unit rotation h_rd / h_rd*, none of which changes the noise law.
    """
    y = np.zeros((ch.relays, design.K), dtype=complex)
    for r in range(ch.relays):
        a, b = relay_columns(design, r)
        h = ch.h_rd[r]
        for t in range(design.K):
            tau = int(np.flatnonzero((a[t] != 0) | (b[t] != 0))[0])
            if a[t, tau] != 0:
                y[r, t] = np.conj(a[t, tau]) * trace.y_rd[r, tau]
            else:
                y[r, t] = b[t, tau] * h / np.conj(h) * np.conj(trace.y_rd[r, tau])
    return TransmissionTrace(
        scheme="afost", y_rd=y, y_direct=None, q_r=trace.q_r,
        gains=trace.gains, slots_used=(1 + ch.relays) * design.K)


class StsscAfOstEquivalenceTest(unittest.TestCase):
    """One column per relay forwards each superimposed symbol exactly once"""

    def setUp(self):
        self.rng = np.random.default_rng(23)

    def test_columns_carry_each_symbol_once(self):
        for name, _, _ in CONFIGS:
            design = build_design(name)
            for r in range(design.M):
                a, b = relay_columns(design, r)
                used = (a != 0) | (b != 0)
                assert_array_equal(used.sum(axis=1), np.ones(design.K), err_msg=name)
                assert_array_equal(used.sum(axis=0) <= 1, True, err_msg=name)
                assert_allclose(np.abs(a + b)[used], 1.0)
                self.assertFalse(np.any((a != 0) & (b != 0)), name)

    def test_same_decisions_as_afost(self):
        for name, sources, modulation in CONFIGS:
            design = build_design(name)
            c = get_constellation(modulation)
            for fading, snr_db in itertools.product(("unit-mag", "rayleigh"), (0, 10, 20)):
                rho = 10 ** (snr_db / 10)
                for trial in range(300):
                    ch = draw_channel(fading, sources, design.M, rho, self.rng)
                    b = random_block(self.rng, c, sources, design.K)
                    trace = stssc_pipeline(b, ch, self.rng, design)
                    stssc = decode_stssc(trace, ch, design, c, b.kappa, mode="oracle")
                    afost = afost_ml_decode(
                        as_afost(trace, ch, design), ch, trace.gains, c, b.kappa)
                    assert_array_equal(stssc.indices, afost, err_msg="%s %s %d dB trial %d" % (
                        name, fading, snr_db, trial))


class AfOstDecodeTest(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(8)
        self.c = get_constellation("qpsk")

    def test_noiseless(self):
        for relays in (1, 2, 3):
            ch = draw_channel("rayleigh", 2, relays, 3.0, self.rng, sigma2=0.0)
            b = random_block(self.rng, self.c, 2, 2)
            trace = af_ost_pipeline(b, ch, self.rng)
            assert_array_equal(
                afost_ml_decode(trace, ch, trace.gains, self.c, b.kappa), b.indices)

    def test_matches_loop_implementation(self):
        for _ in range(300):
            ch = draw_channel("rayleigh", 2, 2, 2.0, self.rng)
            b = random_block(self.rng, self.c, 2, 2)
            trace = af_ost_pipeline(b, ch, self.rng)
            decided = afost_ml_decode(trace, ch, trace.gains, self.c, b.kappa)
            for t in range(2):
                best, best_score = None, None
                for candidate in itertools.product(range(4), repeat=2):
                    x = b.kappa * self.c.points[list(candidate)]
                    score = sum(
                        abs(trace.y_rd[r, t] - math.sqrt(ch.rho) * trace.gains[r]
                            * ch.h_rd[r] * np.dot(ch.h_sr[:, r], x)) ** 2
                        for r in range(2))
                    if best_score is None or score < best_score:
                        best, best_score = candidate, score
                assert_array_equal(decided[:, t], best)

    def test_wrong_scheme(self):
        design = build_design("alamouti")
        ch = draw_channel("rayleigh", 2, 2, 3.0, self.rng)
        b = random_block(self.rng, self.c, 2, 2)
        trace = stssc_pipeline(b, ch, self.rng, design)
        with self.assertRaises(UsageError):
            afost_ml_decode(trace, ch, trace.gains, self.c, b.kappa)


class DstcDecodeTest(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(9)

    def test_noiseless(self):
        for name, sources, modulation in CONFIGS:
            design = build_design(name)
            c = get_constellation(modulation)
            ch = draw_channel("rayleigh", sources, design.M, 4.0, self.rng, sigma2=0.0)
            b = random_block(self.rng, c, sources, design.K)
            trace = dstc_pipeline(b, ch, self.rng, design, c)
            assert_array_equal(dstc_mrc_ml_decode(trace, ch, design, c), b.indices)

    def test_alamouti_combiner(self):
        design = build_design("alamouti")
        c = get_constellation("qpsk")
        h1, h2 = 0.9 + 0.2j, -0.4 + 0.7j
        ch = ChannelRealization(h_sr=np.ones((1, 2)), h_rd=np.array([h1, h2]),
                                h_sd=np.ones(1), rho=2.0, sigma2=0.0)
        b = random_block(self.rng, c, 1, 2)
        trace = dstc_pipeline(b, ch, self.rng, design, c)
        y1, y2 = trace.y_rd[0]
        amplitude = math.sqrt(1.0)
        norm = abs(h1) ** 2 + abs(h2) ** 2
        x1 = (np.conj(h1) * y1 + h2 * np.conj(y2)) / (amplitude * norm)
        x2 = (np.conj(h2) * y1 - h1 * np.conj(y2)) / (amplitude * norm)
        assert_allclose([x1, x2], b.raw[0])
        assert_array_equal(dstc_mrc_ml_decode(trace, ch, design, c)[0], c.nearest([x1, x2]))

    def test_all_relays_wrong(self):
        design = build_design("alamouti")
        c = get_constellation("qpsk")
        ch = draw_channel("unit-mag", 2, 2, 4.0, self.rng, sigma2=0.0)
        b = random_block(self.rng, c, 2, 2)
        wrong = (np.repeat(b.indices[:, None, :], 2, axis=1) + 1) % c.size
        trace = dstc_pipeline(b, ch, self.rng, design, c, forced_relay_decisions=wrong)
        assert_array_equal(dstc_mrc_ml_decode(trace, ch, design, c), wrong[:, 0, :])


class DirectDecodeTest(unittest.TestCase):

    def test_examples(self):
        bpsk = get_constellation("bpsk")
        assert_array_equal(direct_ml_decode([-0.1], 1.0, bpsk, 1.0, 1.0), [1])
        qpsk = get_constellation("qpsk")
        x = qpsk.points
        assert_array_equal(direct_ml_decode(1j * 3 * x, 1j, qpsk, 9.0, 1.0), np.arange(4))

    def test_pipeline_noiseless(self):
        rng = np.random.default_rng(10)
        c = get_constellation("qpsk")
        ch = draw_channel("rayleigh", 3, 2, 2.0, rng, sigma2=0.0)
        b = random_block(rng, c, 3, 2)
        trace = direct_pipeline(b, ch, rng)
        assert_array_equal(direct_ml_decode(trace.y_direct, ch.h_sd, c, ch.rho, b.kappa),
                           b.indices)

    def test_zero_gain(self):
        c = get_constellation("qpsk")
        assert_array_equal(direct_ml_decode([0.3, -2j], 0.0, c, 1.0, 1.0), [0, 0])

    def test_random_guessing(self):
        rng = np.random.default_rng(12)
        c = get_constellation("bpsk")
        bits = rng.integers(0, 2, (1, 40000))
        b = frame_packets(bits, c, 40000)[0]
        ch = ChannelRealization(h_sr=np.ones((1, 1)), h_rd=np.ones(1), h_sd=np.ones(1),
                                rho=1e-4, sigma2=1.0)
        trace = direct_pipeline(b, ch, rng)
        decided = direct_ml_decode(trace.y_direct, ch.h_sd, c, ch.rho, b.kappa)
        self.assertAlmostEqual(np.mean(decided != b.indices), 0.5, delta=0.02)
