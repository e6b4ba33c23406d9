"""Unit-energy constellations with Gray labels

Point `i` carries the bits of `i` written MSB first, so labels and point
indices are interchangeable everywhere in the simulator."""
from dataclasses import dataclass

import numpy as np

from stssc.core.errors import ConfigurationError, ConsistencyError, FramingError

__all__ = [
    "CONSTELLATIONS",
    "Constellation",
    "demap_hard",
    "get_constellation",
    "indices_to_bits",
    "modulate",
]

# tolerance for recognising an exact constellation point
POINT_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class Constellation:
    """A labelled point set"""
    name: str
    points: np.ndarray
    bits_per_symbol: int
    real_only: bool

    @property
    def size(self) -> int:
        """Number of points"""
        return len(self.points)

    @property
    def labels(self) -> np.ndarray:
        """size x bits_per_symbol bit labels, MSB first"""
        shifts = np.arange(self.bits_per_symbol - 1, -1, -1)
        return (np.arange(self.size)[:, None] >> shifts) & 1

    def nearest(self, estimates) -> np.ndarray:
        """Index of the closest point, lowest index on ties

        :param estimates: array of complex estimates
        :return: int array of the same shape
        """
        estimates = np.asarray(estimates, dtype=complex)
        distance = np.abs(estimates[..., None] - self.points) ** 2
        return np.argmin(distance, axis=-1)


def _build(name: str) -> Constellation:
    if name == "bpsk":
        points = np.array([1.0, -1.0], dtype=complex)
        return Constellation(name, points, 1, True)
    # bit 0 -> sign of I, bit 1 -> sign of Q
    labels = np.array([[0, 0], [0, 1], [1, 0], [1, 1]])
    points = ((1 - 2 * labels[:, 0]) + 1j * (1 - 2 * labels[:, 1])) / np.sqrt(2)
    return Constellation(name, points, 2, False)


CONSTELLATIONS = {name: _build(name) for name in ("bpsk", "qpsk")}
for _constellation in CONSTELLATIONS.values():
    _constellation.points.setflags(write=False)


def get_constellation(name: str) -> Constellation:
    """Get a constellation by name

    :param name: bpsk or qpsk
    """
    try:
        return CONSTELLATIONS[name]
    except KeyError:
        raise ConfigurationError(
            "unknown modulation %r, expected one of %s" % (
                name, ", ".join(CONSTELLATIONS)))


def _bits_to_indices(c: Constellation, bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64)
    if bits.shape[-1] % c.bits_per_symbol:
        raise FramingError(
            "%d bits do not fill whole %s symbols" % (bits.shape[-1], c.name))
    grouped = bits.reshape(bits.shape[:-1] + (-1, c.bits_per_symbol))
    weights = 1 << np.arange(c.bits_per_symbol - 1, -1, -1)
    return grouped @ weights


def modulate(c: Constellation, bits) -> np.ndarray:
    """Map bits to unit-energy symbols

    :param c: constellation
    :param bits: 0/1 array, last axis divisible by bits_per_symbol
    :return: complex symbols, last axis shortened by bits_per_symbol
    """
    return c.points[_bits_to_indices(c, bits)]


def indices_to_bits(c: Constellation, indices) -> np.ndarray:
    """Bits carried by point indices

    :param c: constellation
    :param indices: int array of point indices
    :return: bits, last axis lengthened by bits_per_symbol
    """
    indices = np.asarray(indices, dtype=np.int64)
    bits = c.labels[indices]
    return bits.reshape(indices.shape[:-1] + (-1,)) if indices.ndim else bits


def demap_hard(c: Constellation, symbols) -> np.ndarray:
    """Inverse of `modulate` for exact constellation points

    :param c: constellation
    :param symbols: complex array of decided points
    :return: bits
    """
    symbols = np.atleast_1d(np.asarray(symbols, dtype=complex))
    indices = c.nearest(symbols)
    if np.any(np.abs(c.points[indices] - symbols) > POINT_TOLERANCE):
        raise ConsistencyError("%s demapper got a non-constellation value" % c.name)
    return indices_to_bits(c, indices)
