"""Simulation configuration

Values are layered: shipped JSON defaults, then an optional preset, then a
key=value file, then command-line flags."""
from dataclasses import asdict, dataclass, fields, replace
import hashlib
import json
import math
from typing import Mapping, Optional, Tuple

import numpy as np

from stssc.channel.model import FADING_MODELS
from stssc.config.file import THIS_DIR, FromJson
from stssc.core.errors import ConfigurationError
from stssc.decoder.joint import DECODER_MODES
from stssc.phy.constellation import get_constellation
from stssc.phy.framing import NORMALIZATIONS
from stssc.schemes.common import SCHEME_NAMES
from stssc.stbc.design import build_design

__all__ = ["SimConfig", "canonical_keys", "parse_snr", "load_defaults", "load_preset"]

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}

# fields that never change a result
_NOT_HASHED = ("workers", "output", "snr_db")


def parse_snr(text) -> Tuple[float, ...]:
    """SNR grid from `a:step:b` (inclusive), `a,b,c` or a single value

    :param text: grid text, or an iterable of numbers
    :return: tuple of dB values
    """
    if not isinstance(text, str):
        try:
            return tuple(float(v) for v in text)
        except (TypeError, ValueError):
            raise ConfigurationError("bad SNR list %r" % (text,))
    text = text.strip()
    try:
        if ":" in text:
            start, step, stop = (float(v) for v in text.split(":"))
            if step <= 0 or stop < start:
                raise ConfigurationError("bad SNR range %r" % text)
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return tuple(round(start + i * step, 10) for i in range(count))
        return tuple(float(v) for v in text.split(",") if v.strip())
    except (ValueError, OverflowError):
        raise ConfigurationError("bad SNR grid %r" % text)


def _to_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigurationError("expected a boolean, got %r" % (value,))


def _to_optional_int(value) -> Optional[int]:
    if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none")):
        return None
    return int(value)


_CONVERTERS = {
    "sources": _to_optional_int,
    "relays": _to_optional_int,
    "phases_override": _to_optional_int,
    "packets": int,
    "packet_bits": int,
    "seed": int,
    "workers": int,
    "max_candidates": int,
    "sigma2": float,
    "symbol_rate": float,
    "noiseless": _to_bool,
    "permute_relays": _to_bool,
    "stderr": _to_bool,
    "snr_db": parse_snr,
}

# accepted spellings in files and flags
_ALIASES = {"snr": "snr_db", "mod": "modulation", "n": "sources", "m": "relays"}


def canonical_keys(mapping: Mapping) -> dict:
    """Settings keyed by field name, aliases and dashes resolved"""
    result = {}
    for key, value in mapping.items():
        key = key.replace("-", "_")
        result[_ALIASES.get(key, key)] = value
    return result


def load_defaults() -> dict:
    """Shipped defaults from conf/simulation.json"""
    return canonical_keys(FromJson(THIS_DIR)["conf.simulation.defaults"])


def load_preset(name: str) -> dict:
    """One of the figure presets in conf/simulation.json"""
    presets = FromJson(THIS_DIR)["conf.simulation.presets"]
    try:
        return canonical_keys(presets[name])
    except KeyError:
        raise ConfigurationError(
            "unknown preset %r, expected one of %s" % (name, ", ".join(sorted(presets))))


def default_modulation(code: str) -> str:
    """Modulation used with a design when none is given"""
    return FromJson(THIS_DIR)["conf.designs.default_modulation"][code]


@dataclass(frozen=True)
class SimConfig:
    """Everything a simulation run depends on"""
    # pylint:disable=too-many-instance-attributes
    scheme: str = "stssc"
    code: str = "alamouti"
    sources: Optional[int] = None
    relays: Optional[int] = None
    modulation: Optional[str] = None
    fading: str = "unit-mag"
    normalization: str = "perslot"
    snr_db: Tuple[float, ...] = (10.0,)
    packets: int = 2000
    packet_bits: int = 1000
    seed: int = 1
    workers: int = 1
    output: Optional[str] = None
    decoder: str = "fast"
    noiseless: bool = False
    permute_relays: bool = False
    phases_override: Optional[int] = None
    stderr: bool = False
    sigma2: float = 1.0
    symbol_rate: float = 20e6
    max_candidates: int = 10 ** 6

    @classmethod
    def from_mapping(cls, mapping: Mapping, base: Optional[Mapping] = None) -> "SimConfig":
        """Build a resolved, validated config

        :param mapping: settings, str values are converted
        :param base: settings `mapping` overrides, defaults to the shipped JSON
        """
        settings = load_defaults() if base is None else canonical_keys(base)
        settings.update(canonical_keys(mapping))
        known = {f.name for f in fields(cls)}
        values = {}
        for key, value in settings.items():
            if key not in known:
                raise ConfigurationError("unknown setting %r" % key)
            if value is None and key not in ("sources", "relays", "modulation",
                                             "output", "phases_override"):
                continue
            try:
                values[key] = _CONVERTERS.get(key, lambda v: v)(value)
            except (TypeError, ValueError):
                raise ConfigurationError("bad value %r for %s" % (value, key))
        return cls(**values).resolved()

    def resolved(self) -> "SimConfig":
        """Fill sources, relays and modulation from the design, then validate"""
        design = build_design(self.code)
        relays = self.relays if self.relays is not None else design.M
        sources = self.sources if self.sources is not None else relays
        modulation = self.modulation or default_modulation(self.code)
        config = replace(self, relays=relays, sources=sources, modulation=modulation)
        config.validate()
        return config

    def validate(self):
        """Raise `ConfigurationError` for anything that cannot be simulated"""
        # pylint:disable=too-many-branches
        design = build_design(self.code)
        constellation = get_constellation(self.modulation or "bpsk")
        checks = (
            (self.scheme in SCHEME_NAMES, "scheme must be one of %s" % ", ".join(SCHEME_NAMES)),
            (self.fading in FADING_MODELS, "fading must be one of %s" % ", ".join(FADING_MODELS)),
            (self.normalization in NORMALIZATIONS,
             "normalization must be one of %s" % ", ".join(NORMALIZATIONS)),
            (self.decoder in DECODER_MODES, "decoder must be one of %s" % ", ".join(DECODER_MODES)),
            (self.packets >= 1, "packets must be at least 1"),
            (self.packet_bits >= 1, "packet bits must be at least 1"),
            (self.workers >= 1, "workers must be at least 1"),
            (self.sigma2 >= 0, "noise variance must not be negative"),
            (self.symbol_rate > 0, "symbol rate must be positive"),
            (len(self.snr_db) > 0, "SNR list must not be empty"),
            (all(math.isfinite(v) for v in self.snr_db), "SNR values must be finite"),
            (self.sources is None or self.sources >= 1, "need at least one source"),
            (self.relays is None or self.relays >= 1, "need at least one relay"),
            (self.phases_override is None or self.phases_override >= 1,
             "phases override must be at least 1"),
        )
        for passed, message in checks:
            if not passed:
                raise ConfigurationError(message)
        if self.scheme in ("stssc", "dstc") and (self.relays or 0) > design.M:
            raise ConfigurationError(
                "%s serves at most %d relays, got %d" % (design.name, design.M, self.relays))
        if design.real_only and not constellation.real_only:
            raise ConfigurationError(
                "%s is a real design and needs a real constellation (bpsk)" % design.name)
        if self.scheme in ("stssc", "afost") and self.sources is not None:
            count = constellation.size ** self.sources
            if count > self.max_candidates:
                raise ConfigurationError(
                    "%d sources with %s give %d candidates per slot, limit is %d; "
                    "use fewer sources or a smaller constellation" % (
                        self.sources, constellation.name, count, self.max_candidates))

    @property
    def noise_variance(self) -> float:
        """sigma^2 used at relays and destinations"""
        return 0.0 if self.noiseless else self.sigma2

    @property
    def config_hash(self) -> str:
        """Short digest of every result-affecting setting"""
        settings = {k: v for k, v in asdict(self).items() if k not in _NOT_HASHED}
        text = json.dumps(settings, sort_keys=True)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]

    @staticmethod
    def rho(snr_db: float) -> float:
        """Linear SNR"""
        return float(np.power(10.0, snr_db / 10.0))
