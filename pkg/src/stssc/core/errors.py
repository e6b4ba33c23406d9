"""Errors raised across the simulator"""

__all__ = [
    "StsscError",
    "ConfigurationError",
    "UsageError",
    "FramingError",
    "ConsistencyError",
    "OutputError",
]


class StsscError(Exception):
    """Base error for the simulator"""


class ConfigurationError(StsscError):
    """Raise when a simulation or design configuration is not valid"""


class UsageError(StsscError, ValueError):
    """Raise when a library call receives arguments of the wrong shape or range"""


class FramingError(UsageError):
    """Raise when bits cannot be split into whole symbols"""


class ConsistencyError(StsscError):
    """Raise when an internal invariant does not hold"""


class OutputError(StsscError, OSError):
    """Raise when results cannot be written"""
