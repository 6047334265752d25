"""Shared exception types."""


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field or flag."""
