"""Error types shared across the package.

The CLI maps these onto exit codes: InputError -> 1, ConfigError -> 2.
"""


class HolisumError(Exception):
    """Base class for errors raised by this package."""


class InputError(HolisumError):
    """Malformed or inconsistent input data (cluster files, embeddings, scores)."""


class ConfigError(HolisumError):
    """Invalid configuration or parameter combination."""
