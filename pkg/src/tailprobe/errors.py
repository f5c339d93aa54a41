"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI maps it to, so commands can
translate any failure into the documented codes without a lookup table:
0 success, 2 configuration error, 3 data error, 4 computation error.
"""


class TailprobeError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ConfigError(TailprobeError):
    """Invalid parameter, option, or configuration value."""

    exit_code = 2


class DataError(TailprobeError):
    """Input data is missing, malformed, or unusable (NaN/Inf, degenerate)."""

    exit_code = 3


class ComputeError(TailprobeError):
    """A numerical step failed during analysis."""

    exit_code = 4
