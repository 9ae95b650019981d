"""Exception types shared across the package."""


class ArbIntentError(Exception):
    """Base class for all errors raised by this package."""


class DataError(ArbIntentError):
    """Malformed, missing, or inconsistent input data (CLI exit code 2)."""


class NumericError(ArbIntentError):
    """Non-finite values or other numeric failures (CLI exit code 3)."""


class BundleError(DataError):
    """Corrupt, truncated, or incompatible model bundle files."""
