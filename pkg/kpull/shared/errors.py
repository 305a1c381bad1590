"""
Error taxonomy for kpull.

Report-level outcomes (Underdetermined, Inconsistent) are values, not
exceptions. Exceptions here signal misuse or malformed input.
"""

from typing import Optional, Sequence


class KpullError(Exception):
    """Base class for all kpull errors."""

    exit_code = 1


class DimensionError(KpullError):
    """Matrix or group shapes do not fit together."""


class UnknownEntryError(KpullError):
    """The operation needs a fully known matrix."""


class MissingCertificate(KpullError):
    """A family was used without a cocycle certificate."""


class MissingData(KpullError):
    """K-data or arrow data needed by a decomposition is absent."""

    def __init__(self, missing: Sequence[str]):
        self.missing = tuple(missing)
        super().__init__(f"missing K-data: {', '.join(self.missing)}")


class CitationRequired(KpullError):
    """External facts must carry a citation."""


class PreconditionViolated(KpullError):
    """A finite-model verification was called on a model that fails its hypotheses."""


class LiftFailure(KpullError):
    """No preimage exists for an element that must be lifted."""


class ConfigError(KpullError):
    """Invalid configuration file or value."""


class SchemaError(KpullError):
    """An input document does not match the documented schema."""

    exit_code = 5

    def __init__(self, message: str, path: str = "$", line: Optional[int] = None):
        self.path = path
        self.line = line
        where = f"line {line}" if line is not None else path
        super().__init__(f"{where}: {message}")
