"""Exception hierarchy for anomod.

Every error raised on purpose by the package derives from :class:`AnomodError`,
so callers (and the CLI) can separate domain failures from programming bugs.
The concrete classes also subclass the closest builtin exception so plain
``except ValueError`` handlers keep working.
"""

from __future__ import annotations


class AnomodError(Exception):
    """Base class for all anomod errors."""


class ContextMismatchError(AnomodError, ValueError):
    """Operands belong to different rings (generator lists or truncation)."""


class PreconditionError(AnomodError, ValueError):
    """An operation was called outside its mathematical domain."""


class TruncationError(AnomodError, IndexError):
    """A coefficient beyond the known truncation order was requested."""


class UnsupportedConfigurationError(AnomodError, ValueError):
    """The requested computation needs data the configuration cannot provide."""


class ConfigurationError(AnomodError, ValueError):
    """A configuration is malformed or contradicts a target's hypotheses."""


class ParseError(AnomodError, ValueError):
    """Text could not be parsed as an element or a bundle expression."""
