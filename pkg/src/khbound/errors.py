"""Exception hierarchy shared by all khbound modules.

Each error class carries the process exit code the CLI maps it to, so the
command front-end never has to maintain a separate table.
"""

from __future__ import annotations


class KhboundError(Exception):
    """Base class for all engine errors."""

    exit_code = 1


class DiagramError(KhboundError):
    """Structurally invalid diagram or unusable operand (bad PD code,
    inconsistent orientations, wrong component count for an operation)."""

    exit_code = 2


class ParseError(DiagramError):
    """Malformed PD text, JSON or table file."""

    exit_code = 2


class CubeLimitError(KhboundError):
    """The full-cube backend was asked for a diagram above its crossing
    limit; callers should switch to the scanning backend."""

    exit_code = 2


class ResourceCeilingError(KhboundError):
    """A scan exceeded the configured live-generator ceiling."""

    exit_code = 3


class InternalInvariantError(KhboundError):
    """An internal consistency check failed; this always indicates an
    engine bug (or, for the vanishing checks, a counterexample) and must
    abort loudly."""

    exit_code = 4
