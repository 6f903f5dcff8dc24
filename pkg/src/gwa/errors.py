"""Shared exception hierarchy; the CLI maps these to exit codes."""


class GWAError(Exception):
    """Base class for all package errors."""


class InputError(GWAError, ValueError):
    """Malformed user-facing input (polynomial text, rationals, flags)."""


class HypothesisError(GWAError, ValueError):
    """A theorem hypothesis fails for the given input (constant a, h0 = 0,
    simplicity required but absent, invalid reflection constant, ...)."""


class StabilizationError(GWAError, RuntimeError):
    """A truncated dimension failed to stabilize before the degree cap."""


class InternalConsistencyError(GWAError, AssertionError):
    """An internal exactness check failed (e.g. d o d != 0 after assembly)."""
