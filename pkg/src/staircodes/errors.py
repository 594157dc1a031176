"""Shared exception types."""


class UnrecoverableError(Exception):
    """Raised when erased symbols cannot be reconstructed from the survivors."""
