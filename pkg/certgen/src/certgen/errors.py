"""Errors raised by the generator."""
from __future__ import annotations


class CASFailure(RuntimeError):
    """The computational backend could not complete a subfield computation
    (or the kernel dimension failed its cross-check)."""
