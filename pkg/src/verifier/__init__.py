"""Independent placement verification."""

from .checker import verify

__all__ = ['verify']
