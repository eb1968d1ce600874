"""HTTP service wrapping the compute core."""

from .app import create_app

__all__ = ["create_app"]
