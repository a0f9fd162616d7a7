"""Exact and p-adic verification of truncated hypergeometric supercongruences."""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402

__all__ = ["__version__", "BACKEND"]
