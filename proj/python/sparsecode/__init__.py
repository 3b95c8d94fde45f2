"""Sparse straggler-resilient coded matrix computation."""

from ._sparsecode import *  # noqa: F401,F403
from ._sparsecode import __doc__  # noqa: F401

__version__ = "0.1.0"
