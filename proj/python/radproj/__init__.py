"""Radial projections over finite fields."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
