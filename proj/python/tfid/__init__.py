"""Identification of operator families on finite time-frequency lattices."""

from ._tfid import *  # noqa: F401,F403
from ._tfid import __doc__  # noqa: F401
