"""Exact dephasing of a two-level system in a bosonic bath, with and without
bang-bang pulse control.

Thin wrapper around the C++ core; see the README for the library surface.
"""

from dephase._core import *  # noqa: F401,F403
from dephase._core import __version__  # noqa: F401
