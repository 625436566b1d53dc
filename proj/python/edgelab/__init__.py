"""Edge-symbol analysis, weighted cone spaces and a radial Dirichlet-to-Neumann harness."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
