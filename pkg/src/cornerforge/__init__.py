"""Toric monoids, monoidal complexes, saturated refinements and blow-ups.

Everything is exact integer arithmetic on Z^n except the sampled numeric
checks, which use numpy.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .lattice import *  # noqa: E402,F401,F403
from .cone import *  # noqa: E402,F401,F403
from .monoid import *  # noqa: E402,F401,F403
from .complex import *  # noqa: E402,F401,F403
from .blowup import *  # noqa: E402,F401,F403
from .bmap import *  # noqa: E402,F401,F403
