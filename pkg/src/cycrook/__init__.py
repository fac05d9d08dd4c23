"""Exact cycle-weighted rook polynomials ``R(x; z; A)`` and z-permanents ``per(z; A)``."""

from .algebra import *  # noqa: F401,F403
from .identities import *  # noqa: F401,F403
from .injections import *  # noqa: F401,F403
from .matrix import *  # noqa: F401,F403
from .rook import *  # noqa: F401,F403
from .structured import *  # noqa: F401,F403

__version__ = "0.1.0"
