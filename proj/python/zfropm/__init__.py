"""Zero-field-resonance OPM model for micro-channel vapor cells."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
