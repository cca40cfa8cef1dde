"""Geometric error walks for composite pulse sequences.

Phases and pulse angles are in units of pi (a pi-pulse has angle 1). Family parameters passed to
``knill_family``, ``theta_family`` and ``solve_magic_angle`` are in radians.
"""

from ._pulsewalk import *  # noqa: F401,F403
from ._pulsewalk import Channel, PulsewalkError, __doc__  # noqa: F401

__version__ = "0.1.0"
