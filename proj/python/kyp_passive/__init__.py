"""Passive discrete-time systems and the KYP inequality (Python bindings)."""

from ._kyp import *  # noqa: F401,F403
from ._kyp import __doc__  # noqa: F401
