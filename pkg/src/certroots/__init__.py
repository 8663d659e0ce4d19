"""Certified root finding over exact decimal numbers."""

from .errors import *  # noqa: F401,F403
from .numeric import (
    Config,
    DecimalComplex,
    DecimalReal,
    dc_arith,
    modulus_bounds,
    parse_complex,
    parse_real,
    round_to,
)

__version__ = "0.1.0"
