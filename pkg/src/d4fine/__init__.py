"""Exact-arithmetic reconstruction of the fourteen fine gradings of the
split simple Lie algebra of type D4.
"""

__version__ = "1.0.0"
