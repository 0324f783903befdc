"""Exact-arithmetic toolkit for semisimple class data in even-characteristic
linear and unitary groups, with brute-force oracles and an inequality
certifier.
"""

__version__ = "0.1.0"
