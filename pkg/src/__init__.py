"""
Semiparametric HTE estimation - sieve 2SLS under nonignorable assignment
"""

__version__ = "0.1.0"
